#pragma once

/*
 * distribution.hpp
 *
 * Truncated two-variable formal distributions with coefficients in the
 * free span of the Lie algebra basis symbols L_{alpha,i}. The bracket
 * [L_{a,i}, L_{b,j}] = (b(i+1) - a(j+1)) L_{a+b,i+j} is applied only when
 * two distributions are bracketed; the symbols themselves satisfy no
 * relations, so combo equality is syntactic.
 *
 * Truncation works on a square exponent box [-M, M]^2 together with a
 * shift counter. A distribution with counter u stores values that are
 * exact wherever both exponents lie in [-M+u, M-u]; outside that square
 * nothing is claimed and nothing is stored. Multiplying by z, w or (z-w)
 * and differentiating each shift exponents by one, so they raise the
 * counter by one per factor; the exponential e^{lam(z-w)} truncated at
 * degree c raises it by c. The policy's guard is the total budget: an
 * operation that would push the counter past it throws, which keeps every
 * assertion inside coefficients that were actually computed from exact
 * inputs rather than from a clipped series edge.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cwb/poly.hpp"

namespace cwb {

struct GuardExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PolicyMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotLocalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LBasisSymbol {
    int alpha = 0;
    int i = 0;
    auto operator<=>(const LBasisSymbol&) const = default;
};

// Finite linear combination of basis symbols with polynomial coefficients,
// plus a plain polynomial part so that scalar-valued distributions (the
// delta and its derivatives) live in the same type. The scalar part never
// takes part in a bracket.
class SymbolCombo {
  public:
    SymbolCombo() = default;

    static SymbolCombo single(LBasisSymbol s, MPoly c = P_const(1));
    static SymbolCombo scalar(MPoly v);

    const std::map<LBasisSymbol, MPoly>& terms() const { return terms_; }
    const MPoly& scalar_part() const { return scalar_; }
    bool is_zero() const { return terms_.empty() && scalar_.is_zero(); }

    void add(LBasisSymbol s, const MPoly& c);
    SymbolCombo& operator+=(const SymbolCombo& o);
    friend SymbolCombo operator+(SymbolCombo a, const SymbolCombo& b) { return a += b; }
    SymbolCombo operator-() const;
    friend SymbolCombo operator-(SymbolCombo a, const SymbolCombo& b) { return a += -b; }
    friend SymbolCombo operator*(const MPoly& p, const SymbolCombo& c);

    bool operator==(const SymbolCombo& o) const {
        return terms_ == o.terms_ && scalar_ == o.scalar_;
    }

    // Bilinear extension of the basis bracket; rejects scalar parts.
    static SymbolCombo lie_bracket(const SymbolCombo& a, const SymbolCombo& b);

  private:
    std::map<LBasisSymbol, MPoly> terms_;
    MPoly scalar_;
};

struct TruncationPolicy {
    int depth = 8;   // exponents kept in [-depth, depth]
    int guard = 3;   // total shift budget; guard < depth

    int trusted_lo() const { return -depth + guard; }
    int trusted_hi() const { return depth - guard; }
    bool operator==(const TruncationPolicy&) const = default;
};

class TruncatedDistribution {
  public:
    explicit TruncatedDistribution(TruncationPolicy pol) : pol_(pol) {
        if (pol.guard < 0 || pol.guard >= pol.depth)
            throw std::invalid_argument("truncation policy requires 0 <= guard < depth");
    }

    // Bypasses the operation layer; meant for assembling closed forms and
    // for tests that need a series in a deliberately broken state.
    static TruncatedDistribution raw(TruncationPolicy pol, int used);

    const TruncationPolicy& policy() const { return pol_; }
    int used() const { return used_; }
    int exact_lo() const { return -pol_.depth + used_; }
    int exact_hi() const { return pol_.depth - used_; }

    // Zero combo for anything unset; reads outside the exact window throw,
    // because the stored value there would be meaningless.
    const SymbolCombo& at(int zexp, int wexp) const;
    void set(int zexp, int wexp, SymbolCombo c);

    const std::map<std::pair<int, int>, SymbolCombo>& entries() const { return coeffs_; }

    bool zero_within(int lo, int hi) const;
    bool zero_on_exact_window() const { return zero_within(exact_lo(), exact_hi()); }

    friend TruncatedDistribution operator+(const TruncatedDistribution& a,
                                           const TruncatedDistribution& b);
    friend TruncatedDistribution operator-(const TruncatedDistribution& a,
                                           const TruncatedDistribution& b);
    friend TruncatedDistribution operator*(const MPoly& p, const TruncatedDistribution& a);

    // True iff the two agree wherever both windows are exact.
    static bool equal_on_common_window(const TruncatedDistribution& a,
                                       const TruncatedDistribution& b);

  private:
    TruncationPolicy pol_;
    int used_ = 0;
    std::map<std::pair<int, int>, SymbolCombo> coeffs_;
};

// Exact constructors; each describes a genuinely infinite series whose
// box restriction is exact everywhere, so the counter starts at zero.
TruncatedDistribution dirac_delta(TruncationPolicy pol);
// The j-th w-derivative of the delta, built from its closed form rather
// than by differentiating (which would spend guard for no reason).
TruncatedDistribution dirac_delta_derivative(TruncationPolicy pol, int j);
enum class Axis { Z, W };
TruncatedDistribution generator_distribution(int alpha, TruncationPolicy pol, Axis axis = Axis::Z);
// d/dw applied b times to the w-axis generator, again in closed form.
TruncatedDistribution generator_w_derivative(int alpha, int b, TruncationPolicy pol);
// The two-variable constant 1.
TruncatedDistribution one_distribution(TruncationPolicy pol);

// Guard-spending operations.
TruncatedDistribution partial_w(const TruncatedDistribution& a);
TruncatedDistribution partial_z(const TruncatedDistribution& a);
// Multiply by (z-w)^m z^p w^q.
TruncatedDistribution mul_zw_power(const TruncatedDistribution& a, int m, int p = 0, int q = 0);
// Multiply by e^{lam (z-w)} truncated at degree lambda_cap.
TruncatedDistribution exp_zw(const TruncatedDistribution& a, int lambda_cap);

// Coefficient of z^{-1}, reindexed as a w-series (all entries at zexp 0).
TruncatedDistribution residue_z(const TruncatedDistribution& a);

// [a(z), b(w)] for a pure z-series and a pure w-series; spends no guard
// since exponents do not mix.
TruncatedDistribution bracket_distributions(const TruncatedDistribution& a,
                                            const TruncatedDistribution& b);

bool is_local(const TruncatedDistribution& a, int order);

// Writes a w-series in the basis sum_b p_b(lam) d_w^b L_delta(w); returns
// the generator-indexed coefficient polynomials (in lam and del, with del
// standing for d_w), or nothing if the series is not in that span.
std::optional<std::map<int, MPoly>> recognize_w_series(const TruncatedDistribution& series,
                                                       int max_derivative);

// lam-product of two generator distributions via the residue formula.
std::map<int, MPoly> lambda_product(int alpha, int beta, TruncationPolicy pol, int lambda_cap);

// j-product Res_z (z-w)^j [L_alpha(z), L_beta(w)] as a w-series.
TruncatedDistribution j_product(int alpha, int beta, int j, TruncationPolicy pol);

struct DeltaExpansion {
    std::vector<TruncatedDistribution> c;  // c[j](w), entries at zexp 0
    bool reconstruction_ok = false;
    int positions_compared = 0;
};

// Expansion of a local distribution along delta derivatives:
// a = sum_j c^j(w) d_w^j delta / j!. Throws if a is not local at
// order maxj + 1.
DeltaExpansion delta_expansion(const TruncatedDistribution& a, int maxj);

// Res_z e^{lam (z-w)} a, as a w-series with lam in the coefficients.
TruncatedDistribution phi_lambda(const TruncatedDistribution& a, int lambda_cap);
// Same transform with lam replaced by -lam - d_w acting on the expansion
// coefficients. For local a this equals phi_lambda applied to a with its
// variables swapped, so on a generator bracket it produces the negated
// reversed lam-product: the distribution-level face of skew symmetry.
// On swap-symmetric inputs (the delta itself) the two transforms agree.
TruncatedDistribution phi_minus_lambda_del(const TruncatedDistribution& a, int lambda_cap);

}  // namespace cwb
