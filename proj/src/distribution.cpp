#include "cwb/distribution.hpp"

#include <string>

namespace cwb {

/* ---------------------------------------------------------------- combos */

SymbolCombo SymbolCombo::single(LBasisSymbol s, MPoly c) {
    SymbolCombo out;
    out.add(s, c);
    return out;
}

SymbolCombo SymbolCombo::scalar(MPoly v) {
    SymbolCombo out;
    out.scalar_ = std::move(v);
    return out;
}

void SymbolCombo::add(LBasisSymbol s, const MPoly& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(s, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymbolCombo& SymbolCombo::operator+=(const SymbolCombo& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    scalar_ += o.scalar_;
    return *this;
}

SymbolCombo SymbolCombo::operator-() const {
    SymbolCombo out;
    for (const auto& [s, c] : terms_) out.terms_.emplace(s, -c);
    out.scalar_ = -scalar_;
    return out;
}

SymbolCombo operator*(const MPoly& p, const SymbolCombo& c) {
    SymbolCombo out;
    if (p.is_zero()) return out;
    for (const auto& [s, q] : c.terms_) out.add(s, p * q);
    out.scalar_ = p * c.scalar_;
    return out;
}

SymbolCombo SymbolCombo::lie_bracket(const SymbolCombo& a, const SymbolCombo& b) {
    if (!a.scalar_.is_zero() || !b.scalar_.is_zero())
        throw std::logic_error("lie_bracket applied to a scalar-valued combo");
    SymbolCombo out;
    for (const auto& [sa, ca] : a.terms_) {
        for (const auto& [sb, cb] : b.terms_) {
            long coeff = (long)sb.alpha * (sa.i + 1) - (long)sa.alpha * (sb.i + 1);
            if (coeff == 0) continue;
            out.add(LBasisSymbol{sa.alpha + sb.alpha, sa.i + sb.i}, ca * cb * rat(coeff));
        }
    }
    return out;
}

/* --------------------------------------------------- distribution basics */

TruncatedDistribution TruncatedDistribution::raw(TruncationPolicy pol, int used) {
    TruncatedDistribution d(pol);
    d.used_ = used;
    return d;
}

const SymbolCombo& TruncatedDistribution::at(int zexp, int wexp) const {
    static const SymbolCombo kZero;
    if (zexp < exact_lo() || zexp > exact_hi() || wexp < exact_lo() || wexp > exact_hi())
        throw std::out_of_range("coefficient (" + std::to_string(zexp) + ", " +
                                std::to_string(wexp) + ") lies outside the exact window");
    auto it = coeffs_.find({zexp, wexp});
    return it == coeffs_.end() ? kZero : it->second;
}

void TruncatedDistribution::set(int zexp, int wexp, SymbolCombo c) {
    if (zexp < exact_lo() || zexp > exact_hi() || wexp < exact_lo() || wexp > exact_hi())
        throw std::out_of_range("coefficient (" + std::to_string(zexp) + ", " +
                                std::to_string(wexp) + ") lies outside the exact window");
    if (c.is_zero())
        coeffs_.erase({zexp, wexp});
    else
        coeffs_.insert_or_assign({zexp, wexp}, std::move(c));
}

bool TruncatedDistribution::zero_within(int lo, int hi) const {
    for (const auto& [pos, c] : coeffs_) {
        if (pos.first < lo || pos.first > hi || pos.second < lo || pos.second > hi) continue;
        if (!c.is_zero()) return false;
    }
    return true;
}

static bool in_window(const TruncatedDistribution& d, int zexp, int wexp) {
    return zexp >= d.exact_lo() && zexp <= d.exact_hi() && wexp >= d.exact_lo() &&
           wexp <= d.exact_hi();
}

static void add_entry(TruncatedDistribution& d, int zexp, int wexp, const SymbolCombo& c) {
    if (c.is_zero() || !in_window(d, zexp, wexp)) return;
    SymbolCombo sum = d.at(zexp, wexp);
    sum += c;
    d.set(zexp, wexp, std::move(sum));
}

TruncatedDistribution operator+(const TruncatedDistribution& a, const TruncatedDistribution& b) {
    if (!(a.pol_ == b.pol_))
        throw PolicyMismatch("combining distributions built under different truncation policies");
    TruncatedDistribution out = TruncatedDistribution::raw(a.pol_, std::max(a.used_, b.used_));
    for (const auto& [pos, c] : a.coeffs_) add_entry(out, pos.first, pos.second, c);
    for (const auto& [pos, c] : b.coeffs_) add_entry(out, pos.first, pos.second, c);
    return out;
}

TruncatedDistribution operator*(const MPoly& p, const TruncatedDistribution& a) {
    TruncatedDistribution out = TruncatedDistribution::raw(a.pol_, a.used_);
    for (const auto& [pos, c] : a.coeffs_) out.set(pos.first, pos.second, p * c);
    return out;
}

TruncatedDistribution operator-(const TruncatedDistribution& a, const TruncatedDistribution& b) {
    return a + (P_const(-1) * b);
}

bool TruncatedDistribution::equal_on_common_window(const TruncatedDistribution& a,
                                                   const TruncatedDistribution& b) {
    return (a - b).zero_on_exact_window();
}

/* ----------------------------------------------------- exact constructors */

TruncatedDistribution dirac_delta_derivative(TruncationPolicy pol, int j) {
    if (j < 0) throw std::invalid_argument("negative derivative order");
    TruncatedDistribution out(pol);
    // d_w^j of sum_n z^{-n-1} w^n keeps the z row -n-1 and drops the w
    // exponent to n-j, with the falling factor n(n-1)...(n-j+1).
    for (int n = -pol.depth + j; n <= pol.depth; ++n) {
        int zexp = -n - 1;
        int wexp = n - j;
        if (!in_window(out, zexp, wexp)) continue;
        Rat fac = rat(1);
        for (int t = 0; t < j; ++t) fac *= rat(n - t);
        if (fac == 0) continue;
        out.set(zexp, wexp, SymbolCombo::scalar(P_const(fac)));
    }
    return out;
}

TruncatedDistribution dirac_delta(TruncationPolicy pol) { return dirac_delta_derivative(pol, 0); }

TruncatedDistribution generator_distribution(int alpha, TruncationPolicy pol, Axis axis) {
    TruncatedDistribution out(pol);
    // L_alpha(z) = sum over integer n of L_{alpha,n} z^{-n-2}; the exponent
    // e carries the symbol with index -e-2.
    for (int e = -pol.depth; e <= pol.depth; ++e) {
        SymbolCombo c = SymbolCombo::single(LBasisSymbol{alpha, -e - 2});
        if (axis == Axis::Z)
            out.set(e, 0, std::move(c));
        else
            out.set(0, e, std::move(c));
    }
    return out;
}

TruncatedDistribution generator_w_derivative(int alpha, int b, TruncationPolicy pol) {
    if (b < 0) throw std::invalid_argument("negative derivative order");
    TruncatedDistribution out(pol);
    // Closed form of d_w^b applied to the w-axis generator: the symbol at
    // exponent e is L_{alpha,-e-b-2} scaled by (e+1)(e+2)...(e+b).
    for (int e = -pol.depth; e <= pol.depth; ++e) {
        Rat fac = rat(1);
        for (int t = 1; t <= b; ++t) fac *= rat(e + t);
        if (fac == 0) continue;
        out.set(0, e, SymbolCombo::single(LBasisSymbol{alpha, -e - b - 2}, P_const(fac)));
    }
    return out;
}

TruncatedDistribution one_distribution(TruncationPolicy pol) {
    TruncatedDistribution out(pol);
    out.set(0, 0, SymbolCombo::scalar(P_const(1)));
    return out;
}

/* ------------------------------------------------- guard-spending moves */

static TruncatedDistribution spend(const TruncatedDistribution& a, int cost) {
    int u = a.used() + cost;
    if (u > a.policy().guard)
        throw GuardExhausted("operation would raise the shift counter to " + std::to_string(u) +
                             " past the guard " + std::to_string(a.policy().guard));
    return TruncatedDistribution::raw(a.policy(), u);
}

TruncatedDistribution partial_w(const TruncatedDistribution& a) {
    TruncatedDistribution out = spend(a, 1);
    for (const auto& [pos, c] : a.entries()) {
        if (pos.second == 0) continue;
        add_entry(out, pos.first, pos.second - 1, P_const(rat(pos.second)) * c);
    }
    return out;
}

TruncatedDistribution partial_z(const TruncatedDistribution& a) {
    TruncatedDistribution out = spend(a, 1);
    for (const auto& [pos, c] : a.entries()) {
        if (pos.first == 0) continue;
        add_entry(out, pos.first - 1, pos.second, P_const(rat(pos.first)) * c);
    }
    return out;
}

static TruncatedDistribution mul_single(const TruncatedDistribution& a, int dz, int dw) {
    TruncatedDistribution out = spend(a, 1);
    for (const auto& [pos, c] : a.entries()) add_entry(out, pos.first + dz, pos.second + dw, c);
    return out;
}

static TruncatedDistribution mul_z_minus_w(const TruncatedDistribution& a) {
    TruncatedDistribution out = spend(a, 1);
    for (const auto& [pos, c] : a.entries()) {
        add_entry(out, pos.first + 1, pos.second, c);
        add_entry(out, pos.first, pos.second + 1, P_const(-1) * c);
    }
    return out;
}

TruncatedDistribution mul_zw_power(const TruncatedDistribution& a, int m, int p, int q) {
    if (m < 0 || p < 0 || q < 0) throw std::invalid_argument("negative multiplier power");
    TruncatedDistribution out = a;
    for (int k = 0; k < m; ++k) out = mul_z_minus_w(out);
    for (int k = 0; k < p; ++k) out = mul_single(out, 1, 0);
    for (int k = 0; k < q; ++k) out = mul_single(out, 0, 1);
    return out;
}

TruncatedDistribution exp_zw(const TruncatedDistribution& a, int lambda_cap) {
    if (lambda_cap < 0) throw std::invalid_argument("negative truncation degree");
    TruncatedDistribution acc = spend(a, lambda_cap);
    acc = acc + a;
    TruncatedDistribution pw = a;
    Rat fact = rat(1);
    for (int i = 1; i <= lambda_cap; ++i) {
        pw = mul_z_minus_w(pw);
        fact *= rat(i);
        acc = acc + ((P_lam(i) * (rat(1) / fact)) * pw);
    }
    return acc;
}

TruncatedDistribution residue_z(const TruncatedDistribution& a) {
    TruncatedDistribution out = TruncatedDistribution::raw(a.policy(), a.used());
    for (const auto& [pos, c] : a.entries()) {
        if (pos.first != -1) continue;
        out.set(0, pos.second, c);
    }
    return out;
}

TruncatedDistribution bracket_distributions(const TruncatedDistribution& a,
                                            const TruncatedDistribution& b) {
    if (!(a.policy() == b.policy()))
        throw PolicyMismatch("bracketing distributions built under different truncation policies");
    for (const auto& [pos, c] : a.entries())
        if (pos.second != 0)
            throw std::logic_error("bracket_distributions expects its first argument in z only");
    for (const auto& [pos, c] : b.entries())
        if (pos.first != 0)
            throw std::logic_error("bracket_distributions expects its second argument in w only");
    TruncatedDistribution out =
        TruncatedDistribution::raw(a.policy(), std::max(a.used(), b.used()));
    for (const auto& [pa, ca] : a.entries()) {
        for (const auto& [pb, cb] : b.entries()) {
            SymbolCombo br = SymbolCombo::lie_bracket(ca, cb);
            add_entry(out, pa.first, pb.second, br);
        }
    }
    return out;
}

bool is_local(const TruncatedDistribution& a, int order) {
    return mul_zw_power(a, order).zero_on_exact_window();
}

/* --------------------------------------------------------- recognition */

std::optional<std::map<int, MPoly>> recognize_w_series(const TruncatedDistribution& series,
                                                       int max_derivative) {
    // Each position e with symbol index k can only come from the b-th
    // derivative of a generator with b = -e-k-2; collect one defining
    // coefficient per (alpha, b) from a position where the falling factor
    // does not vanish, then insist the closed forms reproduce the whole
    // window. Positions inside a degenerate band carry no information on
    // their own but are still checked by the reconstruction.
    std::map<std::pair<int, int>, MPoly> parts;
    for (const auto& [pos, combo] : series.entries()) {
        if (combo.is_zero()) continue;
        if (pos.first != 0 || !combo.scalar_part().is_zero()) return std::nullopt;
        int e = pos.second;
        for (const auto& [sym, coeff] : combo.terms()) {
            int b = -e - sym.i - 2;
            if (b < 0 || b > max_derivative) return std::nullopt;
            Rat fac = rat(1);
            for (int t = 1; t <= b; ++t) fac *= rat(e + t);
            if (fac == 0) continue;
            parts.try_emplace({sym.alpha, b}, coeff * (rat(1) / fac));
        }
    }
    TruncatedDistribution recon =
        TruncatedDistribution::raw(series.policy(), series.used());
    for (const auto& [key, p] : parts)
        recon = recon + (p * generator_w_derivative(key.first, key.second, series.policy()));
    if (!TruncatedDistribution::equal_on_common_window(recon, series)) return std::nullopt;
    std::map<int, MPoly> out;
    for (const auto& [key, p] : parts) {
        auto [it, fresh] = out.try_emplace(key.first, p * P_del(key.second));
        if (!fresh) it->second += p * P_del(key.second);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

/* ------------------------------------------------------ derived products */

std::map<int, MPoly> lambda_product(int alpha, int beta, TruncationPolicy pol, int lambda_cap) {
    TruncatedDistribution az = generator_distribution(alpha, pol, Axis::Z);
    TruncatedDistribution bw = generator_distribution(beta, pol, Axis::W);
    TruncatedDistribution res = residue_z(exp_zw(bracket_distributions(az, bw), lambda_cap));
    auto img = recognize_w_series(res, lambda_cap + 2);
    if (!img)
        throw std::logic_error("lambda_product: residue series left the generator span");
    return *img;
}

TruncatedDistribution j_product(int alpha, int beta, int j, TruncationPolicy pol) {
    TruncatedDistribution az = generator_distribution(alpha, pol, Axis::Z);
    TruncatedDistribution bw = generator_distribution(beta, pol, Axis::W);
    return residue_z(mul_zw_power(bracket_distributions(az, bw), j));
}

DeltaExpansion delta_expansion(const TruncatedDistribution& a, int maxj) {
    if (maxj < 0) throw std::invalid_argument("negative expansion order");
    if (!is_local(a, maxj + 1))
        throw NotLocalError("distribution is not local at order " + std::to_string(maxj + 1));
    DeltaExpansion out;
    for (int j = 0; j <= maxj; ++j) out.c.push_back(residue_z(mul_zw_power(a, j)));

    std::vector<Rat> fact(maxj + 1, rat(1));
    for (int j = 1; j <= maxj; ++j) fact[j] = fact[j - 1] * rat(j);

    // Check a(z,w) = sum_j c^j(w) d_w^j delta(z,w) / j! position by
    // position. The delta derivative pins the w source of c^j to
    // we+ze+1+j; positions whose sources fall outside a computed window
    // are skipped rather than guessed.
    bool ok = true;
    for (int ze = a.exact_lo(); ze <= a.exact_hi(); ++ze) {
        long n = -ze - 1;
        for (int we = a.exact_lo(); we <= a.exact_hi(); ++we) {
            SymbolCombo pred;
            bool determinable = true;
            for (int j = 0; j <= maxj; ++j) {
                Rat fac = rat(1);
                for (int t = 0; t < j; ++t) fac *= rat(n - t);
                if (fac == 0) continue;
                int src = we + ze + 1 + j;
                if (src < out.c[j].exact_lo() || src > out.c[j].exact_hi()) {
                    determinable = false;
                    break;
                }
                pred += P_const(fac / fact[j]) * out.c[j].at(0, src);
            }
            if (!determinable) continue;
            ++out.positions_compared;
            if (!(pred == a.at(ze, we))) ok = false;
        }
    }
    out.reconstruction_ok = ok;
    return out;
}

TruncatedDistribution phi_lambda(const TruncatedDistribution& a, int lambda_cap) {
    return residue_z(exp_zw(a, lambda_cap));
}

TruncatedDistribution phi_minus_lambda_del(const TruncatedDistribution& a, int lambda_cap) {
    if (lambda_cap < 0) throw std::invalid_argument("negative truncation degree");
    // (-lam - d_w)^j expands binomially; every term costs the residue's j
    // multiplications plus up to j derivatives, so the counter can reach
    // used + 2*lambda_cap.
    TruncatedDistribution acc = spend(a, 2 * lambda_cap);
    std::vector<Rat> fact(lambda_cap + 1, rat(1));
    for (int j = 1; j <= lambda_cap; ++j) fact[j] = fact[j - 1] * rat(j);
    for (int j = 0; j <= lambda_cap; ++j) {
        TruncatedDistribution rj = residue_z(mul_zw_power(a, j));
        Rat binom = rat(1);
        TruncatedDistribution der = rj;
        for (int t = 0; t <= j; ++t) {
            if (t > 0) {
                der = partial_w(der);
                binom = binom * rat(j - t + 1) / rat(t);
            }
            Rat sign = (j % 2 == 0) ? rat(1) : rat(-1);
            MPoly coeff = P_lam(j - t) * (sign * binom / fact[j]);
            acc = acc + (coeff * der);
        }
    }
    return acc;
}

}  // namespace cwb
