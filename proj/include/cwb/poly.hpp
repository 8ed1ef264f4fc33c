#pragma once

/*
 * poly.hpp
 *
 * Exact multivariate polynomials over the rationals in the fixed variable
 * set {lam, mu, del, s}. Everything the workbench verifies eventually
 * reduces to "this polynomial is identically zero", so the representation
 * is kept sparse and canonical at all times: a term map from monomials to
 * nonzero rational coefficients.
 *
 * The variable set is closed: lambda and mu are the two bracket parameters,
 * del is the translation generator, and s is the auxiliary variable used
 * when a bivariate coefficient is rewritten along its characteristic line.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cwb/rational.hpp"

namespace cwb {

enum Var : int { LAM = 0, MU = 1, DEL = 2, S = 3 };
inline constexpr int kNumVars = 4;
inline constexpr const char* kVarNames[kNumVars] = {"lam", "mu", "del", "s"};

// A monomial is the exponent vector alone; the coefficient lives in the
// polynomial's term map. Exponents are never negative.
struct Monomial {
    std::array<int, kNumVars> exp{0, 0, 0, 0};

    int total_degree() const { return exp[0] + exp[1] + exp[2] + exp[3]; }

    bool operator==(const Monomial& o) const { return exp == o.exp; }

    // Graded order, ties broken from the top of the variable ladder
    // (s over del over mu over lam). Terms print from greatest to least,
    // which is what puts "del" ahead of "3*lam" in a degree-one sum.
    bool operator<(const Monomial& o) const {
        int da = total_degree(), db = o.total_degree();
        if (da != db) return da < db;
        for (int v = kNumVars - 1; v >= 0; --v)
            if (exp[v] != o.exp[v]) return exp[v] < o.exp[v];
        return false;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (int v = 0; v < kNumVars; ++v) r.exp[v] = exp[v] + o.exp[v];
        return r;
    }
};

class MPoly {
  public:
    MPoly() = default;

    static MPoly zero() { return MPoly(); }

    static MPoly constant(const Rat& c) {
        MPoly p;
        if (c != 0) p.terms_[Monomial{}] = c;
        return p;
    }
    static MPoly constant(long c) { return constant(rat(c)); }

    static MPoly var(int v, int k = 1) {
        MPoly p;
        if (k < 0) throw std::invalid_argument("negative exponent");
        Monomial m;
        m.exp[v] = k;
        p.terms_[m] = rat(1);
        return p;
    }

    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

    MPoly operator-() const {
        MPoly r;
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    friend MPoly operator*(const Rat& c, const MPoly& p) {
        MPoly r;
        if (c == 0) return r;
        for (const auto& [m, q] : p.terms_) r.terms_[m] = c * q;
        return r;
    }
    friend MPoly operator*(const MPoly& p, const Rat& c) { return c * p; }

    // The coefficient of var^k, as a polynomial in the remaining variables.
    MPoly coeff_in(int v, int k) const {
        MPoly r;
        for (const auto& [m, c] : terms_) {
            if (m.exp[v] != k) continue;
            Monomial rest = m;
            rest.exp[v] = 0;
            r.add_term(rest, c);
        }
        return r;
    }

    // Max exponent of v; the zero polynomial reports -1 so that degree
    // comparisons stay total without a separate emptiness case.
    int degree_in(int v) const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.exp[v]);
        return d;
    }

    int total_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    MPoly partial(int v) const {
        MPoly r;
        for (const auto& [m, c] : terms_) {
            if (m.exp[v] == 0) continue;
            Monomial d = m;
            d.exp[v] -= 1;
            r.add_term(d, c * rat(m.exp[v]));
        }
        return r;
    }

    // Simultaneous substitution: every variable is replaced in one pass,
    // so bindings like {lam -> mu, del -> del + lam} cannot feed into each
    // other. Unbound variables map to themselves.
    MPoly substitute(const std::map<int, MPoly>& bindings) const {
        std::array<const MPoly*, kNumVars> image{};
        std::array<MPoly, kNumVars> self;
        for (int v = 0; v < kNumVars; ++v) {
            auto it = bindings.find(v);
            if (it != bindings.end()) {
                image[v] = &it->second;
            } else {
                self[v] = var(v);
                image[v] = &self[v];
            }
        }
        MPoly r;
        for (const auto& [m, c] : terms_) {
            MPoly t = constant(c);
            for (int v = 0; v < kNumVars; ++v)
                for (int k = 0; k < m.exp[v]; ++k) t *= *image[v];
            r += t;
        }
        return r;
    }

    Rat eval(const std::array<Rat, kNumVars>& point) const {
        Rat total = 0;
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (int v = 0; v < kNumVars; ++v)
                for (int k = 0; k < m.exp[v]; ++k) t *= point[v];
            total += t;
        }
        return total;
    }

    // Constant term as a rational; throws unless the polynomial actually
    // is a constant.
    Rat as_constant() const {
        if (terms_.empty()) return rat(0);
        if (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0)
            return terms_.begin()->second;
        throw std::domain_error("polynomial is not a constant: " + str());
    }

    std::string str() const;
    static MPoly parse(const std::string& text);

  private:
    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Monomial, Rat> terms_;
};

// Convenience builders used all over the checkers.
inline MPoly P_lam(int k = 1) { return MPoly::var(LAM, k); }
inline MPoly P_mu(int k = 1) { return MPoly::var(MU, k); }
inline MPoly P_del(int k = 1) { return MPoly::var(DEL, k); }
inline MPoly P_s(int k = 1) { return MPoly::var(S, k); }
inline MPoly P_const(long c) { return MPoly::constant(c); }
inline MPoly P_const(const Rat& c) { return MPoly::constant(c); }

}  // namespace cwb
