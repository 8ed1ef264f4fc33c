#pragma once

/*
 * conformal.hpp
 *
 * Table-driven Lie conformal algebras over C[del] and their axiom
 * checkers. An algebra is nothing but a structure table (alpha, beta) ->
 * image polynomial; the same checkers therefore run against the Block
 * bracket, a one-generator Virasoro-style table, or a deliberately
 * sabotaged table in the mutation tests.
 */

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cwb/distribution.hpp"
#include "cwb/poly.hpp"

namespace cwb {

// Generator index -> polynomial in lam and del. Canonical form drops zero
// entries.
using LambdaImage = std::map<int, MPoly>;
// Finite C[del]-combination of generators; coefficients use del only.
using ConformalElement = std::map<int, MPoly>;

std::string image_str(const LambdaImage& img);

class ConformalAlgebra {
  public:
    ConformalAlgebra(std::string name, std::function<LambdaImage(int, int)> table)
        : name_(std::move(name)), table_(std::move(table)) {}

    // [L_a lam L_b] = (a del + (a+b) lam) L_{a+b}.
    static ConformalAlgebra block();
    // One generator with [L lam L] = (del + c lam) L; c = 2 is the
    // centerless Virasoro bracket and the only c passing skew symmetry.
    static ConformalAlgebra one_generator(const Rat& c);
    // Same table as base except at one pair; for sensitivity tests.
    static ConformalAlgebra with_override(const ConformalAlgebra& base, int alpha, int beta,
                                          LambdaImage img, std::string name);

    const std::string& name() const { return name_; }

    LambdaImage basis_bracket(int alpha, int beta) const;
    LambdaImage lambda_bracket(const ConformalElement& a, const ConformalElement& b) const;

    bool check_sesqui(const ConformalElement& a, const ConformalElement& b) const;
    bool check_skew(int alpha, int beta) const;
    bool check_skew(const ConformalElement& a, const ConformalElement& b) const;
    bool check_jacobi(int alpha, int beta, int gamma) const;
    bool check_jacobi(const ConformalElement& a, const ConformalElement& b,
                      const ConformalElement& c) const;

    // Difference LHS - RHS of the skew or Jacobi identity; zero iff the
    // axiom holds. Used to report offending polynomials.
    LambdaImage skew_defect(const ConformalElement& a, const ConformalElement& b) const;
    LambdaImage jacobi_defect(const ConformalElement& a, const ConformalElement& b,
                              const ConformalElement& c) const;

  private:
    // Bracket with outer formal variable nu (lam, mu, or lam+mu): left
    // coefficients substitute del -> -nu, right ones del -> del+nu, and
    // the table image's lam becomes nu. Coefficients may carry the other
    // formal variables as scalars, which is what the Jacobi check needs.
    LambdaImage bracket_at(const std::map<int, MPoly>& a, const std::map<int, MPoly>& b,
                           const MPoly& nu) const;

    std::string name_;
    std::function<LambdaImage(int, int)> table_;
};

struct AxiomFailure {
    std::string axiom;  // "sesquilinearity" | "skew" | "jacobi"
    int alpha = 0, beta = 0, gamma = 0;
    std::string detail;
};

struct AxiomReport {
    int sesqui_checked = 0;
    int skew_checked = 0;
    int jacobi_checked = 0;
    long long elapsed_ms = 0;
    std::vector<AxiomFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Skew on all pairs and Jacobi on all triples with indices in [-N, N],
// plus both sesquilinearity rewrites per pair. Parallel over triples.
AxiomReport axiom_sweep(const ConformalAlgebra& algebra, int window);

struct BridgeReport {
    int pairs_checked = 0;
    int jproducts_checked = 0;
    long long elapsed_ms = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// One pair: the residue-formula lambda product of the generator
// distributions must equal the algebra's table entry exactly.
bool bridge_check(const ConformalAlgebra& algebra, int alpha, int beta, TruncationPolicy pol,
                  int lambda_cap);

// All pairs in the window: lambda products against the table, plus the
// j-products against their closed forms (a del L for j=0, (a+b) L for
// j=1, zero from j=2 up to max_j).
BridgeReport bridge_sweep(const ConformalAlgebra& algebra, int window, TruncationPolicy pol,
                          int lambda_cap, int max_j);

}  // namespace cwb
