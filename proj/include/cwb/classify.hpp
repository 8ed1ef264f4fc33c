#pragma once

/*
 * classify.hpp
 *
 * Decides which module family a structure coefficient table belongs to,
 * from window data alone. The deduction runs in stages: detect the case
 * split from zero entries, verify the functional equation, normalize
 * the alpha = 0 row to recover C, reduce every entry to a univariate
 * polynomial along its characteristic line, read off the degree
 * profile, peel off a diagonal gauge, and pin down the constant D.
 * Each stage only trusts facts derivable inside the window, and the
 * report says when the window is too small to settle a question.
 */

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cwb/poly.hpp"
#include "cwb/repmod.hpp"

namespace cwb {

// A table is rejected with this when window data contradicts the
// functional equation or one of its consequences.
struct NotAModule : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CocycleViolation : NotAModule {
    int alpha, beta, gamma;
    CocycleViolation(int a, int b, int g, const std::string& msg)
        : NotAModule(msg), alpha(a), beta(b), gamma(g) {}
};

using IndexPair = std::pair<int, int>;  // (alpha, gamma)

struct ZeroSet {
    int window = 0;
    std::set<IndexPair> known;
    bool contains(int alpha, int gamma) const { return known.count({alpha, gamma}) != 0; }
};

// The row -1 propagation region has two candidate upper bounds for
// alpha+gamma. Tight (gamma_0 - 1) is the image of the row 1 region
// under negating every index, which is how the mirror statement is
// proved; Wide (gamma_0 + 1) additionally claims two diagonals that the
// negation argument does not reach. Default Tight; tests exercise both.
enum class MirrorBound { Tight, Wide };

// Least fixed point of the zero-propagation rules inside the window:
// a zero at (1, g0) forces zeros on {gamma <= g0, alpha+gamma >= g0+1},
// a zero at (-1, g0) forces the mirrored region, and two zeros in row 1
// or row -1 force the whole stretch between them.
ZeroSet zero_propagate(const std::set<IndexPair>& seeds, int window,
                       MirrorBound bound = MirrorBound::Tight);

// Saturates seeds under two sound consequences of the functional
// equation: the instance rule (both products on the right vanish, so
// the left side does) and the column rule (a vanishing entry with
// alpha != 0 wipes its whole column, granted entries lie on
// characteristic lines). From any single seed with alpha != 0 this
// reaches every window entry; that is the engine behind the "one zero
// entry makes the module trivial" conclusion.
ZeroSet trivial_closure(const std::set<IndexPair>& seeds, int window);

enum class CaseTag { TruncatedSubmodule, Trivial, CompleteGraded };

std::string case_tag_str(CaseTag tag);

// Truncated-submodule when f_{1,g0} and f_{-1,g0+1} both vanish for
// some g0; otherwise trivial when any entry with alpha != 0 vanishes;
// otherwise complete-graded.
CaseTag detect_case(const StructureCoeffTable& table, int window);

struct HSolution {
    Rat C;
    std::vector<std::string> steps;
};

// The alpha = 0 row of any module table is f_{0,gamma} = (gamma + C)
// lam: free of del, linear, no constant term, and stepping gamma by one
// adds lam. Verifies all of that on the window and returns C; throws
// NotAModule otherwise.
HSolution solve_h(const StructureCoeffTable& table, int window);

// Degrees n <= max_n solving alpha * x^n = x * alpha^n exactly, where
// x = alpha + gamma + C. Evaluated literally with x^0 = 1 even at
// x = 0. Requires alpha != 0.
std::set<int> degree_admissible(int alpha, int gamma, const Rat& C, int max_n);

// If f(lam, del) = F((alpha+gamma+C) lam + alpha del) for a univariate
// F, returns F (in the s variable); verified by resubstitution, so a
// returned F is exact. None when f is not constant along the
// characteristic lines.
std::optional<MPoly> characteristic_form_check(const MPoly& f, int alpha, int gamma,
                                               const Rat& C);

// Solves P_{alpha,gamma} = C_{alpha+gamma} / C_gamma for the gauge C_g,
// anchored at C_0 = 1, after verifying the multiplicative relation
// P_{alpha+beta,gamma} = P_{alpha,beta+gamma} P_{beta,gamma} on every
// window triple. P must be defined and nonzero on the whole window,
// with P_{0,gamma} = 1. Throws CocycleViolation naming a triple.
std::map<int, Rat> solve_P_cocycle(const std::map<IndexPair, Rat>& P, int window);

// Verifies the two linear relations the constants K_{alpha,gamma}
// inherit from the functional equation,
//   (a+b) K_{a+b,g} = a K_{a,b+g} + (a+b+g+C) K_{b,g} - (a+g+C) K_{b,a+g}
//   K_{a,b+g} + K_{b,g} = K_{b,a+g} + K_{a,g},
// on every instance whose references K contains, then returns the
// common value D. Throws NotAModule when a relation fails or the values
// disagree.
Rat solve_K_system(const std::map<IndexPair, Rat>& K, const Rat& C, int window);

struct DeductionReport {
    CaseTag case_tag = CaseTag::CompleteGraded;
    bool ok = false;
    std::string error;       // set when ok is false
    std::string error_kind;  // not-a-module | ansatz-degree-exceeded | internal

    std::optional<ModuleFamily> family;
    Rat C_raw;          // lam coefficient of f_{0,0} as found
    Rat C_rep;          // representative with 0 <= C_rep < 1
    long shift = 0;     // C_raw = C_rep + shift
    Rat D;
    std::map<int, Rat> gauge;  // C_gamma, solved on [-N, N], extended to [-2N, 2N]

    bool window_limited = false;  // a special line falls outside the window
    int checked_triples = 0;
    int reconstructed_entries = 0;
    std::vector<std::string> steps;
};

// The full pipeline. For a complete-graded outcome the report carries
// witnesses (family, shift, gauge) with
//   table(a, g) == gauge[a+g] / gauge[g] * family_coeff(family, a, g + shift)
// verified on every window entry before the report claims ok.
DeductionReport classify(const StructureCoeffTable& table, int window, int max_degree = 2);

}  // namespace cwb
