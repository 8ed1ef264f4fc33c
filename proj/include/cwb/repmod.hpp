#pragma once

/*
 * repmod.hpp
 *
 * Free intermediate series modules over the Block conformal algebra.
 * A module is presented by its structure coefficient table
 * f_{alpha,gamma}(lam, del), the polynomial with which L_alpha sends
 * the basis vector v_gamma to v_{alpha+gamma}. Three parametric
 * families are built in; arbitrary tables can be checked against the
 * defining functional equation and compared up to diagonal basis
 * changes.
 */

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cwb/poly.hpp"

namespace cwb {

enum class FamilyTag { VCD, VD, VDprime, Trivial };

std::string family_tag_str(FamilyTag tag);

struct ModuleFamily {
    FamilyTag tag = FamilyTag::Trivial;
    Rat C;  // VCD only
    Rat D;  // all but Trivial

    static ModuleFamily vcd(const Rat& C, const Rat& D) { return {FamilyTag::VCD, C, D}; }
    static ModuleFamily vd(const Rat& D) { return {FamilyTag::VD, rat(0), D}; }
    static ModuleFamily vdprime(const Rat& D) { return {FamilyTag::VDprime, rat(0), D}; }
    static ModuleFamily trivial() { return {FamilyTag::Trivial, rat(0), rat(0)}; }

    std::string str() const;
};

// The classified actions. VCD is ((alpha+gamma+C)lam + alpha(del+D))
// everywhere; VD and VDprime agree with VCD at C = 0 away from the two
// special lines gamma = 0 and alpha+gamma = 0, where one line carries a
// squared factor and the other a constant.
MPoly family_coeff(const ModuleFamily& family, int alpha, int gamma);

struct StructureCoeffTable {
    std::string name;  // family description or "custom ..."
    std::function<MPoly(int, int)> coeff;

    MPoly operator()(int alpha, int gamma) const { return coeff(alpha, gamma); }
};

StructureCoeffTable from_family(const ModuleFamily& family);

// Finite C[del]-combination of basis vectors, gamma -> coefficient.
using GradedVector = std::map<int, MPoly>;

// L_alpha applied to v. A coefficient p(del) on v_gamma contributes
// p(del+lam) * f_{alpha,gamma}(lam, del) on v_{alpha+gamma}, which is
// the sesquilinearity rewrite for module actions.
std::map<int, MPoly> lambda_action(const StructureCoeffTable& table, int alpha,
                                   const GradedVector& v);

// The functional equation every structure table of a module satisfies:
//   (beta lam - alpha mu) f_{alpha+beta,gamma}(lam+mu, del)
//     = f_{beta,gamma}(mu, del+lam) f_{alpha,beta+gamma}(lam, del)
//     - f_{alpha,gamma}(lam, del+mu) f_{beta,alpha+gamma}(mu, del).
// The defect is LHS - RHS; the check is defect == 0.
MPoly module_equation_defect(const StructureCoeffTable& table, int alpha, int beta, int gamma);
bool check_module_equation(const StructureCoeffTable& table, int alpha, int beta, int gamma);

struct ModuleSweepFailure {
    int alpha = 0, beta = 0, gamma = 0;
    std::string detail;
};

struct ModuleSweepReport {
    int triples_checked = 0;
    long long elapsed_ms = 0;
    std::vector<ModuleSweepFailure> failures;
    bool ok() const { return failures.empty(); }
};

// Every triple with |alpha|, |beta|, |gamma| <= window.
ModuleSweepReport table_sweep(const StructureCoeffTable& table, int window);
ModuleSweepReport family_sweep(const ModuleFamily& family, int window);

// Diagonal basis change v'_gamma = gauge(gamma) v_gamma, under which
// f'_{alpha,gamma} = gauge(gamma)/gauge(alpha+gamma) * f_{alpha,gamma}.
// Throws on a zero gauge value when the entry is first evaluated.
StructureCoeffTable rescale_basis(const StructureCoeffTable& table,
                                  std::function<Rat(int)> gauge);

// Index shift v'_gamma = v_{gamma+n}, so f'_{alpha,gamma} = f_{alpha,gamma+n}.
StructureCoeffTable shift_basis(const StructureCoeffTable& table, int n);

struct IsoWitness {
    int shift = 0;
    std::map<int, Rat> gauge;  // gamma in [-2N, 2N]; unconstrained nodes get 1
};

// Searches shifts |n| <= window in the order 0, 1, -1, 2, -2, ... and
// solves for a diagonal gauge by ratio propagation. A returned witness
// satisfies t2(a,g) = gauge(g)/gauge(a+g) * t1(a, g+n) on the whole
// window; none means no (shift, gauge) pair works over the searched
// range.
std::optional<IsoWitness> is_isomorphic_diagonal(const StructureCoeffTable& t1,
                                                 const StructureCoeffTable& t2, int window);

}  // namespace cwb
