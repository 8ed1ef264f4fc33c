#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "cwb/repmod.hpp"

using namespace cwb;

namespace {

Rat pow2(int g) {
    Rat r = 1;
    for (int i = 0; i < (g < 0 ? -g : g); ++i) r *= 2;
    return g < 0 ? rat(1) / r : r;
}

}  // namespace

TEST_CASE("family coefficients") {
    CHECK(family_coeff(ModuleFamily::vcd(rat(1, 2), rat(0)), 1, 0).str() == "del + 3/2*lam");

    // VCD is the generic action everywhere.
    auto f = ModuleFamily::vcd(rat(2), rat(-1, 3));
    for (int a : {-2, 0, 1, 3})
        for (int g : {-3, 0, 2}) {
            MPoly want = P_lam() * rat(a + g + 2) + (P_del() - P_const(rat(1, 3))) * rat(a);
            CHECK(family_coeff(f, a, g) == want);
        }

    // VD squares the shifted derivation on gamma = 0 and degenerates to a
    // constant on alpha + gamma = 0.
    auto vd20 = family_coeff(ModuleFamily::vd(rat(0)), 2, 0);
    CHECK(vd20 == (P_lam() + P_del()) * (P_lam() + P_del()) * rat(2));
    CHECK(family_coeff(ModuleFamily::vd(rat(5)), 3, -3) == P_const(3));
    CHECK(family_coeff(ModuleFamily::vd(rat(1)), 2, 1) ==
          P_lam() * rat(3) + (P_del() + P_const(1)) * rat(2));

    // VDprime swaps the roles of the two lines.
    auto vdp = family_coeff(ModuleFamily::vdprime(rat(1)), 3, -3);
    CHECK(vdp == (P_del() + P_const(1)) * (P_del() + P_const(1)) * rat(3));
    CHECK(family_coeff(ModuleFamily::vdprime(rat(7)), 4, 0) == P_const(4));

    // Trivial is identically zero; alpha = 0 rows carry the weight term only.
    CHECK(family_coeff(ModuleFamily::trivial(), 2, 1).is_zero());
    CHECK(family_coeff(ModuleFamily::vcd(rat(1, 2), rat(9)), 0, 1) == P_lam() * rat(3, 2));
}

TEST_CASE("family descriptions") {
    CHECK(family_tag_str(FamilyTag::VDprime) == "vdprime");
    CHECK(ModuleFamily::vcd(rat(1, 2), rat(-3)).str() == "vcd(C=1/2, D=-3)");
    CHECK(ModuleFamily::vd(rat(2)).str() == "vd(D=2)");
    CHECK(ModuleFamily::trivial().str() == "trivial");
}

TEST_CASE("lambda action on graded vectors") {
    auto t = from_family(ModuleFamily::vcd(rat(0), rat(0)));

    auto img = lambda_action(t, 1, GradedVector{{0, P_const(1)}});
    REQUIRE(img.size() == 1);
    CHECK(img.at(1) == P_lam() + P_del());

    CHECK(lambda_action(t, 1, GradedVector{}).empty());

    // del coefficients pick up the lam shift before the table entry lands.
    auto img2 = lambda_action(t, 1, GradedVector{{0, P_del()}});
    CHECK(img2.at(1) == (P_del() + P_lam()) * (P_lam() + P_del()));

    // Two components map to two distinct target degrees.
    auto img3 = lambda_action(t, 2, GradedVector{{0, P_const(1)}, {1, P_const(3)}});
    REQUIRE(img3.size() == 2);
    CHECK(img3.at(2) == P_lam() * rat(2) + P_del() * rat(2));
    CHECK(img3.at(3) == (P_lam() * rat(3) + P_del() * rat(2)) * rat(3));
}

TEST_CASE("module equation on the families") {
    auto t = from_family(ModuleFamily::vcd(rat(0), rat(0)));
    CHECK(check_module_equation(t, 1, 1, 1));
    CHECK(module_equation_defect(t, 2, -1, 3).is_zero());

    auto rep = family_sweep(ModuleFamily::vcd(rat(1, 2), rat(-3, 4)), 4);
    CHECK(rep.ok());
    CHECK(rep.triples_checked == 729);

    CHECK(family_sweep(ModuleFamily::vd(rat(2)), 4).ok());
    CHECK(family_sweep(ModuleFamily::vdprime(rat(-1, 3)), 4).ok());
    CHECK(family_sweep(ModuleFamily::trivial(), 4).ok());

    CHECK_THROWS_AS(family_sweep(ModuleFamily::trivial(), 0), std::invalid_argument);
}

TEST_CASE("single entry sabotage breaks the equation") {
    auto t = from_family(ModuleFamily::vcd(rat(0), rat(0)));
    auto base = t.coeff;
    auto bad = t;
    bad.coeff = [base](int a, int g) {
        if (a == 1 && g == 0) return family_coeff(ModuleFamily::vcd(rat(0), rat(1)), 1, 0);
        return base(a, g);
    };
    CHECK(!check_module_equation(bad, 1, 1, 0));
    CHECK(!module_equation_defect(bad, 1, 1, 0).is_zero());

    auto rep = table_sweep(bad, 2);
    CHECK(!rep.ok());
    // The sweep names at least one offending triple touching the bad entry.
    bool touches = false;
    for (const auto& f : rep.failures)
        touches = touches || (f.alpha == 1 || f.beta == 1);
    CHECK(touches);
}

TEST_CASE("diagonal rescaling") {
    auto t = from_family(ModuleFamily::vcd(rat(0), rat(0)));

    auto scaled = rescale_basis(t, pow2);
    auto back = rescale_basis(scaled, [](int g) -> Rat { return rat(1) / pow2(g); });
    for (int a = -3; a <= 3; ++a)
        for (int g = -3; g <= 3; ++g) CHECK(back(a, g) == t(a, g));

    // Rescaling preserves the equation.
    CHECK(table_sweep(scaled, 3).ok());

    // Zero gauge values are rejected at evaluation time.
    auto dead = rescale_basis(t, [](int g) { return rat(g); });
    CHECK_THROWS_AS(dead(1, 0), std::domain_error);
}

TEST_CASE("index shift matches the C parameter") {
    auto t = from_family(ModuleFamily::vcd(rat(0), rat(0)));
    auto shifted = shift_basis(t, 2);
    auto direct = from_family(ModuleFamily::vcd(rat(2), rat(0)));
    for (int a = -3; a <= 3; ++a)
        for (int g = -3; g <= 3; ++g) CHECK(shifted(a, g) == direct(a, g));
}

TEST_CASE("diagonal isomorphism search") {
    auto t = from_family(ModuleFamily::vcd(rat(0), rat(0)));

    // C and C+1 name the same module, one index apart.
    auto w = is_isomorphic_diagonal(from_family(ModuleFamily::vcd(rat(1, 2), rat(0))),
                                    from_family(ModuleFamily::vcd(rat(3, 2), rat(0))), 4);
    REQUIRE(w);
    CHECK(w->shift == 1);
    for (auto& [g, v] : w->gauge) CHECK(v == 1);

    auto self = is_isomorphic_diagonal(t, t, 4);
    REQUIRE(self);
    CHECK(self->shift == 0);

    // Different families stay distinct.
    CHECK(!is_isomorphic_diagonal(from_family(ModuleFamily::vcd(rat(1, 2), rat(0))),
                                  from_family(ModuleFamily::vd(rat(0))), 4));
    CHECK(!is_isomorphic_diagonal(from_family(ModuleFamily::vd(rat(1))),
                                  from_family(ModuleFamily::vdprime(rat(1))), 3));

    // A gauged copy is recognized and the witness satisfies the defining
    // relation on the whole search window.
    auto scaled = rescale_basis(t, pow2);
    auto w4 = is_isomorphic_diagonal(t, scaled, 4);
    REQUIRE(w4);
    CHECK(w4->shift == 0);
    for (int a = -4; a <= 4; ++a)
        for (int g = -4; g <= 4; ++g)
            CHECK(scaled(a, g) * w4->gauge.at(a + g) == t(a, g) * w4->gauge.at(g));

    CHECK_THROWS_AS(is_isomorphic_diagonal(t, t, 1), std::invalid_argument);
}
