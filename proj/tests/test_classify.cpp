#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>

#include "cwb/classify.hpp"
#include "cwb/repmod.hpp"

using namespace cwb;

namespace {

StructureCoeffTable zero_table() {
    return StructureCoeffTable{"zero", [](int, int) { return MPoly{}; }};
}

Rat ipow(const Rat& b, int e) {
    Rat r = rat(1);
    for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
    return e >= 0 ? r : rat(1) / r;
}

}  // namespace

TEST_CASE("zero propagation regions") {
    ZeroSet z = zero_propagate({{1, 0}}, 3);
    for (int a = -3; a <= 3; ++a)
        for (int g = -3; g <= 3; ++g)
            if (g <= 0 && a + g >= 1) CHECK(z.contains(a, g));
    CHECK(!z.contains(1, 1));

    ZeroSet e = zero_propagate({}, 3);
    CHECK(e.known.empty());

    // Two zeros in one row wipe everything between them.
    ZeroSet two = zero_propagate({{1, 0}, {1, 2}}, 3);
    CHECK(two.contains(1, 1));

    CHECK_THROWS_AS(zero_propagate({{9, 0}}, 3), std::invalid_argument);
}

TEST_CASE("mirror bound readings") {
    ZeroSet t = zero_propagate({{-1, 0}}, 3, MirrorBound::Tight);
    ZeroSet w = zero_propagate({{-1, 0}}, 3, MirrorBound::Wide);

    // Wide is a strict superset here: its looser bound lets rows cascade.
    CHECK(w.known.size() > t.known.size());
    for (auto& p : t.known) CHECK(w.known.count(p));

    // Tight region for a row -1 seed: gamma >= 0 and alpha+gamma <= -1.
    CHECK(t.contains(-2, 1));
    CHECK(!t.contains(0, 0));
    CHECK(w.contains(0, 0));
    CHECK(w.contains(-1, 2));
}

TEST_CASE("closure from a single zero covers the window") {
    for (int N : {3, 4}) {
        ZeroSet z = trivial_closure({{2, -1}}, N);
        auto full = static_cast<std::size_t>(2 * N + 1) * (2 * N + 1);
        CHECK(z.known.size() == full);
    }

    // Any nonzero-row seed works, not just the one above.
    for (int a = -3; a <= 3; ++a) {
        if (a == 0) continue;
        for (int g = -3; g <= 3; ++g) {
            ZeroSet z = trivial_closure({{a, g}}, 3);
            CHECK(z.known.size() == 49u);
        }
    }

    ZeroSet pair = trivial_closure({{1, 0}, {-1, 1}}, 3);
    CHECK(pair.known.size() == 49u);
}

TEST_CASE("case detection") {
    auto vcd = from_family(ModuleFamily::vcd(rat(1, 2), rat(0)));
    CHECK(detect_case(vcd, 3) == CaseTag::CompleteGraded);
    CHECK(detect_case(zero_table(), 3) == CaseTag::TruncatedSubmodule);

    auto planted = StructureCoeffTable{"planted", [vcd](int a, int g) {
                                           if (a == 2 && g == -2) return MPoly{};
                                           return vcd(a, g);
                                       }};
    CHECK(detect_case(planted, 3) == CaseTag::Trivial);

    CHECK(!case_tag_str(CaseTag::CompleteGraded).empty());
}

TEST_CASE("row zero determines C") {
    auto vcd = from_family(ModuleFamily::vcd(rat(1, 2), rat(7)));
    HSolution h = solve_h(vcd, 4);
    CHECK(h.C == rat(1, 2));
    CHECK(!h.steps.empty());

    CHECK(solve_h(from_family(ModuleFamily::vd(rat(0))), 4).C == rat(0));

    // Breaking the step law in the alpha = 0 row is detected.
    auto bad = StructureCoeffTable{"bad", [vcd](int a, int g) {
                                       if (a == 0 && g == 2) return P_lam() * rat(7);
                                       return vcd(a, g);
                                   }};
    CHECK_THROWS_AS(solve_h(bad, 4), NotAModule);
}

TEST_CASE("admissible degrees of the scaling equation") {
    CHECK(degree_admissible(1, 0, rat(1, 2), 4) == std::set<int>{1});
    CHECK((degree_admissible(1, -1, rat(0), 4) == std::set<int>{1, 2, 3, 4}));
    CHECK((degree_admissible(2, 0, rat(0), 4) == std::set<int>{0, 1, 2, 3, 4}));
    CHECK_THROWS_AS(degree_admissible(0, 1, rat(0), 4), std::invalid_argument);
}

TEST_CASE("characteristic forms") {
    MPoly f1 = P_lam() * rat(3, 2) + P_del();
    auto F1 = characteristic_form_check(f1, 1, 0, rat(1, 2));
    REQUIRE(F1);
    CHECK(*F1 == P_s());

    // lam^2 is not a function of the characteristic combination.
    CHECK(!characteristic_form_check(P_lam(2), 1, 0, rat(0)));

    MPoly base = P_lam() + P_del();
    auto F3 = characteristic_form_check(base * base * rat(2), 2, 0, rat(0));
    REQUIRE(F3);
    CHECK(*F3 == P_s(2) * rat(1, 2));
}

TEST_CASE("gauge extraction from the P cocycle") {
    std::map<IndexPair, Rat> flat, geo;
    for (int a = -3; a <= 3; ++a)
        for (int g = -3; g <= 3; ++g) {
            flat[{a, g}] = rat(1);
            geo[{a, g}] = ipow(rat(2), a);
        }

    for (auto& [g, v] : solve_P_cocycle(flat, 3)) {
        (void)g;
        CHECK(v == rat(1));
    }

    auto gauge = solve_P_cocycle(geo, 3);
    for (int g = -3; g <= 3; ++g) CHECK(gauge.at(g) == ipow(rat(2), g));

    flat[{1, 0}] = rat(5);
    CHECK_THROWS_AS(solve_P_cocycle(flat, 3), CocycleViolation);
}

TEST_CASE("weight extraction from the K system") {
    std::map<IndexPair, Rat> K;
    for (int a = -3; a <= 3; ++a) {
        if (a == 0) continue;
        for (int g = -3; g <= 3; ++g) K[{a, g}] = rat(5, 3);
    }
    CHECK(solve_K_system(K, rat(1, 2), 3) == rat(5, 3));

    K[{1, 0}] = rat(2);
    CHECK_THROWS_AS(solve_K_system(K, rat(1, 2), 3), NotAModule);
}

TEST_CASE("round trip through shift and gauge") {
    auto raw = from_family(ModuleFamily::vcd(rat(1, 2), rat(-3, 4)));
    auto moved = rescale_basis(shift_basis(raw, 2), [](int g) { return ipow(rat(3), g); });
    DeductionReport rep = classify(moved, 4);
    REQUIRE(rep.ok);
    CHECK(rep.case_tag == CaseTag::CompleteGraded);
    REQUIRE(rep.family);
    CHECK(rep.family->tag == FamilyTag::VCD);
    CHECK(rep.C_rep == rat(1, 2));
    CHECK(rep.shift == 2);
    CHECK(rep.D == rat(-3, 4));
    CHECK(rep.reconstructed_entries == 81);
    CHECK(rep.checked_triples > 0);
    CHECK(!rep.window_limited);
}

TEST_CASE("degree two entries locate the special lines") {
    auto vd = from_family(ModuleFamily::vd(rat(1)));
    DeductionReport rep = classify(vd, 4);
    REQUIRE(rep.ok);
    REQUIRE(rep.family);
    CHECK(rep.family->tag == FamilyTag::VD);
    CHECK(rep.D == rat(1));
    CHECK(rep.shift == 0);
    CHECK(rep.C_rep == rat(0));

    auto raw = from_family(ModuleFamily::vdprime(rat(2, 5)));
    auto moved = rescale_basis(shift_basis(raw, -1), [](int g) { return rat(g + 100); });
    DeductionReport rep2 = classify(moved, 3);
    REQUIRE(rep2.ok);
    REQUIRE(rep2.family);
    CHECK(rep2.family->tag == FamilyTag::VDprime);
    CHECK(rep2.D == rat(2, 5));
    CHECK(rep2.shift == -1);
}

TEST_CASE("vanishing tables") {
    DeductionReport rep = classify(zero_table(), 3);
    CHECK(rep.ok);
    CHECK(rep.case_tag == CaseTag::TruncatedSubmodule);
    REQUIRE(rep.family);
    CHECK(rep.family->tag == FamilyTag::Trivial);

    // One planted zero off the alpha = 0 row forces the whole table down.
    auto vcd = from_family(ModuleFamily::vcd(rat(1, 3), rat(2)));
    auto planted = StructureCoeffTable{"planted", [vcd](int a, int g) {
                                           if (a == 1 && g == 1) return MPoly{};
                                           return vcd(a, g);
                                       }};
    DeductionReport rep2 = classify(planted, 3);
    CHECK(rep2.ok);
    CHECK(rep2.case_tag == CaseTag::Trivial);
    REQUIRE(rep2.family);
    CHECK(rep2.family->tag == FamilyTag::Trivial);
    CHECK(!rep2.steps.empty());
}

TEST_CASE("mutated tables are rejected with a named triple") {
    auto vcd = from_family(ModuleFamily::vcd(rat(1, 2), rat(1)));
    auto bad = StructureCoeffTable{"mut", [vcd](int a, int g) {
                                       if (a == 1 && g == 0) return vcd(a, g) + P_lam();
                                       return vcd(a, g);
                                   }};
    DeductionReport rep = classify(bad, 3);
    CHECK(!rep.ok);
    CHECK(rep.error_kind == "not-a-module");
    CHECK(!rep.error.empty());
}

TEST_CASE("window limited reports") {
    // Shift far enough and both special lines leave the window: the table
    // looks linear everywhere, so the generic family is the honest answer.
    auto far = shift_basis(from_family(ModuleFamily::vd(rat(3))), 9);
    DeductionReport rep = classify(far, 3);
    REQUIRE(rep.ok);
    REQUIRE(rep.family);
    CHECK(rep.family->tag == FamilyTag::VCD);
    CHECK(rep.window_limited);

    // A half-visible shift keeps one line inside: family resolved, but the
    // report still flags the blind spot.
    auto half = shift_basis(from_family(ModuleFamily::vd(rat(3))), 5);
    DeductionReport rep2 = classify(half, 3);
    REQUIRE(rep2.ok);
    REQUIRE(rep2.family);
    CHECK(rep2.family->tag == FamilyTag::VD);
    CHECK(rep2.window_limited);
    CHECK(rep2.shift == 5);
    CHECK(rep2.D == rat(3));
}

TEST_CASE("degree cap") {
    // With the ansatz capped below two, the squared entries of VD cannot
    // be expressed and the failure says so.
    auto vd = from_family(ModuleFamily::vd(rat(1)));
    DeductionReport rep = classify(vd, 3, 1);
    CHECK(!rep.ok);
    CHECK(rep.error_kind == "ansatz-degree-exceeded");

    CHECK_THROWS_AS(classify(zero_table(), 1), std::invalid_argument);
}
