#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cwb/distribution.hpp"

using namespace cwb;

static const TruncationPolicy kPol{12, 4};

TEST_CASE("dirac delta basics") {
    auto d = dirac_delta(kPol);
    CHECK(d.at(-1, 0) == SymbolCombo::scalar(P_const(1)));
    CHECK(d.at(-3, 2) == SymbolCombo::scalar(P_const(1)));
    CHECK(d.at(-3, 1).is_zero());

    // (z - w) delta dies on the trusted window.
    CHECK(mul_zw_power(d, 1).zero_on_exact_window());

    // Res_z delta is the constant 1 in w.
    auto r = residue_z(d);
    CHECK(r.at(0, 0) == SymbolCombo::scalar(P_const(1)));
    for (int w = r.exact_lo(); w <= r.exact_hi(); ++w)
        if (w != 0) CHECK(r.at(0, w).is_zero());
}

TEST_CASE("delta derivative identities") {
    auto d = dirac_delta(kPol);
    auto dw = partial_w(d);
    CHECK(mul_zw_power(dw, 2).zero_on_exact_window());
    CHECK(!mul_zw_power(dw, 1).zero_on_exact_window());
    CHECK(partial_w(one_distribution(kPol)).zero_on_exact_window());

    CHECK(residue_z(dw).zero_on_exact_window());
    auto shifted = residue_z(mul_zw_power(dw, 1));
    CHECK(shifted.at(0, 0) == SymbolCombo::scalar(P_const(1)));
    for (int w = shifted.exact_lo(); w <= shifted.exact_hi(); ++w)
        if (w != 0) CHECK(shifted.at(0, w).is_zero());
}

TEST_CASE("generator series read-off") {
    auto L0 = generator_distribution(0, kPol);
    CHECK(L0.at(-1, 0) == SymbolCombo::single({0, -1}));
    auto L2 = generator_distribution(2, kPol);
    CHECK(L2.at(-3, 0) == SymbolCombo::single({2, 1}));
    CHECK(L2.at(0, 0) == SymbolCombo::single({2, -2}));
}

TEST_CASE("symbol bracket follows the structure constants") {
    auto br = [](int a, int i, int b, int j) {
        return SymbolCombo::lie_bracket(SymbolCombo::single({a, i}),
                                        SymbolCombo::single({b, j}));
    };
    CHECK(br(1, 0, 1, 0).is_zero());
    CHECK(br(1, 0, 2, 1).is_zero());  // 2*1 - 1*2
    SymbolCombo want = SymbolCombo::single({3, 1}, P_const(3));
    CHECK(br(1, 1, 2, 0) == want);
}

TEST_CASE("j products match their closed forms") {
    auto j0 = j_product(1, 2, 0, kPol);
    auto dL3 = generator_w_derivative(3, 1, kPol);
    CHECK(TruncatedDistribution::equal_on_common_window(j0, dL3));

    auto j1 = j_product(2, 3, 1, kPol);
    auto L5 = generator_distribution(5, kPol, Axis::W);
    CHECK(TruncatedDistribution::equal_on_common_window(j1, P_const(5) * L5));

    for (int a : {-2, 0, 1, 3})
        for (int b : {-1, 2}) {
            CHECK(j_product(a, b, 2, kPol).zero_on_exact_window());
            CHECK(j_product(a, b, 3, kPol).zero_on_exact_window());
        }
}

TEST_CASE("lambda product from the residue formula") {
    auto img = lambda_product(1, 2, kPol, 4);
    REQUIRE(img.count(3) == 1);
    CHECK(img.at(3) == P_del() + P_lam() * rat(3));

    auto zero = lambda_product(0, 0, kPol, 4);
    for (const auto& [idx, p] : zero) CHECK(p.is_zero());

    auto neg = lambda_product(-1, 1, kPol, 4);
    REQUIRE(neg.count(0) == 1);
    CHECK(neg.at(0) == -P_del());
}

TEST_CASE("locality orders") {
    CHECK(is_local(dirac_delta(kPol), 1));
    auto br = bracket_distributions(generator_distribution(1, kPol),
                                    generator_distribution(2, kPol, Axis::W));
    CHECK(is_local(br, 2));
    CHECK(!is_local(br, 1));
    CHECK(!is_local(one_distribution(kPol), 1));
}

TEST_CASE("delta expansion of a generator bracket") {
    auto br = bracket_distributions(generator_distribution(1, kPol),
                                    generator_distribution(2, kPol, Axis::W));
    auto ex = delta_expansion(br, 3);
    CHECK(ex.reconstruction_ok);
    REQUIRE(ex.c.size() == 4);
    auto dL3 = generator_w_derivative(3, 1, kPol);
    CHECK(TruncatedDistribution::equal_on_common_window(ex.c[0], dL3));
    auto L3 = generator_distribution(3, kPol, Axis::W);
    CHECK(TruncatedDistribution::equal_on_common_window(ex.c[1], P_const(3) * L3));
    CHECK(ex.c[2].zero_on_exact_window());
    CHECK(ex.c[3].zero_on_exact_window());
}

TEST_CASE("delta expansion of delta itself") {
    auto ex = delta_expansion(dirac_delta(kPol), 2);
    CHECK(ex.reconstruction_ok);
    CHECK(ex.c[0].at(0, 0) == SymbolCombo::scalar(P_const(1)));
    CHECK(ex.c[1].zero_on_exact_window());

    auto exd = delta_expansion(partial_w(dirac_delta(kPol)), 2);
    CHECK(exd.reconstruction_ok);
    CHECK(exd.c[0].zero_on_exact_window());
    CHECK(exd.c[1].at(0, 0) == SymbolCombo::scalar(P_const(1)));
}

TEST_CASE("delta expansion refuses non-local input") {
    CHECK_THROWS_AS(delta_expansion(one_distribution(kPol), 1), NotLocalError);
}

TEST_CASE("phi operator identities") {
    // The -lam-del variant spends two guard units per exponential term,
    // so give these checks a roomier budget than the default policy.
    TruncationPolicy pol{12, 7};
    for (int a : {-2, 1}) {
        for (int b : {0, 3}) {
            auto br = bracket_distributions(generator_distribution(a, pol),
                                            generator_distribution(b, pol, Axis::W));
            // Phi of d_z equals -lam times Phi.
            auto lhs = phi_lambda(partial_z(br), 3);
            auto rhs = (-P_lam()) * phi_lambda(br, 3);
            CHECK(TruncatedDistribution::equal_on_common_window(lhs, rhs));
            // The -lam-del transform sees the bracket with its variables
            // swapped: it returns the negated reversed lam-product. That
            // is skew symmetry at the distribution level.
            auto swapped = bracket_distributions(generator_distribution(b, pol),
                                                 generator_distribution(a, pol, Axis::W));
            auto alt = phi_minus_lambda_del(br, 3);
            auto neg = (-P_const(1)) * phi_lambda(swapped, 3);
            CHECK(TruncatedDistribution::equal_on_common_window(alt, neg));
        }
    }

    // The delta is symmetric under the swap, so there the two transforms
    // agree outright.
    auto d = dirac_delta(pol);
    CHECK(TruncatedDistribution::equal_on_common_window(phi_lambda(d, 3),
                                                        phi_minus_lambda_del(d, 3)));
}

TEST_CASE("policy validation and guard accounting") {
    CHECK_THROWS_AS(TruncatedDistribution(TruncationPolicy{4, 4}), std::invalid_argument);
    CHECK_THROWS_AS(TruncatedDistribution(TruncationPolicy{3, 5}), std::invalid_argument);

    TruncationPolicy tight{4, 2};
    auto d = dirac_delta(tight);
    auto once = mul_zw_power(d, 1);
    auto twice = mul_zw_power(once, 1);
    CHECK(twice.used() == 2);
    CHECK_THROWS_AS(mul_zw_power(twice, 1), GuardExhausted);

    auto other = dirac_delta(kPol);
    CHECK_THROWS_AS(bracket_distributions(d, other), PolicyMismatch);
}
