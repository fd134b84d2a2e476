#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <continued_roots/continued_root.hpp>
#include <continued_roots/corpus.hpp>

#include "oracles.hpp"

namespace cr = continued_roots;
using series = cr::truncated_series<double>;

namespace {

cr::error_kind kind_of(auto&& fn)
{
    try {
        fn();
    } catch (const cr::error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected continued_roots::error";
    return cr::error_kind::internal;
}

} // namespace

TEST(ExponentAlgebra, PowerFromExponent)
{
    EXPECT_NEAR(cr::exponent_to_power(2.0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(cr::exponent_to_power(2.0 / 3.0), 0.4, 1e-15);
    EXPECT_EQ(cr::exponent_to_power(0.0), 0.0);
    EXPECT_EQ(kind_of([] { cr::exponent_to_power(-0.5); }), cr::error_kind::domain);
    EXPECT_EQ(kind_of([] { cr::exponent_to_power(-3.0); }), cr::error_kind::domain);
}

TEST(ExponentAlgebra, ExponentFromPower)
{
    EXPECT_NEAR(cr::power_to_exponent(0.5), 1.0, 1e-15);
    EXPECT_EQ(cr::power_to_exponent(0.0), 0.0);
    EXPECT_NEAR(cr::power_to_exponent(-1.0 / 3.0), -0.25, 1e-15);
    EXPECT_EQ(kind_of([] { cr::power_to_exponent(1.0); }), cr::error_kind::domain);
    EXPECT_EQ(kind_of([] { cr::power_to_exponent(-1.0); }), cr::error_kind::domain);
}

TEST(ExponentAlgebra, FiniteOrderExponent)
{
    EXPECT_NEAR(cr::finite_order_exponent(2.0 / 3.0, 2), 10.0 / 9.0, 1e-15);
    EXPECT_NEAR(cr::finite_order_exponent(2.0 / 3.0, 200), 2.0, 1e-12);
    EXPECT_EQ(cr::finite_order_exponent(-1.0, 2), 0.0);
    EXPECT_EQ(cr::finite_order_exponent(-1.0, 3), -1.0);
    EXPECT_THROW(cr::finite_order_exponent(1.0, 3), cr::error);
    EXPECT_THROW(cr::finite_order_exponent(0.5, 0), cr::error);
}

TEST(ContinuedRoot, RejectsEmptyParameters)
{
    EXPECT_EQ(kind_of([] { cr::continued_root(0.5, {}); }), cr::error_kind::invalid_input);
}

TEST(ContinuedRoot, RealnessFlag)
{
    EXPECT_TRUE(cr::continued_root(0.5, {1.0, 0.0, 2.0}).is_real_valued());
    EXPECT_FALSE(cr::continued_root(0.5, {1.0, -1e-9}).is_real_valued());
}

TEST(Expand, FirstAndSecondOrderClosedForms)
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> d(-0.9, 0.9);
    std::uniform_real_distribution<double> a(0.1, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double s = d(rng);
        const double A1 = a(rng);
        const double A2 = a(rng);
        const auto e1 = cr::expand(cr::continued_root(s, {A1}), 1);
        EXPECT_EQ(e1[0], 1.0);
        EXPECT_NEAR(e1[1], s * A1, 1e-14);

        const auto e2 = cr::expand(cr::continued_root(s, {A1, A2}), 2);
        EXPECT_NEAR(e2[1], s * A1, 1e-14);
        EXPECT_NEAR(e2[2], s * A1 / 2.0 * (s * A1 - A1 + 2.0 * s * A2), 1e-13);
    }
}

TEST(Expand, HigherParametersDoNotTouchLowerOrders)
{
    for (double A2 : {-3.0, 0.0, 0.5, 17.0}) {
        const auto e = cr::expand(cr::continued_root(2.0 / 3.0, {0.375, A2}), 2);
        EXPECT_NEAR(e[1], 0.25, 1e-15);
    }
}

TEST(Fit, NlsClosedForms)
{
    const auto approx = cr::fit(series::from({1.0, 1.0, -0.125}), 0.4);
    ASSERT_EQ(approx.order(), 2u);
    EXPECT_NEAR(approx.params()[0], 2.5, 1e-14);
    EXPECT_NEAR(approx.params()[1], 1.5625, 1e-13);
}

TEST(Fit, PolaronClosedForms)
{
    const double a1 = 1.591962e-2;
    const double a2 = 0.806070e-3;
    const double s = 0.5;
    const auto approx = cr::fit(series::from({1.0, a1, a2}), s);
    EXPECT_NEAR(approx.params()[0], a1 / s, 1e-15);
    const double A2 = ((1.0 - s) * a1 * a1 + 2.0 * s * a2) / (2.0 * s * s * a1);
    EXPECT_NEAR(approx.params()[1], A2, 1e-12);
    EXPECT_NEAR(approx.params()[1], 0.117187, 1e-6);
    EXPECT_NEAR(cr::amplitude(approx).amplitude, 0.1044, 5e-5);
}

TEST(Fit, StringRoundTripToOrder13)
{
    const auto a = cr::string_coefficients(13);
    const auto approx = cr::fit(series::from(a), 2.0 / 3.0);
    const auto back = cr::expand(approx, 13);
    for (std::size_t n = 0; n <= 13; ++n) {
        if (a[n] == 0.0) {
            EXPECT_NEAR(back[n], 0.0, 1e-10 * std::abs(a[n - 1]));
        } else {
            EXPECT_LE(oracle::rel_diff(back[n], a[n]), 1e-10) << "n = " << n;
        }
    }
}

TEST(Fit, ErrorPaths)
{
    EXPECT_EQ(kind_of([] { cr::fit(series::from({1.0, 0.0, 0.5}), 0.5); }), cr::error_kind::degenerate_input);
    EXPECT_EQ(kind_of([] { cr::fit(series::from({1.0, 1.0}), 0.0); }), cr::error_kind::domain);
    EXPECT_EQ(kind_of([] { cr::fit(series::from({2.0, 1.0}), 0.5); }), cr::error_kind::invalid_input);
    EXPECT_EQ(kind_of([] { cr::fit(series::from({1.0}), 0.5); }), cr::error_kind::invalid_input);
}

TEST(Fit, VanishingSensitivityNamesOrder)
{
    // a_2 = (s − 1)a_1²/(2s) forces A_2 = 0, which cuts the chain at order 3.
    const double s = 0.5;
    const double a1 = 1.0;
    const double a2 = (s - 1.0) * a1 * a1 / (2.0 * s);
    try {
        cr::fit(series::from({1.0, a1, a2, 0.3}), s);
        FAIL() << "expected vanishing sensitivity";
    } catch (const cr::error& e) {
        EXPECT_EQ(e.kind(), cr::error_kind::vanishing_sensitivity);
        ASSERT_TRUE(e.depth().has_value());
        EXPECT_EQ(*e.depth(), 3u);
    }
}

TEST(Fit, NegativeParametersAreReturned)
{
    // A_2 < 0 when 2 s a_2 < (s − 1) a_1².
    const auto approx = cr::fit(series::from({1.0, 1.0, -1.0}), 0.5);
    EXPECT_LT(approx.params()[1], 0.0);
    EXPECT_FALSE(approx.is_real_valued());
}

TEST(FitProperty, RoundTripAffineAndInsulated)
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> mag(0.05, 0.95);
    std::bernoulli_distribution neg(0.5);
    for (int trial = 0; trial < 250; ++trial) {
        const double s = neg(rng) ? -mag(rng) : mag(rng);
        const std::size_t k = 1 + trial % 8;
        const auto a = oracle::realizable_series(rng, s, k);
        const auto approx = cr::fit(series::from(a), s);
        const auto back = cr::expand(approx, k);
        for (std::size_t n = 0; n <= k; ++n) {
            EXPECT_LE(oracle::rel_diff(back[n], a[n]), 1e-10) << "trial " << trial << " n " << n;
        }

        // Perturb every A_m above n; coefficient n must not move.
        std::vector<double> params(approx.params().begin(), approx.params().end());
        for (std::size_t n = 1; n < k; ++n) {
            auto shaken = params;
            for (std::size_t m = n; m < k; ++m) {
                shaken[m] += 0.37 * static_cast<double>(m + 1);
            }
            const auto e = cr::expand(cr::continued_root(s, shaken), k);
            EXPECT_EQ(e[n], back[n]);
        }

        // c_n(A_n) affine in A_n.
        const std::size_t n = k;
        auto c_at = [&](double v) {
            auto p = params;
            p[n - 1] = v;
            return cr::expand(cr::continued_root(s, p), n)[n];
        };
        const double c0 = c_at(0.0), c1 = c_at(1.0), c2 = c_at(2.0);
        EXPECT_LE(oracle::affine_defect(c0, c1, c2), 1e-10);
    }
}

TEST(Evaluate, AtZeroIsOne)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> a(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        std::vector<double> p(1 + i % 6);
        for (auto& v : p) {
            v = a(rng);
        }
        EXPECT_EQ(cr::evaluate(cr::continued_root(a(rng) / 2.1, p), 0.0), 1.0);
    }
}

TEST(Evaluate, HandValues)
{
    EXPECT_NEAR(cr::evaluate(cr::continued_root(-1.0, {1.0, 1.0}), 1.0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(cr::evaluate(cr::continued_root(0.5, {3.0}), 1.0), 2.0, 1e-15);
}

TEST(Evaluate, NlsLargeArgumentApproachesAmplitude)
{
    const cr::continued_root approx(0.4, {2.5, 1.5625});
    const double x = 1e12;
    const double beta2 = 0.4 + 0.16;
    EXPECT_NEAR(cr::evaluate(approx, x) / std::pow(x, beta2), 1.549484, 1e-5);
}

TEST(Evaluate, ErrorPaths)
{
    EXPECT_EQ(kind_of([] { cr::evaluate(cr::continued_root(0.5, {1.0}), -1.0); }), cr::error_kind::domain);
    try {
        cr::evaluate(cr::continued_root(0.5, {1.0, -1.0}), 2.0);
        FAIL();
    } catch (const cr::error& e) {
        EXPECT_EQ(e.kind(), cr::error_kind::complex_breakdown);
        EXPECT_EQ(*e.depth(), 2u);
    }
    try {
        cr::evaluate(cr::continued_root(0.5, {-5.0, 1.0}), 1.0);
        FAIL();
    } catch (const cr::error& e) {
        EXPECT_EQ(e.kind(), cr::error_kind::complex_breakdown);
        EXPECT_EQ(*e.depth(), 1u);
    }
    // Integer powers never break down.
    EXPECT_NO_THROW(cr::evaluate(cr::continued_root(-1.0, {1.0, -3.0}), 2.0));
}

TEST(Amplitude, Values)
{
    const auto r = cr::amplitude(cr::continued_root(0.4, {2.5, 1.5625}));
    EXPECT_NEAR(r.amplitude, std::pow(2.5, 0.4) * std::pow(1.5625, 0.16), 1e-14);
    EXPECT_NEAR(r.amplitude, 1.549484, 1e-6);
    EXPECT_NEAR(r.exponent, 0.56, 1e-15);
    EXPECT_EQ(r.order, 2u);
    EXPECT_NEAR(cr::amplitude(cr::continued_root(0.3, {1.0})).amplitude, 1.0, 1e-15);
    EXPECT_EQ(kind_of([] { cr::amplitude(cr::continued_root(0.3, {1.0, 0.0})); }), cr::error_kind::realness);
}

TEST(Asymptote, ClosedFormAndLimit)
{
    const cr::continued_root approx(0.4, {2.5, 1.5625});
    const double B = cr::amplitude(approx).amplitude;
    EXPECT_NEAR(cr::asymptote(approx, 1.0), B, 1e-15);
    EXPECT_NEAR(cr::asymptote(approx, 1e8), B * std::pow(1e8, 0.56), 1e-9 * B * std::pow(1e8, 0.56));
    EXPECT_NEAR(cr::evaluate(approx, 1e8) / cr::asymptote(approx, 1e8), 1.0, 1e-3);
    EXPECT_THROW(cr::asymptote(approx, 0.0), cr::error);
}

TEST(AsymptoteProperty, RatioTendsToOne)
{
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> a(0.2, 3.0);
    std::uniform_real_distribution<double> sd(0.2, 0.8);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> p(1 + i % 6);
        for (auto& v : p) {
            v = a(rng);
        }
        const cr::continued_root approx(sd(rng), p);
        EXPECT_NEAR(cr::evaluate(approx, 1e8) / cr::asymptote(approx, 1e8), 1.0, 1e-3);
    }
}

TEST(ToRational, LowOrders)
{
    const auto r1 = cr::to_rational(cr::continued_root(-1.0, {0.7}));
    EXPECT_EQ(r1.numerator, (std::vector<double>{1.0}));
    EXPECT_EQ(r1.denominator, (std::vector<double>{1.0, 0.7}));

    const auto r2 = cr::to_rational(cr::continued_root(-1.0, {0.7, 1.3}));
    EXPECT_EQ(r2.numerator, (std::vector<double>{1.0, 1.3}));
    ASSERT_EQ(r2.denominator.size(), 2u);
    EXPECT_DOUBLE_EQ(r2.denominator[1], 2.0);
    EXPECT_EQ(kind_of([] { cr::to_rational(cr::continued_root(-0.9, {1.0})); }), cr::error_kind::domain);
}

TEST(ToRationalProperty, MatchesNestedEvaluation)
{
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> a(0.05, 3.0);
    for (std::size_t k = 1; k <= 8; ++k) {
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> p(k);
            for (auto& v : p) {
                v = a(rng);
            }
            const cr::continued_root approx(-1.0, p);
            const auto r = cr::to_rational(approx);
            EXPECT_EQ(r.numerator_degree(), k / 2);
            EXPECT_EQ(r.denominator_degree(), (k + 1) / 2);
            for (int i = 0; i <= 20; ++i) {
                const double x = 0.5 * i;
                EXPECT_LE(oracle::rel_diff(r.evaluate(x), cr::evaluate(approx, x)), 1e-10);
            }
        }
    }
}

TEST(BestRealOrder, FilterSemantics)
{
    std::vector<cr::continued_root> fits{{0.5, {1.0, 1.0}}, {0.5, {1.0, 1.0, 1.0}}, {0.5, {1.0, 1.0, 1.0, 1.0}}};
    EXPECT_EQ(cr::best_real_order(fits).order(), 4u);
    fits.push_back({0.5, {1.0, 1.0, 1.0, 1.0, -0.1}});
    EXPECT_EQ(cr::best_real_order(fits).order(), 4u);

    std::vector<cr::continued_root> single{{0.5, {0.0}}};
    EXPECT_EQ(cr::best_real_order(single).order(), 1u);

    std::vector<cr::continued_root> none{{0.5, {-1.0}}};
    EXPECT_EQ(kind_of([&] { cr::best_real_order(none); }), cr::error_kind::no_real_approximant);
    EXPECT_EQ(kind_of([] { cr::best_real_order({}); }), cr::error_kind::invalid_input);

    std::vector<cr::continued_root> unordered{{0.5, {1.0, 1.0}}, {0.5, {1.0}}};
    EXPECT_EQ(kind_of([&] { cr::best_real_order(unordered); }), cr::error_kind::invalid_input);
}
