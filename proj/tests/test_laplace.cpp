#include "support.hpp"

#include <layerdiff/errors.hpp>
#include <layerdiff/laplace.hpp>

#include <boost/math/special_functions/erf.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace layerdiff;

TEST(InversionTable, Order14HasSevenPairs) {
    const auto tab = InversionTable::build(14);
    EXPECT_EQ(tab.order(), 14);
    EXPECT_EQ(tab.poles().size(), 7u);
    EXPECT_EQ(tab.residues().size(), 7u);
    for (auto z : tab.poles()) EXPECT_GT(z.imag(), 0.0);
}

TEST(InversionTable, UnsupportedOrders) {
    EXPECT_THROW(InversionTable::build(13), UnsupportedError);
    EXPECT_THROW(InversionTable::build(20), UnsupportedError);
    EXPECT_THROW(InversionTable::build(16, InversionTable::Source::Computed), UnsupportedError);
    try {
        InversionTable::build(13);
    } catch (const UnsupportedError& e) {
        EXPECT_NE(std::string(e.what()).find("12 14 16"), std::string::npos);
    }
}

TEST(InversionTable, SourcesAgree) {
    for (int order : {12, 14}) {
        const auto a = InversionTable::build(order, InversionTable::Source::Tabulated);
        const auto b = InversionTable::build(order, InversionTable::Source::Computed);
        for (double t : {0.1, 1.0, 10.0}) {
            auto F = [](cplx s) { return 1.0 / (s + 1.0); };
            EXPECT_NEAR(a.invert(F, t), b.invert(F, t), 1e-12) << order << " " << t;
        }
    }
}

TEST(Invert, KnownPairs) {
    const auto tab = InversionTable::build(14);
    EXPECT_NEAR(tab.invert([](cplx s) { return 1.0 / s; }, 1.0), 1.0, 1e-11);
    EXPECT_NEAR(tab.invert([](cplx s) { return 1.0 / (s * s); }, 2.0), 2.0, 1e-10);
    EXPECT_NEAR(tab.invert([](cplx s) { return 1.0 / (s + 1.0); }, 1.0), std::exp(-1.0), 1e-11);
}

TEST(Invert, RejectsNonPositiveTime) {
    const auto tab = InversionTable::build(14);
    EXPECT_THROW(tab.invert([](cplx s) { return 1.0 / s; }, 0.0), ValidationError);
    EXPECT_THROW(tab.invert_filtered([](cplx s) { return 1.0 / s; }, 1.0, 1.0, -1.0), ValidationError);
}

TEST(Invert, NonFiniteTransformIsReported) {
    const auto tab = InversionTable::build(14);
    EXPECT_THROW(tab.invert([](cplx) { return cplx(std::nan(""), 0.0); }, 1.0), NumericalError);
}

TEST(Invert, Linearity) {
    const auto tab = InversionTable::build(14);
    auto F = [](cplx s) { return 1.0 / (s + 2.0); };
    auto G = [](cplx s) { return 1.0 / (s * s + 1.0); };
    for (double t : {0.3, 2.0, 7.0}) {
        const double lhs = tab.invert([&](cplx s) { return 3.0 * F(s) - 0.5 * G(s); }, t);
        EXPECT_NEAR(lhs, 3.0 * tab.invert(F, t) - 0.5 * tab.invert(G, t), 1e-12);
    }
}

TEST(Invert, ErrorShrinksWithOrder) {
    double prev = 1.0;
    for (int order : {12, 14, 16}) {
        const auto tab = InversionTable::build(order);
        double err = 0.0;
        for (double t : {0.5, 1.0, 3.0})
            err = std::max(err, std::abs(tab.invert([](cplx s) { return 1.0 / (s + 1.0); }, t) - std::exp(-t)));
        EXPECT_LT(err, prev) << order;
        prev = err;
    }
}

TEST(InvertFiltered, Examples) {
    const auto tab = InversionTable::build(14);
    auto step = [](cplx s) { return 1.0 / s; };
    EXPECT_NEAR(tab.invert_filtered(step, 1.0, 1.0, 1.0), 1.0 - std::exp(-1.0), 1e-10);
    for (double t : {0.2, 1.0, 5.0}) EXPECT_NEAR(tab.invert_filtered(step, 1.0, 0.0, t), t, 1e-10 * t);
    EXPECT_EQ(tab.invert_filtered([](cplx) { return cplx(0.0); }, 1.0, 3.0, 1.0), 0.0);
}

TEST(InvertFiltered, StepResponse) {
    const auto tab = InversionTable::build(14);
    for (double lam : {0.5, 2.0, 10.0, 1000.0}) {
        const double exact = (1.0 - std::exp(-lam * lam)) / (lam * lam);
        EXPECT_NEAR(tab.invert_filtered([](cplx s) { return 1.0 / s; }, 1.0, lam, 1.0), exact, 1e-10 * exact) << lam;
    }
}

TEST(ComplexErf, RealAxis) {
    EXPECT_NEAR(complex_erf(1.0).real(), 0.8427007929497149, 1e-15);
    for (double x : {-3.0, -0.5, 0.01, 0.7, 2.2, 4.5, 9.0})
        EXPECT_NEAR(complex_erf(x).real(), boost::math::erf(x), 1e-15 * std::max(1.0, std::abs(boost::math::erf(x))));
}

TEST(ComplexErf, Symmetries) {
    const cplx z{0.3, 0.7};
    EXPECT_LT(std::abs(complex_erf(-z) + complex_erf(z)), 1e-15);
    const cplx w{1.0, 1.0};
    EXPECT_LT(std::abs(complex_erf(std::conj(w)) - std::conj(complex_erf(w))), 1e-15);
}

TEST(ComplexErf, MatchesPathIntegral) {
    // erf(z) = 2 z / sqrt(pi) int_0^1 exp(-(t z)^2) dt
    for (cplx z : {cplx(0.5, 0.5), cplx(2.0, -1.0), cplx(3.5, 1.5), cplx(-1.2, 2.0), cplx(6.0, 0.3)}) {
        const double re = test::integrate([&](double t) { return (z * std::exp(-(t * z) * (t * z))).real(); }, 0, 1);
        const double im = test::integrate([&](double t) { return (z * std::exp(-(t * z) * (t * z))).imag(); }, 0, 1);
        const cplx ref = 2.0 / std::sqrt(std::numbers::pi) * cplx(re, im);
        EXPECT_LT(std::abs(complex_erf(z) - ref), 1e-12 * std::abs(ref)) << z;
    }
}

TEST(GaussianTransform, MatchesQuadrature) {
    const double mu = 2.15, sigma = 1.0;
    for (cplx s : {cplx(1.0, 0.0), cplx(0.3, 2.0), cplx(4.0, -7.0)}) {
        auto f = [&](double t, bool imag) {
            const cplx v = std::exp(-(t - mu) * (t - mu) / (sigma * sigma)) * std::exp(-s * t);
            return imag ? v.imag() : v.real();
        };
        const double hi = mu + 12 * sigma;
        const cplx q(test::integrate([&](double t) { return f(t, false); }, 0.0, hi),
                     test::integrate([&](double t) { return f(t, true); }, 0.0, hi));
        EXPECT_LT(std::abs(gaussian_transform(s, 1.0, mu, sigma) - q), 1e-9 * std::abs(q)) << s;
    }
}

TEST(GaussianTransform, ZeroFrequencyAndZeroPeak) {
    const double mu = 2.15, sigma = 1.0;
    const double total = sigma * std::sqrt(std::numbers::pi) / 2.0 * (1.0 + std::erf(mu / sigma));
    EXPECT_NEAR(gaussian_transform(0.0, 1.0, mu, sigma).real(), total, 1e-14);
    EXPECT_EQ(gaussian_transform({1.0, 1.0}, 0.0, mu, sigma), cplx(0.0));
}

TEST(GaussianTransform, OverflowIsReported) {
    EXPECT_THROW(gaussian_transform({-60.0, 0.0}, 1.0, 2.15, 1.0), NumericalError);
}
