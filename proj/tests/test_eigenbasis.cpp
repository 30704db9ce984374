#include "support.hpp"

#include <layerdiff/eigenbasis.hpp>
#include <layerdiff/errors.hpp>

#include <gtest/gtest.h>

#include <numbers>
#include <sstream>

using namespace layerdiff;
using std::numbers::pi;

TEST(EigenBasis, NeumannNeumannMiddleLayer) {
    const auto lb = build_layer_basis(2, 0.5, 0.5, 0.0, 1.0, 0.0, 1.0, 3);
    EXPECT_EQ(lb.lambda[0], 0.0);
    EXPECT_NEAR(lb.lambda[1], 2 * pi, 1e-13);
    EXPECT_NEAR(lb.lambda[2], 4 * pi, 1e-13);
    for (int n = 0; n < 3; ++n) {
        EXPECT_NEAR(lb.derivative(n, 0.5), 0.0, 1e-12);
        EXPECT_NEAR(lb.derivative(n, 1.0), 0.0, 1e-12);
    }
    for (double x : {0.5, 0.7, 1.0}) EXPECT_NEAR(lb.value(0, x), 1.0 / std::sqrt(0.5), 1e-15);
}

TEST(EigenBasis, DirichletNeumannFirstLayer) {
    const auto lb = build_layer_basis(1, 0.0, 0.5, 1.0, 0.0, 0.0, 1.0, 4);
    EXPECT_EQ(lb.left_end, EndCondition::Dirichlet);
    EXPECT_NEAR(lb.lambda[0], pi, 1e-14);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(lb.lambda[static_cast<std::size_t>(n)], (2 * n + 1) * pi, 1e-12);
    for (double x : {0.1, 0.25, 0.4}) EXPECT_NEAR(std::abs(lb.value(0, x)), 2.0 * std::sin(pi * x), 1e-14);
    EXPECT_EQ(lb.value(2, 0.0), 0.0);
}

TEST(EigenBasis, NeumannFirstLayerIsCosine) {
    const auto lb = build_layer_basis(1, 0.0, 2.0, 0.0, 1.0, 0.0, 1.0, 4);
    for (int n = 0; n < 4; ++n) EXPECT_NEAR(lb.lambda[static_cast<std::size_t>(n)], n * pi / 2.0, 1e-13);
}

TEST(EigenBasis, RobinBoundaryResidual) {
    const double aL = 2.0, bL = 0.3, x0 = 1.0;
    const auto lb = build_layer_basis(1, x0, 0.8, aL, bL, 0.0, 1.0, 30);
    EXPECT_EQ(lb.left_end, EndCondition::Robin);
    for (int n = 0; n < 30; ++n) {
        const auto k = static_cast<std::size_t>(n);
        EXPECT_LT(std::abs(aL * lb.value(n, x0) - bL * lb.derivative(n, x0)), 1e-12 * std::max(1.0, lb.lambda[k]));
        if (lb.lambda[k] > 20.0) continue;
        // Fourth-order central difference of the smooth continuation past the end.
        auto phi = [&](double x) { return std::sin(lb.lambda[k] * (x - x0) + lb.alpha[k]) / lb.norm[k]; };
        const double h = 1e-4;
        const double d = (-phi(x0 + 2 * h) + 8 * phi(x0 + h) - 8 * phi(x0 - h) + phi(x0 - 2 * h)) / (12 * h);
        EXPECT_LT(std::abs(aL * lb.value(n, x0) - bL * d), 1e-10) << n;
    }
}

TEST(EigenBasis, UnitNormByQuadrature) {
    auto P = test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    P.left = {2.0, 0.5, BoundaryFunction::constant(1.0)};
    P.right = {1.0, 3.0, BoundaryFunction::constant(0.0)};
    const auto B = build_basis(validate(P), 12);
    for (int i = 1; i <= 2; ++i)
        for (int n = 0; n < 12; ++n) {
            const auto& lb = B.layer(i);
            const double q = test::integrate([&](double x) { return std::pow(lb.value(n, x), 2); }, lb.left,
                                             lb.left + lb.width);
            EXPECT_NEAR(q, 1.0, 1e-12) << i << "," << n;
        }
}

TEST(EigenBasis, SecondDifferenceMatchesEigenvalue) {
    const auto lb = build_layer_basis(1, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 6);
    const double h = 1e-4, x = 0.37;
    for (int n = 0; n < 6; ++n) {
        const double lam = lb.lambda[static_cast<std::size_t>(n)];
        const double d2 = (lb.value(n, x + h) - 2 * lb.value(n, x) + lb.value(n, x - h)) / (h * h);
        EXPECT_NEAR(d2, -lam * lam * lb.value(n, x), 1e-5 * std::max(1.0, lam * lam));
    }
}

TEST(EigenBasis, RobinEigenvaluesApproachNeumannSpacing) {
    const double width = 0.5;
    const auto lb = build_layer_basis(1, 0.0, width, 1.5, 0.4, 0.0, 1.0, 80);
    double prev = 1e300;
    for (int n = 10; n < 80; ++n) {
        const double gap = std::abs(lb.lambda[static_cast<std::size_t>(n)] - n * pi / width);
        EXPECT_LT(gap, prev) << n;
        prev = gap;
    }
    for (int n = 5; n < 80; ++n) {
        const double r = lb.lambda[static_cast<std::size_t>(n)] / n / (pi / width);
        EXPECT_GE(r, 0.5);
        EXPECT_LE(r, 1.5);
    }
}

TEST(EigenBasis, EigenvaluesStrictlyIncrease) {
    auto P = test::two_layer_spec({InterfaceKind::Partition, std::nullopt, 1.2});
    P.right = {0.7, 0.2, BoundaryFunction::constant(0.0)};
    const auto B = build_basis(validate(P), 50);
    for (int i = 1; i <= 2; ++i)
        for (int n = 1; n < 50; ++n) EXPECT_GT(B.lambda(i, n), B.lambda(i, n - 1));
    EXPECT_GT(B.lambda(2, 0), 0.0);
}

TEST(EigenBasis, Errors) {
    const auto p = validate(test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt}));
    EXPECT_THROW(build_basis(p, 0), ValidationError);
    const auto B = build_basis(p, 4);
    EXPECT_THROW(B.eval(1, 0, 0.75), Error);
    EXPECT_NO_THROW(B.eval(2, 0, 0.75));
}

TEST(EigenBasis, CsvDump) {
    const auto p = validate(test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt}));
    std::ostringstream os;
    build_basis(p, 3).write_csv(os);
    const auto s = os.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "layer,n,lambda,norm");
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 7);
}
