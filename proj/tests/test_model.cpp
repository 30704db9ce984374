#include "support.hpp"

#include <layerdiff/errors.hpp>
#include <layerdiff/problem.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace layerdiff;

namespace {

bool has_violation(const ValidationError& e, const std::string& text) {
    for (const auto& v : e.violations())
        if (v.constraint.find(text) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST(NormalizeInterface, ImplicitUsesDiffusivities) {
    auto g = normalize_interface({InterfaceKind::Implicit, std::nullopt, std::nullopt}, 1.0, 0.1, 5.0, 5.0);
    EXPECT_EQ(g.gamma_left, 1.0);
    EXPECT_EQ(g.gamma_right, 0.1);
    EXPECT_TRUE(g.H.is_infinite());
    EXPECT_EQ(g.theta, 1.0);
}

TEST(NormalizeInterface, PerfectContactKeepsGamma) {
    auto g = normalize_interface({InterfaceKind::PerfectContact, std::nullopt, std::nullopt}, 1.0, 0.1, 2.0, 2.0);
    EXPECT_EQ(g.gamma_left, 2.0);
    EXPECT_EQ(g.gamma_right, 2.0);
    EXPECT_TRUE(g.H.is_infinite());
    EXPECT_EQ(g.theta, 1.0);
}

TEST(NormalizeInterface, JumpAndPartition) {
    auto j = normalize_interface({InterfaceKind::Jump, 0.5, std::nullopt}, 1.0, 0.1, 1.0, 0.1);
    EXPECT_FALSE(j.H.is_infinite());
    EXPECT_EQ(j.H.value(), 0.5);
    EXPECT_EQ(j.theta, 1.0);
    auto p = normalize_interface({InterfaceKind::Partition, std::nullopt, 1.2}, 1.0, 0.1, 1.0, 0.1);
    EXPECT_TRUE(p.H.is_infinite());
    EXPECT_EQ(p.theta, 1.2);
}

TEST(NormalizeInterface, GeneralIsIdempotent) {
    for (auto d : {InterfaceDescription{InterfaceKind::Jump, 0.5, std::nullopt},
                   InterfaceDescription{InterfaceKind::Partition, std::nullopt, 1.2},
                   InterfaceDescription{InterfaceKind::General, 3.0, 0.7}}) {
        auto once = normalize_interface(d, 1.0, 0.1, 1.5, 0.3);
        InterfaceDescription back{InterfaceKind::General, once.H.is_infinite() ? std::nullopt : std::optional(once.H.value()),
                                  once.theta};
        EXPECT_EQ(normalize_interface(back, 1.0, 0.1, once.gamma_left, once.gamma_right), once);
    }
}

TEST(NormalizeInterface, RejectsNonPositive) {
    try {
        normalize_interface({InterfaceKind::Jump, -1.0, std::nullopt}, 1.0, 1.0, 1.0, 1.0, 3);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_TRUE(has_violation(e, "H > 0 fails"));
        EXPECT_EQ(e.violations().front().index, 3);
    }
    EXPECT_THROW(normalize_interface({InterfaceKind::Partition, std::nullopt, 0.0}, 1.0, 1.0, 1.0, 1.0), ValidationError);
}

TEST(Validate, CaseAIsValid) {
    auto P = test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    EXPECT_TRUE(check(P).empty());
    auto p = validate(P);
    EXPECT_EQ(p.layers(), 2);
    EXPECT_EQ(p.l(1), 0.5);
}

TEST(Validate, DegenerateLayer) {
    auto P = test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    P.breakpoints = {0.0, 0.5, 0.5};
    try {
        validate(P);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_TRUE(has_violation(e, "l_1 < l_2 fails"));
    }
}

TEST(Validate, ForbiddenBoundaryCoefficients) {
    auto P = test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    P.left.a = 0.0;
    P.left.b = 0.0;
    try {
        validate(P);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_TRUE(has_violation(e, "a_L + b_L > 0 fails"));
    }
}

TEST(Validate, ReportsEveryViolation) {
    ProblemSpec P;
    EXPECT_FALSE(check(P).empty());
    auto Q = test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    Q.diffusivity[1] = -1.0;
    Q.partition[0] = 0.0;
    EXPECT_GE(check(Q).size(), 2u);
}

TEST(ReactionWrap, BrainPresetBecomesNoFluxDiffusion) {
    const auto cfg = preset("brain-tumour");
    ReactionDiffusionSpec raw{cfg.problem, std::vector<double>(3, 1.0)};
    const auto w = reaction_substitution_wrap(raw);
    EXPECT_EQ(w.problem.left.a, 0.0);
    EXPECT_EQ(w.problem.right.a, 0.0);
    EXPECT_EQ(w.problem.left.b, 1.0);
    EXPECT_EQ(w.problem.right.b, 1.0);
    for (double t : {0.0, 0.5, 4.0}) {
        EXPECT_EQ(w.problem.left.g(t), 0.0);
        EXPECT_EQ(w.problem.right.g(t), 0.0);
    }
    EXPECT_EQ(w.problem.diffusivity, (std::vector<double>{0.2, 1.0, 0.2}));
    EXPECT_DOUBLE_EQ(w.scale(2.0), std::exp(2.0));
    EXPECT_EQ(w.scale(0.0), 1.0);
}

TEST(ReactionWrap, ZeroRateIsIdentity) {
    auto P = test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    const auto w = reaction_substitution_wrap({P, {0.0, 0.0}});
    EXPECT_EQ(w.scale(3.0), 1.0);
    EXPECT_EQ(w.problem.left.g(0.7), 1.0);
}

TEST(ReactionWrap, UnsupportedRates) {
    auto P = test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    EXPECT_THROW(reaction_substitution_wrap({P, {2.0, 2.0}}), UnsupportedError);
    EXPECT_THROW(reaction_substitution_wrap({P, {1.0, 0.5}}), UnsupportedError);
}

TEST(ReactionWrap, WrappedEqualsUnwrappedAtTimeZero) {
    const auto cfg = preset("brain-tumour");
    const auto wrapped = cfg.diffusion_problem();
    const auto raw = validate(cfg.problem);
    const auto g = Grid::uniform(wrapped, 9, {0.0});
    const auto a = evaluate(wrapped, {}, g);
    const auto b = evaluate(raw, {}, g);
    EXPECT_EQ(a.u, b.u);
    EXPECT_EQ(cfg.output_scale(0.0), 1.0);
}

TEST(ContactTransfer, LargeFiniteHApproachesInfinite) {
    auto P = test::two_layer_spec({InterfaceKind::PerfectContact, std::nullopt, std::nullopt});
    const auto ref = evaluate(validate(P), {100, 14}, Grid::uniform(validate(P), 11, {0.2}));
    double prev = 1.0;
    for (double H : {1e2, 1e4, 1e6}) {
        auto Q = test::two_layer_spec({InterfaceKind::Jump, H, std::nullopt});
        const auto f = evaluate(validate(Q), {100, 14}, Grid::uniform(validate(Q), 11, {0.2}));
        const double e = relative_error(ref, f)[0];
        EXPECT_LT(e, prev);
        prev = e;
    }
    EXPECT_LT(prev, 1e-6);
}

TEST(BoundaryFunction, TransformsMatchDefinitions) {
    const cplx s{0.7, 1.3};
    EXPECT_LT(std::abs(BoundaryFunction::constant(2.0).laplace(s) - 2.0 / s), 1e-15);
    EXPECT_LT(std::abs(BoundaryFunction::linear(1.0, 3.0).laplace(s) - (1.0 / s + 3.0 / (s * s))), 1e-14);
    EXPECT_LT(std::abs(BoundaryFunction::exp_rise(2.0, 0.5).laplace(s) - 2.0 * (1.0 / s - 1.0 / (s + 0.5))), 1e-14);
    EXPECT_DOUBLE_EQ(BoundaryFunction::gaussian(1.0, 2.15, 1.0)(2.15), 1.0);
    EXPECT_TRUE(BoundaryFunction::constant(1.0).constant_in_time());
    EXPECT_FALSE(BoundaryFunction::gaussian(1.0, 2.15, 1.0).constant_in_time());
}

TEST(InitialCondition, Kinds) {
    EXPECT_EQ(InitialCondition::polynomial({1.0, 2.0, 3.0})(2.0), 17.0);
    const auto d = InitialCondition::dirac_pulse(1.0, 0.1);
    EXPECT_NEAR(test::integrate([&](double x) { return d(x); }, 0.0, 2.0), 1.0, 1e-13);
    EXPECT_TRUE(InitialCondition::constant(3.0).is_constant());
}
