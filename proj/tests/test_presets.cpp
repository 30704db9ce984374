#include "support.hpp"

#include <layerdiff/errors.hpp>

#include <gtest/gtest.h>

using namespace layerdiff;

TEST(Presets, ListAndLookup) {
    const auto all = list_presets();
    EXPECT_EQ(all.size(), 9u);
    for (const auto& p : all) EXPECT_NO_THROW(preset(p.name).diffusion_problem()) << p.name;
    try {
        preset("case-z");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key_path(), "preset");
        EXPECT_NE(std::string(e.what()).find("case-a"), std::string::npos);
    }
}

TEST(Presets, TwoLayerCases) {
    for (const char* name : {"case-a", "case-b", "case-c", "case-d"}) {
        const auto c = preset(name);
        EXPECT_EQ(c.problem.breakpoints, (std::vector<double>{0.0, 0.5, 1.0})) << name;
        EXPECT_EQ(c.problem.diffusivity, (std::vector<double>{1.0, 0.1})) << name;
        EXPECT_EQ(c.problem.left.a, 1.0);
        EXPECT_EQ(c.problem.left.g(0.3), 1.0);
        EXPECT_EQ(c.problem.right.a, 0.0);
        EXPECT_EQ(c.problem.right.b, 1.0);
        EXPECT_EQ(c.times, (std::vector<double>{0.01, 0.2, 5.0}));
    }
    EXPECT_EQ(preset("case-a").problem.gamma, (std::vector<double>{1.0, 0.1}));
    EXPECT_EQ(preset("case-b").problem.contact[0].value(), 0.5);
    EXPECT_EQ(preset("case-c").problem.partition[0], 1.2);
    EXPECT_EQ(preset("case-d").problem.gamma, (std::vector<double>{2.0, 2.0}));
}

TEST(Presets, EightLayer) {
    const auto p = preset("eight-layer").diffusion_problem();
    EXPECT_EQ(p.layers(), 8);
    for (int i = 1; i <= 8; ++i) {
        EXPECT_DOUBLE_EQ(p.width(i), 0.125);
        EXPECT_EQ(p.D(i), i % 2 ? 1.0 : 0.1);
    }
}

TEST(Presets, Contaminant) {
    const auto c = preset("liu-contaminant");
    const auto& P = c.problem;
    EXPECT_EQ(P.breakpoints, (std::vector<double>{0.0, 0.05, 0.2}));
    EXPECT_DOUBLE_EQ(P.diffusivity[0], 1.6e-10 * kSecondsPerYear / 42.42);
    EXPECT_DOUBLE_EQ(P.diffusivity[1], 2.13e-10 * kSecondsPerYear / 1.67);
    EXPECT_DOUBLE_EQ(P.gamma[0], 0.54 * 1.6e-10 * kSecondsPerYear);
    EXPECT_EQ(P.left.g.kind(), BoundaryFunction::Kind::Gaussian);
    EXPECT_EQ(P.left.g.parameters(), (std::vector<double>{1.0, 2.15, 1.0}));
    EXPECT_DOUBLE_EQ(P.left.g(2.15), 1.0);
    EXPECT_EQ(P.right.a, 0.0);
    EXPECT_EQ(c.solver.Np, 16);
    ASSERT_TRUE(c.postprocess.has_value());
    EXPECT_DOUBLE_EQ(c.postprocess->factor[0], 0.54 * 42.42 / 1.4);
    EXPECT_DOUBLE_EQ(c.postprocess->factor[1], 0.54 * 1.67 / 1.4);
}

TEST(Presets, HeatComposite) {
    const auto& P = preset("heat-composite").problem;
    EXPECT_EQ(P.breakpoints, (std::vector<double>{0.0, 2.0, 4.0, 6.0}));
    EXPECT_EQ(P.gamma, (std::vector<double>{297.64, 1741.18, 565.51}));
    EXPECT_DOUBLE_EQ(P.diffusivity[1], 1741.18 / (2.71 * 0.181));
    EXPECT_EQ(P.left.g(0.0), 400.0);
    EXPECT_EQ(P.right.g(0.0), 0.0);
}

TEST(Presets, Analyte) {
    const auto& P = preset("trefry-analyte").problem;
    EXPECT_EQ(P.diffusivity, (std::vector<double>{5.0, 0.05}));
    EXPECT_EQ(P.partition[0], 2.0);
    EXPECT_EQ(P.initial[0](0.5), 1.0);
    EXPECT_EQ(P.initial[1](1.5), 0.0);
    EXPECT_EQ(P.left.a, 0.0);
    EXPECT_EQ(P.right.b, 0.0);
}

TEST(Presets, Tumour) {
    const auto c = preset("brain-tumour");
    const auto& P = c.problem;
    EXPECT_EQ(P.breakpoints, (std::vector<double>{-5.0, -1.0, 1.0, 5.0}));
    EXPECT_EQ(P.diffusivity, (std::vector<double>{0.2, 1.0, 0.2}));
    EXPECT_EQ(P.initial[0].center(), -4.0);
    EXPECT_EQ(P.initial[2].center(), 2.0);
    EXPECT_EQ(P.initial[0].width(), 0.1);
    EXPECT_EQ(c.reaction_rate, 1.0);
    EXPECT_EQ(c.times.size(), 20u);
    EXPECT_DOUBLE_EQ(c.times.back(), 4.0);
    EXPECT_DOUBLE_EQ(c.output_scale(1.0), std::exp(1.0));
}
