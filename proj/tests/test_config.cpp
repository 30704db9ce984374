#include "support.hpp"

#include <layerdiff/errors.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace layerdiff;

namespace {

const char* kCaseB = R"({
  "name": "b",
  "layers": [
    {"left": 0, "right": 0.5, "diffusivity": 1, "initial": 0},
    {"left": 0.5, "right": 1, "diffusivity": 0.1, "gamma": 0.1,
     "initial": {"kind": "polynomial", "coefficients": [0, 0.25]}}
  ],
  "interfaces": [{"kind": "jump", "H": 0.5}],
  "boundary_left": {"aL": 1, "bL": 0, "g": 1},
  "boundary_right": {"aR": 0, "bR": 1, "g": {"kind": "constant", "value": 0}},
  "solver": {"N": 60},
  "times": [0.01, 0.2, 5]
})";

std::string key_path_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.key_path();
    }
    return "<no error>";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    if (pos == std::string::npos) throw std::logic_error("pattern not found: " + from);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST(Config, ParsesCaseB) {
    const auto c = parse_config(kCaseB);
    EXPECT_EQ(c.name, "b");
    EXPECT_EQ(c.problem.breakpoints, (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(c.problem.gamma, (std::vector<double>{1.0, 0.1}));
    EXPECT_EQ(c.problem.contact[0].value(), 0.5);
    EXPECT_EQ(c.solver.N, 60);
    EXPECT_EQ(c.solver.Np, 14);
    EXPECT_EQ(c.fdm.cells_per_layer, 400);
    EXPECT_EQ(c.problem.initial[1](0.9), 0.225);
}

TEST(Config, RoundTripIsExact) {
    for (const auto& info : list_presets()) {
        const auto a = preset(info.name);
        const auto text = to_json(a);
        const auto b = parse_config(text);
        EXPECT_EQ(to_json(b), text) << info.name;
        EXPECT_EQ(b.problem.diffusivity, a.problem.diffusivity) << info.name;
        EXPECT_EQ(b.problem.gamma, a.problem.gamma) << info.name;
        EXPECT_EQ(b.times, a.times) << info.name;
        EXPECT_EQ(b.fdm.dt, a.fdm.dt) << info.name;
    }
}

TEST(Config, MissingAndUnknownKeys) {
    EXPECT_EQ(key_path_of(replace(kCaseB, R"("diffusivity": 0.1, )", "")), "layers[1].diffusivity");
    EXPECT_EQ(key_path_of(replace(kCaseB, R"("aL": 1, )", "")), "boundary_left.aL");
    EXPECT_EQ(key_path_of(replace(kCaseB, R"("name": "b",)", R"("name": "b", "colour": 3,)")), "colour");
    EXPECT_EQ(key_path_of(replace(kCaseB, R"({"N": 60})", R"({"N": 60, "tol": 1})")), "solver.tol");
    EXPECT_EQ(key_path_of(replace(kCaseB, R"("jump", "H": 0.5)", R"("perfect", "theta": 2)")), "interfaces[0].theta");
    EXPECT_EQ(key_path_of(replace(kCaseB, R"(, "H": 0.5)", "")), "interfaces[0].H");
    EXPECT_EQ(key_path_of("{ not json"), "<root>");
}

TEST(Config, InterfaceCountMustMatchLayers) {
    EXPECT_EQ(key_path_of(replace(kCaseB, R"([{"kind": "jump", "H": 0.5}])",
                                  R"([{"kind": "jump", "H": 0.5}, {"kind": "perfect"}])")),
              "interfaces");
}

TEST(Config, FdmSection) {
    const auto c = parse_config(replace(kCaseB, R"("solver")", R"("fdm": {"cells_per_layer": 100, "dt": 0.002}, "solver")"));
    EXPECT_EQ(c.fdm.cells_per_layer, 100);
    EXPECT_EQ(c.fdm.dt, 0.002);
    EXPECT_EQ(key_path_of(replace(kCaseB, R"("solver")", R"("fdm": {"dt": -1}, "solver")")), "fdm.dt");
}

TEST(Config, BadValues) {
    EXPECT_EQ(key_path_of(replace(kCaseB, R"("H": 0.5)", R"("H": "large")")), "interfaces[0].H");
    EXPECT_EQ(key_path_of(replace(kCaseB, "[0.01, 0.2, 5]", "[0.01, -1]")), "times[1]");
    EXPECT_EQ(key_path_of(replace(kCaseB, R"("kind": "jump")", R"("kind": "glue")")), "interfaces[0].kind");
    EXPECT_THROW(parse_config(replace(kCaseB, R"("diffusivity": 1,)", R"("diffusivity": -1,)")), ValidationError);
}

TEST(Config, InfiniteContactRoundTrips) {
    const auto c = parse_config(replace(kCaseB, R"("H": 0.5)", R"("H": "infinite")"));
    EXPECT_TRUE(c.problem.contact[0].is_infinite());
    EXPECT_TRUE(parse_config(to_json(c)).problem.contact[0].is_infinite());
}

TEST(Config, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "layerdiff_config_test.json";
    {
        std::ofstream out(path);
        out << kCaseB;
    }
    EXPECT_EQ(load_config(path).name, "b");
    std::filesystem::remove(path);
    EXPECT_THROW(load_config(path), IoError);
}
