#include "cli.hpp"

#include <json.hpp>
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using layerdiff::tools::run_cli;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) v.push_back(l);
    return v;
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("layerdiff_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path write(const std::string& name, const std::string& text) const {
        const auto p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }
    fs::path dir_;
};

const char* kNeumannFlux = R"({
  "layers": [{"left": 0, "right": 1, "diffusivity": 1, "initial": 0}],
  "boundary_left": {"aL": 0, "bL": 1, "g": 1},
  "boundary_right": {"aR": 0, "bR": 1, "g": 0},
  "times": [0.5]
})";

}  // namespace

TEST(Cli, HelpAndUsage) {
    EXPECT_EQ(cli({"--help"}).code, 0);
    EXPECT_EQ(cli({"bogus"}).code, 2);
    EXPECT_EQ(cli({"solve", "--preset", "case-a", "--inversion-order", "13"}).code, 2);
    EXPECT_EQ(cli({"solve", "--preset", "case-a", "--config", "x.json"}).code, 2);
    const auto r = cli({"solve"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--preset"), std::string::npos);
}

TEST(Cli, PresetList) {
    const auto r = cli({"preset-dump", "--list"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("case-a"), std::string::npos);
    EXPECT_NE(r.out.find("brain-tumour"), std::string::npos);
    EXPECT_EQ(cli({"preset-dump", "--preset", "nope"}).code, 2);
}

TEST(Cli, SolveCaseAAtLateTime) {
    const auto r = cli({"solve", "--preset", "case-a", "--times", "5", "--points-per-layer", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto L = lines(r.out);
    ASSERT_EQ(L.size(), 7u);
    EXPECT_EQ(L[0], "layer,x,t,u");
    EXPECT_EQ(L[1].substr(0, 8), "1,0,5,1");
    EXPECT_EQ(L[6].substr(0, 6), "2,1,5,");
    EXPECT_NEAR(std::stod(L[6].substr(6)), 0.9755, 5e-4);
}

TEST(Cli, SolveIsDeterministic) {
    const std::vector<std::string> args{"solve", "--preset", "case-c", "--points-per-layer", "9"};
    const auto a = cli(args), b = cli(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ContaminantReportsTotalConcentration) {
    const auto r = cli({"solve", "--preset", "liu-contaminant", "--times", "2.15", "--points-per-layer", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out)[0], "layer,x,t,u,total_concentration");
}

TEST(Cli, ClassicalReferenceRefusedForMovingBoundary) {
    const auto r = cli({"converge", "--preset", "liu-contaminant", "--n-list", "10,20"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("classical reference refused"), std::string::npos) << r.err;
}

TEST(Cli, ConvergeColumns) {
    const auto one = cli({"converge", "--preset", "case-c", "--n-list", "20", "--points-per-layer", "5"});
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(lines(one.out)[0], "t,N,epsilon");
    const auto many = cli({"converge", "--preset", "case-c", "--n-list", "10,20,40", "--points-per-layer", "5",
                           "--times", "0.2"});
    ASSERT_EQ(many.code, 0) << many.err;
    const auto L = lines(many.out);
    EXPECT_EQ(L[0], "t,N,epsilon,slope");
    ASSERT_EQ(L.size(), 4u);
    EXPECT_EQ(L[1].back(), ',');  // first row has no slope
}

TEST(Cli, CompareWritesVerdicts) {
    const auto r = cli({"compare", "--preset", "case-b", "--times", "0.2", "--points-per-layer", "5", "--fdm-cells", "100",
                        "--fdm-dt", "0.004", "--eigenvalues", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out)[0], "t,max_rel_diff,richardson,tolerance,verdict");
    EXPECT_NE(r.err.find("compare: "), std::string::npos);
}

TEST_F(CliFiles, MissingKeyNamesPath) {
    const auto cfg = write("bad.json", R"({"layers": [{"left": 0, "right": 1, "initial": 0}],
        "boundary_left": {"aL": 1, "bL": 0, "g": 1}, "boundary_right": {"aR": 1, "bR": 0, "g": 0}})");
    const auto r = cli({"solve", "--config", cfg.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("layers[0].diffusivity"), std::string::npos) << r.err;
}

TEST_F(CliFiles, InvalidProblemListsViolations) {
    const auto cfg = write("neg.json", R"({"layers": [{"left": 0, "right": 1, "diffusivity": -1, "initial": 0}],
        "boundary_left": {"aL": 0, "bL": 0, "g": 1}, "boundary_right": {"aR": 1, "bR": 0, "g": 0}})");
    const auto r = cli({"solve", "--config", cfg.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("D_1 > 0 fails"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("a_L + b_L > 0 fails"), std::string::npos) << r.err;
}

TEST_F(CliFiles, IoFailures) {
    EXPECT_EQ(cli({"solve", "--config", (dir_ / "absent.json").string()}).code, 1);
    const auto r = cli({"solve", "--preset", "case-a", "--points-per-layer", "3", "--out",
                        (dir_ / "no" / "such" / "dir.csv").string()});
    EXPECT_EQ(r.code, 1) << r.err;
}

TEST_F(CliFiles, NumericalFailure) {
    const auto cfg = write("flux.json", kNeumannFlux);
    const auto r = cli({"converge", "--config", cfg.string(), "--n-list", "10"});
    EXPECT_EQ(r.code, 3) << r.err;
}

TEST_F(CliFiles, ManifestAccompaniesOutput) {
    const auto csv = dir_ / "a.csv";
    const auto r = cli({"solve", "--preset", "case-a", "--points-per-layer", "3", "--out", csv.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    ASSERT_TRUE(fs::exists(csv));
    std::ifstream in(dir_ / "a.manifest.json");
    const auto m = nlohmann::json::parse(in);
    EXPECT_EQ(m["subcommand"], "solve");
    EXPECT_EQ(m["preset"], "case-a");
    EXPECT_EQ(m["solver"]["N"], 50);
    EXPECT_EQ(m["config"]["name"], "case-a");
}

TEST_F(CliFiles, DumpedPresetRunsUnchanged) {
    const auto json = dir_ / "c.json";
    ASSERT_EQ(cli({"preset-dump", "--preset", "case-c", "--out", json.string()}).code, 0);
    const auto a = cli({"solve", "--config", json.string(), "--points-per-layer", "5"});
    const auto b = cli({"solve", "--preset", "case-c", "--points-per-layer", "5"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
}
