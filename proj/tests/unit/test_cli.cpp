#include "sasaki/app/commands.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/interchange.hpp"

#include <cstdio>
#include <filesystem>
#include <gtest/gtest.h>
#include <sstream>

using namespace sasaki;
using namespace sasaki::app;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return Result{code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("sasaki_test_" + name)).string();
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Cli, GenerateEchoesDerivedQuantitiesAndWritesTheFile) {
    const std::string path = temp_path("c.json");
    const Result r = cli({"generate", "--family", "thm311", "--a", "0.5", "--n", "2", "--samples", "512", "--out", path});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "A = 0.73205080756887742"));
    const Json j = parse_json_file(path);
    EXPECT_NEAR(j["family_params"]["A"].get<double>(), std::sqrt(3.0) - 1.0, 1e-15);
    EXPECT_EQ(j["points"].size(), 512u);
    std::remove(path.c_str());
}

TEST(Cli, GenerateNamesTheViolatedConstraint) {
    Result r = cli({"generate", "--family", "thm310-helix", "--a", "2", "--kappa1", "0.9"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "κ₁√a ≥ 1")) << r.err;
    r = cli({"generate", "--family", "prop53-x1", "--n", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.err, "requires n = 3")) << r.err;
}

TEST(Cli, VerifyExitCodesFollowTheVerdict) {
    Result r = cli({"verify", "--family", "thm39-circle"});
    EXPECT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["verdict"]["case"], "I");
    EXPECT_EQ(j["verdict"]["label"], "proper-biharmonic");
    EXPECT_TRUE(j.contains("tolerances"));
    EXPECT_TRUE(j.contains("seed"));

    r = cli({"verify", "--family", "great-circle"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["verdict"]["case"], "geodesic");

    r = cli({"verify", "--family", "thm39-helix", "--kappa1", "0.6", "--detune", "1.01"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(Json::parse(r.out)["verdict"]["case"], "non-biharmonic");

    r = cli({"verify", "--in", temp_path("missing.json")});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, VerifyReadsAFileBackAndReattachesTheFamily) {
    const std::string path = temp_path("h.json");
    ASSERT_EQ(cli({"generate", "--family", "thm310-helix", "--a", "2", "--kappa1", "0.5", "--out", path}).code, 0);
    const Result r = cli({"verify", "--in", path});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(Json::parse(r.out)["verdict"]["case"], "II");
    std::remove(path.c_str());
}

TEST(Cli, ReportInvariantProperImpliesBoundsHold) {
    const Result r = cli({"verify", "--family", "thm310-circle", "--a", "2"});
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j["verdict"]["label"], "proper-biharmonic");
    EXPECT_LT(j["residuals"]["bitension_sup"].get<double>(), j["tolerances"]["bitension_tol"].get<double>());
    EXPECT_GT(j["residuals"]["tension_inf"].get<double>(), j["tolerances"]["tension_floor"].get<double>());
}

TEST(Cli, ReportsAreDeterministic) {
    const Result a = cli({"verify", "--family", "thm39-helix", "--kappa1", "0.6"});
    const Result b = cli({"verify", "--family", "thm39-helix", "--kappa1", "0.6"});
    Json ja = Json::parse(a.out), jb = Json::parse(b.out);
    ja.erase("wall_time_s");
    jb.erase("wall_time_s");
    EXPECT_EQ(ja, jb);
}

TEST(Cli, SweepCaseThreeIsFeasibleExactlyBelowAOne) {
    const Result r = cli({"sweep", "--case", "III", "--a", "0.3:3:10"});
    EXPECT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "case,shape,n,a,c,alpha0,kappa1,kappa2,feasible,reason,target,verdict,bitension_sup");
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        EXPECT_EQ(f[8] == "true", std::stod(f[3]) < 1.0) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 10);
}

TEST(Cli, SweepCaseTwoAtAThreeGivesCirclesWithKappaSquaredOneThird) {
    const std::vector<SweepRow> rows = run_sweep(SweepRequest{{CaseId::II}, {3.0}}, Config{});
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows[0].shape, "circle");
    EXPECT_TRUE(rows[0].feasibility.feasible);
    EXPECT_NEAR(*rows[0].kappa1 * *rows[0].kappa1, 1.0 / 3.0, 1e-15);
}

TEST(Cli, SweepCaseOneAwayFromTheRoundSphereIsEmpty) {
    for (const SweepRow& r : run_sweep(SweepRequest{{CaseId::I}, {0.5, 2.0, 3.0}}, Config{}))
        EXPECT_FALSE(r.feasibility.feasible);
}

TEST(Cli, SweepVerifiesFeasibleRowsInParallel) {
    SweepRequest req{{CaseId::II, CaseId::III}, {0.5, 2.0}};
    req.verify = true;
    req.threads = 2;
    Config cfg;
    cfg.set("samples", "128");
    for (const SweepRow& r : run_sweep(req, cfg)) {
        if (!r.feasibility.feasible) continue;
        EXPECT_EQ(r.verdict, "proper-biharmonic") << to_string(r.which) << " " << r.shape << " a=" << r.a;
    }
}

TEST(Cli, EmptyRangesAreInvalidInput) {
    EXPECT_EQ(cli({"sweep", "--case", "III", "--a", "2:1:4"}).code, 2);
    EXPECT_EQ(cli({"sweep", "--case", "III", "--a", ""}).code, 2);
    EXPECT_EQ(cli({"sweep", "--case", "IV", "--c", "5"}).code, 2);
    EXPECT_THROW(parse_range("1:2:0", "x"), InvalidInput);
    EXPECT_EQ(parse_range("0:1:3", "x"), (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(parse_range("1,2.5", "x"), (std::vector<double>{1.0, 2.5}));
}

TEST(Cli, ClassifyCaseFourPoint) {
    const Result r = cli({"classify", "--case", "IV", "--c", "5", "--alpha0", "2.356194490192345"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "IV,-,,0.5,5,2.3561944901923448,,,true"));
}

TEST(Cli, UnknownFlagsAndSubcommandsAreInvalidInput) {
    EXPECT_EQ(cli({"frobnicate"}).code, 2);
    EXPECT_EQ(cli({"verify", "--bogus"}).code, 2);
    EXPECT_EQ(cli({"generate", "--family", "spiral"}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
    EXPECT_EQ(cli({"verify", "--family", "thm39-circle", "--set", "nope=1"}).code, 2);
}

TEST(Cli, OptimizeWritesATrajectory) {
    const Result r = cli({"optimize", "--family", "thm39-circle", "--detune", "1.01", "--samples", "64", "--steps", "5"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "step,E2,tension_sup,bitension_sup,step_size\n0,"));
}

TEST(Cli, SelftestFlippedCurvatureFailsTheNamedCalibration) {
    const Result r = cli({"selftest", "--fast", "--criteria", "11", "--inject-curvature-sign-flip"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.out, "FAIL  [cal] round-sphere curvature check (c=1)")) << r.out;
    const Result ok = cli({"selftest", "--fast", "--criteria", "11"});
    EXPECT_EQ(ok.code, 0) << ok.out;
}
