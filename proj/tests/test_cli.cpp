#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "blowup/commands.hpp"
#include "blowup/config.hpp"
#include "json.hpp"

using namespace blowup;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("blowup_cli_") + info->name() + "_" + std::to_string(::getpid()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    // Writes the config, runs the binary with --output <out>, returns the exit status.
    int run_cli(const json& cfg, const std::string& out = "out", const std::string& extra = "") {
        const fs::path cfg_path = dir_ / "run.json";
        std::ofstream(cfg_path) << cfg.dump(2);
        const std::string cmd = std::string(BLOWUP_CLI_PATH) + " --config " + cfg_path.string() + " --output " +
                                (dir_ / out).string() + " " + extra + " > " + (dir_ / "stderr.txt").string() + " 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string read(const std::string& rel) const {
        std::ifstream in(dir_ / rel);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
};

json certify_config() {
    return {{"command", "certify"},
            {"operator", {{"a", 1.0}, {"b", 1.0}, {"s", 0.5}, {"N", 1}}},
            {"reaction", {{"kind", "power"}, {"p", 2.0}}},
            {"datum", {{"kind", "gaussian"}, {"amplitude", 35.0}, {"width", 1.0}}},
            {"kaplan", {{"beta", 1.5}, {"epsilon", 1.0}}}};
}

}  // namespace

TEST(Config, ParsesAFullDocument) {
    const RunConfig c = parse_config(R"({
        "command": "simulate",
        "operator": {"a": 0.5, "b": 2.0, "s": 0.25, "N": 2},
        "reaction": {"kind": "custom", "name": "z2_plus_z3"},
        "datum": {"kind": "tabulated", "radii": [0, 1, 2, 3], "values": [1, 0.5, 0.1, 0]},
        "kaplan": {"beta": 1.7, "epsilon": "search", "refine": false},
        "sim": {"L": 30, "M": 256, "t_max": 0.5, "linear": true},
        "output_dir": "results",
        "seed": 42
    })");
    EXPECT_EQ(c.command, Command::Simulate);
    EXPECT_EQ(c.op.N, 2);
    EXPECT_DOUBLE_EQ(c.op.s, 0.25);
    EXPECT_EQ(c.reaction.kind, ReactionKind::Custom);
    EXPECT_EQ(c.datum.kind, DatumKind::Tabulated);
    EXPECT_DOUBLE_EQ(c.beta_or_default(), 1.7);
    EXPECT_FALSE(c.epsilon.has_value());
    EXPECT_FALSE(c.refine);
    EXPECT_EQ(c.sim.M, 256);
    EXPECT_TRUE(c.sim.linear);
    EXPECT_EQ(c.output_dir, "results");
    EXPECT_EQ(c.seed, 42u);
}

TEST(Config, Defaults) {
    const RunConfig c = parse_config(R"({"command": "certify"})");
    EXPECT_DOUBLE_EQ(c.beta_or_default(), 1.5);
    EXPECT_EQ(c.reaction.kind, ReactionKind::Power);
    EXPECT_DOUBLE_EQ(c.reaction.p, 2.0);
    EXPECT_FALSE(c.epsilon.has_value());
}

TEST(Config, StrictSchema) {
    EXPECT_THROW(parse_config(R"({"command": "certify", "colour": 1})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"command": "certify", "operator": {"s": 0.5, "n": 1}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"command": "certify", "datum": {"kind": "gaussian", "amplitude": 1, "radius": 1}})"),
                 ConfigError);
    EXPECT_THROW(parse_config(R"({"command": "dance"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"command": "certify", "kaplan": {"epsilon": 2.0}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"command": "certify", "seed": -1})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"command": "fujita-scan"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"command": "fujita-scan", "scan": {"p_grid": [1.5, 0.9]}})"), ConfigError);
    EXPECT_THROW(parse_config("{not json"), ConfigError);
    try {
        parse_config(R"({"command": "certify", "kaplan": {"beta": 0.5}})");
        FAIL() << "beta = N/2 accepted";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("beta > N/2"), std::string::npos) << e.what();
    }
}

TEST_F(Cli, CertifiedGaussian) {
    ASSERT_EQ(run_cli(certify_config()), kExitOk) << read("stderr.txt");
    const json doc = json::parse(read("out/certificate.json"));
    EXPECT_GT(doc.at("certificate").at("margin").get<double>(), 0.0);
    EXPECT_EQ(doc.at("certificate").at("verdict").get<std::string>(), "certified");
    EXPECT_FALSE(read("out/summary.txt").empty());
}

TEST_F(Cli, CertifySearch) {
    json cfg = certify_config();
    cfg["reaction"]["p"] = 1.5;
    cfg["datum"]["amplitude"] = 1.0;
    cfg["kaplan"] = {{"epsilon", "search"}};
    ASSERT_EQ(run_cli(cfg), kExitOk) << read("stderr.txt");
    const json doc = json::parse(read("out/certificate.json"));
    EXPECT_TRUE(doc.contains("search"));
}

TEST_F(Cli, ZeroDatumIsNotCertified) {
    json cfg = certify_config();
    cfg["datum"] = {{"kind", "constant"}, {"value", 0.0}};
    EXPECT_EQ(run_cli(cfg), kExitNotCertified);
}

TEST_F(Cli, InvalidBetaIsAnError) {
    json cfg = certify_config();
    cfg["kaplan"]["beta"] = 0.5;
    EXPECT_EQ(run_cli(cfg), kExitError);
    EXPECT_NE(read("stderr.txt").find("beta > N/2"), std::string::npos);
}

TEST_F(Cli, UnknownKeyIsAnError) {
    json cfg = certify_config();
    cfg["kaplan"]["betta"] = 1.5;
    EXPECT_EQ(run_cli(cfg), kExitError);
    EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(Cli, KaplanVerify) {
    const json cfg = {{"command", "kaplan-verify"}, {"kaplan", {{"beta", 1.5}}}};
    ASSERT_EQ(run_cli(cfg), kExitOk) << read("stderr.txt");
    const json audit = json::parse(read("out/kaplan_audit.json"));
    EXPECT_TRUE(audit.at("all_pass").get<bool>());
    EXPECT_EQ(audit.at("checks").size(), 3u);

    json zero = cfg;
    zero["kaplan"]["lambda"] = 0.0;
    EXPECT_EQ(run_cli(zero, "zero"), kExitNegative);
    EXPECT_FALSE(json::parse(read("zero/kaplan_audit.json")).at("all_pass").get<bool>());
}

TEST_F(Cli, SimulateCertifiedDatum) {
    json cfg = certify_config();
    cfg["command"] = "simulate";
    cfg["sim"] = {{"L", 40.0}, {"M", 1024}, {"dt_init", 1e-4}, {"certificate", true}};
    ASSERT_EQ(run_cli(cfg), kExitOk) << read("stderr.txt");
    const json cmp = json::parse(read("out/comparison.json"));
    EXPECT_EQ(cmp.at("termination").get<std::string>(), "blowup_detected");
    EXPECT_LE(cmp.at("t_b_over_T_star").get<double>(), 1.5);
    const std::string csv = read("out/trajectory.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,sup_norm,phi,jensen_residual,comparison_residual");
}

TEST_F(Cli, SimulateZeroDatum) {
    const json cfg = {{"command", "simulate"},
                      {"datum", {{"kind", "constant"}, {"value", 0.0}}},
                      {"sim", {{"L", 10.0}, {"M", 64}, {"t_max", 0.2}}}};
    ASSERT_EQ(run_cli(cfg), kExitOk) << read("stderr.txt");
    std::istringstream csv(read("out/trajectory.csv"));
    std::string line;
    std::getline(csv, line);
    int rows = 0;
    while (std::getline(csv, line)) {
        const auto a = line.find(','), b = line.find(',', a + 1);
        EXPECT_EQ(std::stod(line.substr(a + 1, b - a - 1)), 0.0) << line;
        ++rows;
    }
    EXPECT_GT(rows, 1);
    const json meta = json::parse(read("out/trajectory_meta.json"));
    EXPECT_EQ(meta.at("run").at("termination").get<std::string>(), "reached_tmax");
}

TEST_F(Cli, SimulateLinearMonotone) {
    const json cfg = {{"command", "simulate"}, {"sim", {{"L", 20.0}, {"M", 256}, {"t_max", 1.0}, {"linear", true}}}};
    ASSERT_EQ(run_cli(cfg), kExitOk) << read("stderr.txt");
    std::istringstream csv(read("out/trajectory.csv"));
    std::string line;
    std::getline(csv, line);
    double prev = INFINITY;
    while (std::getline(csv, line)) {
        const auto a = line.find(','), b = line.find(',', a + 1);
        const double sup = std::stod(line.substr(a + 1, b - a - 1));
        EXPECT_LE(sup, prev * (1 + 1e-12));
        prev = sup;
    }
}

TEST_F(Cli, FujitaScan) {
    const json cfg = {{"command", "fujita-scan"},
                      {"kaplan", {{"beta", 1.0}}},
                      {"scan", {{"p_grid", {1.2, 1.5, 1.8}}}}};
    ASSERT_EQ(run_cli(cfg), kExitOk) << read("stderr.txt");
    const std::string csv = read("out/fujita_scan.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,certified,epsilon,margin,time_bound");
    EXPECT_EQ(csv.find("false"), std::string::npos);
}

TEST_F(Cli, FujitaScanSupercriticalTinyDatum) {
    const json cfg = {{"command", "fujita-scan"},
                      {"kaplan", {{"beta", 1.0}}},
                      {"datum", {{"kind", "gaussian"}, {"amplitude", 1e-4}, {"width", 1.0}}},
                      {"scan", {{"p_grid", {3.0}}}}};
    EXPECT_EQ(run_cli(cfg), kExitOk);
    EXPECT_NE(read("out/fujita_scan.csv").find("false"), std::string::npos);
}

TEST_F(Cli, OutputsAreDeterministic) {
    json cfg = certify_config();
    cfg["command"] = "simulate";
    cfg["sim"] = {{"L", 40.0}, {"M", 512}, {"dt_init", 1e-4}};
    cfg["seed"] = 7;
    ASSERT_EQ(run_cli(cfg, "a"), kExitOk);
    ASSERT_EQ(run_cli(cfg, "b"), kExitOk);
    EXPECT_EQ(read("a/trajectory.csv"), read("b/trajectory.csv"));
    EXPECT_EQ(read("a/trajectory_meta.json"), read("b/trajectory_meta.json"));
}

TEST_F(Cli, MissingConfigFile) {
    const std::string cmd = std::string(BLOWUP_CLI_PATH) + " --config " + (dir_ / "absent.json").string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), kExitError);
}
