#include "telebell/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json_schema_lite.hpp"

using telebell::cli::run;
using Json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string &s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

void expect_schema_valid(const std::string &command, const std::string &payload) {
    const auto schema = telebell::testing::SchemaLite::load(std::string(TELEBELL_SCHEMA_DIR) + "/" + command + ".schema.json");
    const auto errors = schema.validate(Json::parse(payload));
    for (const auto &e : errors) {
        ADD_FAILURE() << command << ": " << e;
    }
}

}  // namespace

TEST(Cli, probs_aligned_settings) {
    const auto r = invoke({"probs", "--beta", "45", "--phi", "0", "--beta-prime", "45", "--phi-prime", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    const auto &p = j["probabilities"];
    ASSERT_EQ(p.size(), 8u);
    EXPECT_EQ(p[0]["bell"], "00");
    EXPECT_EQ(p[0]["bob"], "0");
    EXPECT_DOUBLE_EQ(p[0]["probability"].get<double>(), 0.25);
    EXPECT_EQ(p[5]["bell"], "10");
    EXPECT_EQ(p[5]["bob"], "1");
    EXPECT_DOUBLE_EQ(p[5]["probability"].get<double>(), 0.25);
    EXPECT_LE(j["checks"]["oracle_max_deviation"].get<double>(), 1e-12);
    expect_schema_valid("probs", r.out);
}

TEST(Cli, probs_csv_and_beta_zero_phase_independence) {
    const auto a = invoke({"probs", "--beta", "0", "--phi", "0", "--beta-prime", "30", "--format", "csv"});
    const auto b = invoke({"probs", "--beta", "0", "--phi", "77", "--beta-prime", "30", "--format", "csv"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("bell,bob,probability\n", 0), 0u);
    EXPECT_EQ(line_count(a.out), 9u);
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
}

TEST(Cli, usage_errors_exit_2_with_empty_stdout) {
    const std::vector<std::vector<std::string>> bad{
        {"probs", "--beta", "abc"},
        {"probs", "--beta", "nan"},
        {"probs", "--phi", "inf"},
        {"probs", "--format", "xml"},
        {"bell-test", "--format", "csv"},
        {"bell-test", "--visibility", "1.5"},
        {"bogus"},
        {},
        {"scan", "--grid", "phi=0:10"},
        {"scan", "--grid", "phi=0:10:0"},
        {"scan", "--grid", "gamma=0:10:1"},
        {"scan", "--grid", "phi=10:0:1"},
        {"scan", "--grid", "phi=0:10:1", "--grid", "phi=0:5:1"},
        {"scan", "--grid", "beta=0:99:1", "--grid", "phi=0:99:1", "--grid", "phi_prime=0:100:1"},
    };
    for (const auto &args : bad) {
        const auto r = invoke(args);
        EXPECT_EQ(r.code, 2) << (args.empty() ? "<none>" : args[0]) << " " << r.err;
        EXPECT_TRUE(r.out.empty());
        EXPECT_FALSE(r.err.empty());
    }
}

TEST(Cli, help_exits_zero) {
    const auto r = invoke({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("bell-test"), std::string::npos);
}

TEST(Cli, bell_test_verdicts) {
    const auto def = invoke({"bell-test"});
    ASSERT_EQ(def.code, 0) << def.err;
    const Json j = Json::parse(def.out);
    EXPECT_TRUE(j["violated"].get<bool>());
    EXPECT_NEAR(j["violation_ratio"].get<double>(), 1.41421356, 1e-8);
    EXPECT_EQ(j["strategy_count"], 64);
    expect_schema_valid("bell-test", def.out);

    const Json low = Json::parse(invoke({"bell-test", "--visibility", "0.65"}).out);
    EXPECT_FALSE(low["violated"].get<bool>());
    const Json full = Json::parse(invoke({"bell-test", "--visibility", "1.0"}).out);
    EXPECT_NEAR(full["margin"].get<double>(), 0.5858, 1e-4);
    EXPECT_NEAR(full["margin"].get<double>(), 2 - std::sqrt(2.0), 1e-11);
}

TEST(Cli, scan_four_setting_grid) {
    const auto r = invoke({"scan", "--grid", "phi=0:90:90", "--grid", "phi_prime=-45:45:90"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "beta,phi,beta_prime,phi_prime,E_x,E_y");
    const std::array<std::array<double, 4>, 4> expected{
        {{0, -45, 0.707106781187, 0}, {0, 45, 0.707106781187, 0}, {90, -45, 0, -0.707106781187}, {90, 45, 0, 0.707106781187}}};
    for (const auto &row : expected) {
        ASSERT_TRUE(std::getline(in, line));
        double beta, phi, bp, pp, ex, ey;
        char c;
        std::istringstream fields(line);
        fields >> beta >> c >> phi >> c >> bp >> c >> pp >> c >> ex >> c >> ey;
        EXPECT_EQ(beta, 45);
        EXPECT_EQ(bp, 45);
        EXPECT_EQ(phi, row[0]);
        EXPECT_EQ(pp, row[1]);
        EXPECT_NEAR(ex, row[2], 1e-12);
        EXPECT_NEAR(ey, row[3], 1e-12);
    }
    EXPECT_FALSE(std::getline(in, line));
}

TEST(Cli, scan_row_counts) {
    EXPECT_EQ(line_count(invoke({"scan"}).out), 2u);
    const auto r = invoke({"scan", "--grid", "beta=0:90:30", "--grid", "phi=-180:180:60", "--grid", "phi-prime=0:10:5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(line_count(r.out), 1u + 4 * 7 * 3);

    const auto j = invoke({"scan", "--format", "json", "--grid", "phi=0:90:90", "--grid", "phi_prime=-45:45:90"});
    ASSERT_EQ(j.code, 0);
    const Json doc = Json::parse(j.out);
    EXPECT_EQ(doc["row_count"], 4);
    EXPECT_NEAR(doc["super_norm_sq"].get<double>(), 2.0, 1e-11);
    expect_schema_valid("scan", j.out);
}

TEST(Cli, noise_threshold) {
    const auto r = invoke({"noise-threshold"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_NEAR(j["threshold"].get<double>(), 0.70711, 1e-5);
    EXPECT_FALSE(j["bracket"]["below"]["violated"].get<bool>());
    EXPECT_TRUE(j["bracket"]["above"]["violated"].get<bool>());
    expect_schema_valid("noise-threshold", r.out);
}

TEST(Cli, teleport_fidelity) {
    const auto r = invoke({"teleport-fidelity", "--beta", "30", "--phi", "77"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j["records"].size(), 4u);
    for (const auto &rec : j["records"]) {
        EXPECT_DOUBLE_EQ(rec["fidelity"].get<double>(), 1.0);
        EXPECT_DOUBLE_EQ(rec["probability"].get<double>(), 0.25);
    }
    expect_schema_valid("teleport-fidelity", r.out);
}

TEST(Cli, swap) {
    const auto r = invoke({"swap"});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    ASSERT_EQ(j["outcomes"].size(), 4u);
    for (const auto &o : j["outcomes"]) {
        EXPECT_NEAR(o["chsh"].get<double>(), 2.828427, 1e-6);
        EXPECT_DOUBLE_EQ(o["reduced_purity"].get<double>(), 0.5);
    }
    expect_schema_valid("swap", r.out);
}

TEST(Cli, out_file) {
    const auto path = std::filesystem::temp_directory_path() / "telebell_cli_test.json";
    std::filesystem::remove(path);
    const auto r = invoke({"bell-test", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), invoke({"bell-test"}).out);
    std::filesystem::remove(path);
}

TEST(Cli, repeated_runs_are_byte_identical) {
    const std::vector<std::vector<std::string>> commands{
        {"probs", "--beta", "12.5", "--phi", "-33", "--beta-prime", "71", "--phi-prime", "140"},
        {"bell-test", "--visibility", "0.8"},
        {"scan", "--grid", "phi=0:180:45"},
        {"swap"},
        {"noise-threshold"},
        {"teleport-fidelity", "--beta", "30", "--phi", "77"},
    };
    for (const auto &c : commands) {
        EXPECT_EQ(invoke(c).out, invoke(c).out) << c[0];
    }
}

TEST(FormatNumber, twelve_significant_digits) {
    using telebell::cli::format_number;
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(0.25), "0.25");
    EXPECT_EQ(format_number(std::sqrt(2.0)), "1.41421356237");
    EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(GridAxis, parsing) {
    using telebell::cli::parse_grid_axis;
    const auto g = parse_grid_axis("phi-prime=-45:45:90");
    EXPECT_EQ(g.axis, "phi_prime");
    EXPECT_EQ(g.start, -45);
    EXPECT_EQ(g.count(), 2u);
    EXPECT_EQ(parse_grid_axis("beta=0:0:1").count(), 1u);
    EXPECT_EQ(parse_grid_axis("beta=0:1:0.1").count(), 11u);
    EXPECT_THROW(parse_grid_axis("beta"), std::invalid_argument);
    EXPECT_THROW(parse_grid_axis("beta=a:1:1"), std::invalid_argument);
    EXPECT_THROW(parse_grid_axis("beta=0:1:-1"), std::invalid_argument);
}
