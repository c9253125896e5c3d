#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"
#include "output.hpp"
#include "sublinear/csv.hpp"
#include "sublinear/envelope.hpp"
#include "sublinear/format.hpp"
#include "sublinear/lln.hpp"
#include "sublinear/maximal.hpp"
#include "sublinear/mle.hpp"

using namespace sublinear;
using nlohmann::json;

namespace {

const std::string kData = SUBLINEAR_TEST_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sublinear_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> data_lines(const std::string& csv) {
    std::vector<std::string> lines;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST(Cli, EstimateExample) {
    const auto r = run_cli({"estimate", "--input", kData + "/samples.csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["mu_lo_hat"], 0.3);
    EXPECT_EQ(doc["mu_hi_hat"], 2.5);
    EXPECT_EQ(doc["n"], 3);
    EXPECT_EQ(doc["header"]["command"], "estimate");
    EXPECT_EQ(doc["header"]["version"], cli::version());
    EXPECT_EQ(doc["header"]["config_digest"].get<std::string>().size(), 16u);
}

TEST(Cli, EnvelopeMatchesModule) {
    const auto r = run_cli({"envelope", "--input", kData + "/returns_header.csv", "--header", "--column", "ret",
                            "--timestamp-column", "date", "--window", "2", "--num-windows", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    CsvColumns cols;
    cols.value_column = "ret";
    cols.timestamp_column = "date";
    cols.has_header = true;
    const auto series = ingest_csv(kData + "/returns_header.csv", cols);
    const auto env = variance_envelope(rolling_local_variance(series, {2, 2, true}));
    EXPECT_EQ(doc["sigma_lo_sq"].get<double>(), env.sigma_lo_sq);
    EXPECT_EQ(doc["sigma_hi_sq"].get<double>(), env.sigma_hi_sq);
    EXPECT_EQ(doc["L"], 2);
    EXPECT_EQ(doc["K"], 2);
    EXPECT_EQ(doc["demean"], true);
    ASSERT_EQ(doc["per_window"].size(), 2u);
}

TEST(Cli, RateTableHasBoundColumn) {
    const auto r = run_cli({"rate", "--mu-lo", "-1", "--mu-hi", "1", "--noise", "uniform:0.3", "--n-max", "10000",
                            "--reps", "20", "--seed", "42"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = data_lines(r.out);
    ASSERT_FALSE(lines.empty());
    EXPECT_EQ(lines[0], "n,policy_id,estimate,target_or_bound,gap,stderr");
    EXPECT_NE(r.out.find("# generator=mt19937_64 replication_seed=seed+r"), std::string::npos);
    EXPECT_NE(r.out.find("second_moment_upper=1.03"), std::string::npos);

    const MaximalDist d(-1, 1);
    const std::vector<MeanPolicy> pols{MeanPolicy::constant(-1), MeanPolicy::constant(0), MeanPolicy::constant(1),
                                       MeanPolicy::periodic({-1, 1})};
    const auto sched = log_schedule(10000);
    const auto table = rate_check(d, pols, NoiseSpec::uniform(0.3), {10000, 20, 42}, sched);
    ASSERT_EQ(lines.size(), table.rows.size() + 1);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        EXPECT_DOUBLE_EQ(row.target_or_bound, 1.03 / static_cast<double>(row.n));
        const std::string expect = std::to_string(row.n) + "," + row.policy_id + "," +
                                   format_number(row.estimate) + "," + format_number(row.target_or_bound) +
                                   "," + format_number(row.gap) + "," + format_number(row.std_error);
        EXPECT_EQ(lines[i + 1], expect);
    }
}

TEST(Cli, EvalMatchesModule) {
    const auto r = run_cli({"eval", "--mu-lo", "-1", "--mu-hi", "2", "--fn", "square", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto m = eval_maximal(MaximalDist(-1, 2), {[](double x) { return x * x; }, 4.0}, GridSpec{1e-3});
    const auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(lines[1], "maximal," + format_number(m.value) + "," + format_number(m.argmax) + "," +
                            format_number(m.error_bound));
}

TEST(Cli, EvalConvolution) {
    const auto r = run_cli({"eval", "--mu-lo", "0", "--mu-hi", "1", "--fn", "sin", "--a", "1", "--b", "2",
                            "--step", "0.01"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_LE(std::abs(doc["value"].get<double>() - doc["scaled_value"].get<double>()),
              doc["error_bound"].get<double>() + doc["scaled_error_bound"].get<double>());
}

TEST(Cli, LlnJson) {
    const auto r = run_cli({"lln", "--mu-lo", "-1", "--mu-hi", "1", "--fn", "identity", "--policies",
                            "constant:-1,constant:1", "--n-max", "100", "--reps", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["estimate_kind"], "lower_bound");
    EXPECT_EQ(doc["target"]["value"], 1.0);
    EXPECT_EQ(doc["rows"].size(), 3u * 3u);
}

TEST(Cli, VerifyAxioms) {
    const auto r = run_cli({"verify-axioms", "--cases", "50", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(json::parse(r.out)["all_passed"], true);
}

TEST(Cli, ExitCodes) {
    auto r = run_cli({"eval", "--mu-lo", "2", "--mu-hi", "1", "--fn", "square"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("error: code=2 kind=validation message=\"", 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

    r = run_cli({"eval", "--mu-lo", "0", "--mu-hi", "1", "--fn", "nope"});
    EXPECT_EQ(r.code, 2);
    r = run_cli({"frobnicate"});
    EXPECT_EQ(r.code, 2);
    r = run_cli({"estimate", "--input", kData + "/does_not_exist.csv"});
    EXPECT_EQ(r.code, 3);

    const auto bad = scratch("bad.csv");
    std::ofstream(bad) << "1\nabc\n";
    r = run_cli({"estimate", "--input", bad.string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("row 2"), std::string::npos) << r.err;

    r = run_cli({"envelope", "--input", kData + "/samples.csv", "--window", "3", "--num-windows", "2"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("kind=length"), std::string::npos) << r.err;

    r = run_cli({"rate", "--mu-lo", "0", "--mu-hi", "1", "--policies", "constant:2"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, AtomicOutputAndNoPartialFiles) {
    const auto target = scratch("estimate.json");
    std::filesystem::remove(target);
    auto r = run_cli({"estimate", "--input", kData + "/samples.csv", "--output", target.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(json::parse(slurp(target))["mu_hi_hat"], 2.5);

    const auto failed = scratch("never.json");
    std::filesystem::remove(failed);
    r = run_cli({"estimate", "--input", kData + "/missing.csv", "--output", failed.string()});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(std::filesystem::exists(failed));
    for (const auto& entry : std::filesystem::directory_iterator(failed.parent_path())) {
        EXPECT_EQ(entry.path().filename().string().find(".tmp."), std::string::npos) << entry.path();
    }
}

TEST(Cli, ByteIdenticalReruns) {
    const std::vector<std::vector<std::string>> commands{
        {"rate", "--mu-lo", "-1", "--mu-hi", "1", "--noise", "two_point:0.5", "--n-max", "1000", "--reps", "30",
         "--seed", "7"},
        {"lln", "--mu-lo", "-1", "--mu-hi", "1", "--fn", "square", "--noise", "uniform:0.2", "--n-max", "500",
         "--reps", "10", "--seed", "9", "--format", "json"},
        {"verify-axioms", "--cases", "40", "--seed", "5", "--format", "csv"},
    };
    for (const auto& args : commands) {
        const auto a = run_cli(args);
        const auto b = run_cli(args);
        ASSERT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, ConfigFilePrecedence) {
    const auto cfg = scratch("run.cfg");
    std::ofstream(cfg) << "# defaults\nmu-lo = -1\nmu-hi = 2\nfn = square\nstep = 0.5\n";
    auto r = run_cli({"eval", "--config", cfg.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_EQ(doc["value"], 4.0);
    EXPECT_EQ(doc["header"]["config"]["step"], "0.5");

    r = run_cli({"eval", "--config", cfg.string(), "--mu-hi", "1", "--fn=neg_square"});
    ASSERT_EQ(r.code, 0) << r.err;
    doc = json::parse(r.out);
    EXPECT_EQ(doc["mu_hi"], 1.0);
    EXPECT_EQ(doc["value"], 0.0);
    EXPECT_EQ(doc["header"]["config"]["fn"], "neg_square");
}

TEST(Cli, DigestTracksConfig) {
    const auto a = json::parse(run_cli({"eval", "--mu-lo", "0", "--mu-hi", "1", "--fn", "square"}).out);
    const auto b = json::parse(run_cli({"eval", "--mu-lo", "0", "--mu-hi", "1", "--fn", "sin"}).out);
    EXPECT_NE(a["header"]["config_digest"], b["header"]["config_digest"]);
    cli::ConfigMap m{{"a", "1"}};
    EXPECT_EQ(cli::config_digest(m), cli::config_digest(m));
    EXPECT_NE(cli::config_digest(m), cli::config_digest({{"a", "2"}}));
}

TEST(Cli, HelpAndVersion) {
    auto r = run_cli({"--version"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, cli::version() + "\n");
    r = run_cli({"envelope", "--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--num-windows"), std::string::npos);
}
