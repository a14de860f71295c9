#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bench_support.hpp"
#include "kelly/bench/commands.hpp"
#include "kelly/bench/csv.hpp"
#include "kelly/bench/errata.hpp"
#include "kelly/bench/run_config.hpp"
#include "kelly/errors.hpp"
#include "kelly/utility.hpp"

using namespace kelly;
using namespace kelly::bench;
using kelly::testing::csv_rows;
using kelly::testing::scratch_dir;
using kelly::testing::slurp;

namespace {

int cli(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
    args.insert(args.begin(), "kelly-bench");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("number formatting") {
    CHECK(format_number(0.04) == "0.040000000000000001");
    CHECK(format_number(1000.0) == "1000");
    CHECK(format_number(-0.5) == "-0.5");
    CHECK(format_number(1e-20) == "9.9999999999999995e-21");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("csv table") {
    CsvTable t({"a", "b"});
    t.row({1.0, 0.5}).raw_row({"x", "y"});
    CHECK(t.text() == "a,b\n1,0.5\nx,y\n");
    const auto dir = scratch_dir("csv");
    t.write(dir / "nested" / "t.csv");
    CHECK(slurp(dir / "nested" / "t.csv") == t.text());
}

TEST_CASE("stake modes") {
    const auto p = Probability::parse("0.52");
    CHECK(StakeMode::parse("kelly").stake(p) == 0.04);
    CHECK(StakeMode::parse("fractional:2/3").stake(p) == 2.0 / 75.0);
    CHECK(StakeMode::parse("explicit:0.2").stake(p) == 0.2);
    CHECK_THROWS_AS(StakeMode::parse("half"), UsageError);
    CHECK_THROWS(static_cast<void>(StakeMode::parse("fractional:1.5").stake(p)));
    CHECK_THROWS(static_cast<void>(StakeMode::parse("kelly").stake(0.4)));
}

TEST_CASE("run config parsing") {
    const auto c = RunConfig::parse("# settings\np = 0.52\nn = 200  # trials\n\npaths=50\nstake = explicit:0.1\nf = 1/2, 2/3 ,1\n");
    CHECK(c.p->exact() == Rational{13, 25});
    CHECK(*c.trials == 200);
    CHECK(*c.paths == 50);
    CHECK(c.stake->kind == StakeMode::Kind::Explicit);
    CHECK(c.multipliers->size() == 3);
    CHECK_THROWS_AS(RunConfig::parse("bogus = 1\n"), UsageError);
    CHECK_THROWS_AS(RunConfig::parse("p 0.5\n"), UsageError);
    CHECK_THROWS_AS(RunConfig::parse("n = abc\n"), UsageError);
    CHECK_THROWS_AS(RunConfig::parse("p = 1.5\n"), UsageError);

    RunConfig base = RunConfig::parse("p = 0.52\nn = 200\n");
    base.merge(RunConfig::parse("n = 300\nseed = 9\n"));
    CHECK(*base.trials == 300);
    CHECK(*base.seed == 9);
    CHECK(base.p->value() == 0.52);
}

TEST_CASE("output directory resolution") {
    RunConfig c;
    c.out = "/tmp/explicit";
    CHECK(c.output_dir() == "/tmp/explicit");
    RunConfig d;
    setenv("KELLY_BENCH_OUT", "/tmp/from_env", 1);
    CHECK(d.output_dir() == "/tmp/from_env");
    unsetenv("KELLY_BENCH_OUT");
    CHECK(d.output_dir() == ".");
}

TEST_CASE("analyze writes the three tables") {
    const auto dir = scratch_dir("analyze");
    RunConfig c;
    c.p = Probability::parse("0.6");
    c.out = dir;
    const auto out = cmd_analyze(c);
    CHECK(out.files.size() == 3);
    const auto partition = csv_rows(slurp(dir / "partition.csv"));
    REQUIRE(partition.size() == 2);
    CHECK(partition[0] == std::vector<std::string>{"p", "F_K", "F_star", "f_star_approx", "epsilon"});
    const double root = std::stod(partition[1][2]);
    CHECK(std::abs(utility(root, 0.6)) < 1e-12);
    CHECK(std::stod(partition[1][1]) == doctest::Approx(0.2));

    const auto curve = csv_rows(slurp(dir / "utility_curve.csv"));
    CHECK(curve.size() == 1002);
    CHECK(curve.back()[1] == "-inf");
    const auto entropy = csv_rows(slurp(dir / "entropy.csv"));
    CHECK(entropy[0] == std::vector<std::string>{"p", "H", "log2_minus_H", "U_at_F_K"});
}

TEST_CASE("analyze at p=0.52 reports the Kelly point") {
    const auto dir = scratch_dir("analyze52");
    RunConfig c;
    c.p = Probability::parse("0.52");
    c.out = dir;
    cmd_analyze(c);
    const auto partition = csv_rows(slurp(dir / "partition.csv"));
    CHECK(std::stod(partition[1][1]) == 0.04);
}

TEST_CASE("analyze without an edge omits the partition") {
    const auto dir = scratch_dir("analyze50");
    RunConfig c;
    c.p = 0.5;
    c.out = dir;
    const auto out = cmd_analyze(c);
    CHECK_FALSE(std::filesystem::exists(dir / "partition.csv"));
    REQUIRE(out.notes.size() == 1);
    CHECK(out.notes[0].find("no edge") != std::string::npos);
    double best = -1.0;
    double best_f = -1.0;
    for (const auto& row : csv_rows(slurp(dir / "utility_curve.csv"))) {
        if (row[0] == "F") continue;
        const double u = std::stod(row[1]);
        if (u > best || best_f < 0) {
            best = u;
            best_f = std::stod(row[0]);
        }
    }
    CHECK(best == 0.0);
    CHECK(best_f == 0.0);
}

TEST_CASE("simulate tables and trends") {
    const auto dir = scratch_dir("simulate");
    RunConfig c = RunConfig::parse("p = 0.52\nstake = kelly\nn = 1000\npaths = 2000\nseed = 3\n");
    c.out = dir;
    cmd_simulate(c);
    const auto summary = csv_rows(slurp(dir / "trajectories_summary.csv"));
    CHECK(summary[0] == std::vector<std::string>{"I", "mean_W", "var_W", "mean_M", "empirical_sup_prob", "doob_bound",
                                                 "expected_linear", "expected_product"});
    for (std::size_t i = 2; i < summary.size(); ++i) CHECK(std::stod(summary[i][1]) > std::stod(summary[i - 1][1]));
    for (std::size_t i = 1; i < summary.size(); ++i) CHECK(std::stod(summary[i][4]) <= std::stod(summary[i][5]));
    const auto doob = csv_rows(slurp(dir / "doob.csv"));
    CHECK(doob.size() == 21);
    for (std::size_t i = 1; i < doob.size(); ++i) CHECK(std::stod(doob[i][1]) <= std::stod(doob[i][2]));
    const auto drift = csv_rows(slurp(dir / "drift.csv"));
    CHECK(drift[1][2] == "growth-submartingale");

    const auto decay = scratch_dir("simulate_decay");
    RunConfig d = RunConfig::parse("p = 0.52\nstake = explicit:0.2\nn = 1000\npaths = 100\n");
    d.out = decay;
    cmd_simulate(d);
    const auto rows = csv_rows(slurp(decay / "trajectories_summary.csv"));
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][7]) < std::stod(rows[i - 1][7]));
    CHECK(csv_rows(slurp(decay / "drift.csv"))[1][2] == "decay-supermartingale");
}

TEST_CASE("simulate output is byte identical across runs and thread counts") {
    std::vector<std::string> texts;
    for (int threads : {1, 1, 4}) {
        const auto dir = scratch_dir("repro" + std::to_string(texts.size()));
        RunConfig c = RunConfig::parse("p = 0.52\nstake = kelly\nn = 300\npaths = 3000\nseed = 77\n");
        c.out = dir;
        c.threads = threads;
        cmd_simulate(c);
        texts.push_back(slurp(dir / "trajectories_summary.csv") + slurp(dir / "doob.csv") + slurp(dir / "drift.csv"));
    }
    CHECK(texts[0] == texts[1]);
    CHECK(texts[0] == texts[2]);
}

TEST_CASE("tradeoff tables") {
    const auto dir = scratch_dir("tradeoff");
    RunConfig c;
    c.out = dir;
    cmd_tradeoff(c);
    const auto rows = csv_rows(slurp(dir / "tradeoff.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"f", "F", "expected_wealth", "volatility", "utility"});
    CHECK(std::stod(rows[1][1]) == 2.0 / 75.0);
    CHECK(std::stod(rows[2][1]) == 0.04);
    CHECK(std::stod(rows[1][3]) < std::stod(rows[2][3]));
    CHECK(std::filesystem::exists(dir / "tradeoff_series.csv"));

    RunConfig single = RunConfig::parse("f = 1\n");
    single.out = scratch_dir("tradeoff1");
    cmd_tradeoff(single);
    CHECK(csv_rows(slurp(*single.out / "tradeoff.csv")).size() == 2);
}

TEST_CASE("errata registry and verification") {
    const auto& registry = claim_registry();
    std::set<std::string> ids;
    for (const auto& claim : registry) {
        CHECK(ids.insert(claim.id).second);
        CHECK_FALSE(claim.location.empty());
    }
    const auto dir = scratch_dir("verify");
    RunConfig c;
    c.out = dir;
    c.scale = VerifyScale::Quick;
    const auto result = cmd_verify(c);
    CHECK(result.exit_code == kExitOk);
    CHECK(result.report.entries.size() == registry.size());
    for (std::size_t i = 0; i < registry.size(); ++i) {
        CHECK(result.report.entries[i].id == registry[i].id);
        CHECK_FALSE(result.report.entries[i].regression());
    }
    bool documented_mismatch = false;
    for (const auto& e : result.report.entries) {
        if (e.expected == Expectation::DocumentedMismatch && e.result.verdict == Verdict::Mismatch) documented_mismatch = true;
    }
    CHECK(documented_mismatch);
    const auto rows = csv_rows(slurp(dir / "errata_report.csv"));
    CHECK(rows.size() == registry.size() + 1);
    CHECK(rows[0][0] == "claim_id");
}

TEST_CASE("a failing match claim is a regression") {
    ErrataReport report;
    report.entries.push_back({"x", "somewhere", Expectation::Match, {1.0, 2.0, 1.0, Verdict::Mismatch, ""}});
    CHECK(report.has_regression());
    report.entries[0].expected = Expectation::DocumentedMismatch;
    CHECK_FALSE(report.has_regression());
    CHECK(relative_gap(2.0, 3.0) == 0.5);
    CHECK(relative_gap(0.0, 3.0) == 3.0);
}

TEST_CASE("command line exit codes") {
    const auto dir = scratch_dir("cli");
    std::string out;
    std::string err;
    CHECK(cli({"analyze", "--p", "0.52", "--out", dir.string()}, &out) == kExitOk);
    CHECK(out.find("partition.csv") != std::string::npos);
    CHECK(cli({"simulate", "--p", "0.52", "--kelly", "--stake", "0.1", "--out", dir.string()}) == kExitUsage);
    CHECK(cli({"simulate", "--p", "0.52", "--n", "0", "--out", dir.string()}) == kExitUsage);
    CHECK(cli({"simulate", "--p", "0.52", "--n", "1000000", "--paths", "10000", "--out", dir.string()}, nullptr,
              &err) == kExitUsage);
    CHECK(cli({"analyze", "--p", "1.5", "--out", dir.string()}, nullptr, &err) == kExitUsage);
    CHECK(err.find("1.5") != std::string::npos);
    CHECK(cli({"frobnicate"}) == kExitUsage);
    CHECK(cli({}) == kExitUsage);
    CHECK(cli({"tradeoff", "--f", "0.2", "--out", dir.string()}) == kExitUsage);
    CHECK(cli({"simulate", "--p", "0.52", "--fraction", "2/3", "--n", "50", "--paths", "20", "--out", dir.string()}) ==
          kExitOk);
}

TEST_CASE("config file with command line overrides") {
    const auto dir = scratch_dir("cfg");
    {
        std::ofstream f(dir / "run.cfg");
        f << "p = 0.6\ngrid = 11\n";
    }
    CHECK(cli({"analyze", "--config", (dir / "run.cfg").string(), "--grid", "21", "--out", dir.string()}) == kExitOk);
    CHECK(csv_rows(slurp(dir / "utility_curve.csv")).size() == 22);
    {
        std::ofstream f(dir / "bad.cfg");
        f << "colour = blue\n";
    }
    CHECK(cli({"analyze", "--config", (dir / "bad.cfg").string(), "--p", "0.6", "--out", dir.string()}) == kExitUsage);
}
