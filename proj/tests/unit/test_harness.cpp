#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aos/config.hpp"
#include "aos/generators.hpp"
#include "aos/harness.hpp"
#include "aos/stats.hpp"
#include "aos/trace_io.hpp"
#include "test_support.hpp"

using namespace aos;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string small_batch(const std::string& out_dir) {
    return "runs = 4\nbase_seed = 100\noutput_dir = " + out_dir +
           "\ninstance = tiny.cnf\ninstance = missing.cnf\n"
           "[config fast]\nmax_iterations = 300\npopulation_size = 8\noperators = 1111,0011\nearly_exit = false\n"
           "[config slow]\nmax_iterations = 300\npopulation_size = 8\noperators = 7000\nearly_exit = false\n";
}

void write_tiny(const fs::path& dir) {
    std::ostringstream cnf;
    write_dimacs(cnf, encode_coloring(generate_flat_graph(20, 40, 3, 9)));
    write_file(dir / "tiny.cnf", cnf.str());
}

} // namespace

TEST_CASE("batch spec parsing") {
    std::istringstream in("runs = 5\nbase_seed = 7\njobs = 2\ninstance = a.cnf\ninstance = /abs/b.cnf\n"
                          "write_traces = no\n[config alpha]\ntwin = 3\n[config beta]\nselection = random\n");
    const BatchSpec spec = parse_batch_spec(in, "/data");
    CHECK(spec.runs == 5);
    CHECK(spec.base_seed == 7);
    CHECK(spec.jobs == 2);
    CHECK_FALSE(spec.write_traces);
    CHECK(spec.instances == std::vector<std::string>{"/data/a.cnf", "/abs/b.cnf"});
    REQUIRE(spec.configs.size() == 2);
    CHECK(spec.configs[0].name == "alpha");
    CHECK(spec.configs[0].config.controller.twin == 3);
    CHECK(spec.configs[1].config.controller.twin == default_run_config().controller.twin);
    CHECK(spec.configs[1].config.selection == SelectionMode::UniformRandom);
}

TEST_CASE("batch spec errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_batch_spec(in);
    };
    CHECK_THROWS_AS((void)parse("instance = a\n[config x]\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS((void)parse("color = red\n"), ConfigError);
    CHECK_THROWS_AS((void)parse("instance = a\n[cfg x]\n"), ConfigError);
    CHECK_THROWS((void)parse("instance = a\n"));
    CHECK_THROWS((void)parse("[config x]\n"));
    CHECK_THROWS((void)parse("instance = a\n[config x]\n[config x]\n"));
    CHECK_THROWS_AS((void)load_batch_spec("/nonexistent/batch.txt"), ConfigError);
}

TEST_CASE("batch run writes reports and records per-run errors") {
    TempDir dir("aos_harness_batch");
    write_tiny(dir.path);
    write_file(dir.path / "batch.txt", small_batch("out"));
    const BatchSpec spec = load_batch_spec((dir.path / "batch.txt").string());
    const BatchReport report = run_batch(spec);

    REQUIRE(report.runs.size() == 2 * 2 * 4);
    for (const RunRecord& r : report.runs) {
        CHECK(r.seed == 100 + r.run);
        if (r.instance == "missing") CHECK_FALSE(r.ok());
        else CHECK(r.ok());
    }

    const CellSummary* fast = report.find("tiny", "fast");
    const CellSummary* slow = report.find("tiny", "slow");
    REQUIRE(fast);
    REQUIRE(slow);
    CHECK(fast->bests.size() == 4);
    CHECK(fast->min == minimum(fast->bests));
    CHECK(fast->std == doctest::Approx(sample_std(fast->bests)));
    CHECK(report.find("missing", "fast")->failures == 4);
    CHECK(std::isnan(report.find("missing", "fast")->min));
    CHECK(report.find("tiny", "none") == nullptr);
    REQUIRE(report.tests.size() == 1);
    CHECK(report.tests[0].exact);

    const fs::path out = dir.path / "out";
    for (const char* name : {"runs.csv", "summary.csv", "summary.json", "pvalues.csv"}) CHECK(fs::exists(out / name));
    CHECK(fs::exists(out / "traces" / "tiny__fast__run0.csv"));
    CHECK(load_trace((out / "traces" / "tiny__slow__run3.csv").string()).size() == 300);

    std::ifstream runs_in(out / "runs.csv");
    const auto reread = read_runs_csv(runs_in);
    REQUIRE(reread.size() == report.runs.size());
    for (std::size_t i = 0; i < reread.size(); ++i) {
        CHECK(reread[i].best == report.runs[i].best);
        CHECK(reread[i].error == report.runs[i].error);
    }

    std::ifstream json_in(out / "summary.json");
    const auto doc = nlohmann::json::parse(json_in);
    CHECK(doc["cells"].size() == 4);
    CHECK(doc["tests"].size() == 1);
}

TEST_CASE("batches are deterministic and independent of worker count") {
    TempDir dir("aos_harness_determinism");
    write_tiny(dir.path);
    write_file(dir.path / "batch.txt", small_batch(""));
    BatchSpec spec = load_batch_spec((dir.path / "batch.txt").string());
    const BatchReport a = run_batch(spec);
    spec.jobs = 4;
    const BatchReport b = run_batch(spec);
    REQUIRE(a.runs.size() == b.runs.size());
    for (std::size_t i = 0; i < a.runs.size(); ++i) {
        CHECK(a.runs[i].best == b.runs[i].best);
        CHECK(a.runs[i].best_iteration == b.runs[i].best_iteration);
    }
}

TEST_CASE("runs csv round trip with quoting") {
    std::vector<RunRecord> runs(2);
    runs[0] = {"inst", "cfg,a", 0, 5, 3.0, 10, 100, ""};
    runs[1] = {"inst", "cfg\"b", 1, 6, 0.0, 0, 0, "bad, \"thing\""};
    std::stringstream io;
    write_runs_csv(io, runs);
    const auto back = read_runs_csv(io);
    REQUIRE(back.size() == 2);
    CHECK(back[0].config == "cfg,a");
    CHECK(back[0].best == 3.0);
    CHECK(back[1].config == "cfg\"b");
    CHECK(back[1].error == "bad, \"thing\"");
    std::istringstream bad("nope\n");
    CHECK_THROWS((void)read_runs_csv(bad));
}

TEST_CASE("summarize groups in first-seen order") {
    std::vector<RunRecord> runs;
    for (double v : {1.0, 2.0, 3.0}) runs.push_back({"i", "b", 0, 0, v, 0, 0, ""});
    for (double v : {10.0, 20.0, 30.0}) runs.push_back({"i", "a", 0, 0, v, 0, 0, ""});
    const BatchReport r = summarize(runs);
    REQUIRE(r.cells.size() == 2);
    CHECK(r.cells[0].config == "b");
    CHECK(r.cells[0].median == 2.0);
    CHECK(r.cells[0].std == 1.0);
    CHECK(r.cells[1].mean == 20.0);
    REQUIRE(r.tests.size() == 1);
    CHECK(r.tests[0].p_value == doctest::Approx(0.1));
}

TEST_CASE("instance labels") {
    CHECK(instance_label("/x/y/flat50-3.cnf") == "flat50-3");
    CHECK(instance_label("plain") == "plain");
}

TEST_CASE("figure data") {
    const std::vector<TraceRecord> trace{
        {0, "1111", 0, 0, 0.0, 0.5, 4.0, 3},
        {1, "0011", 0, 0, 1.5, 0.25, 3.5, 2},
        {2, "1111", 0, 0, 1.5, 0.125, 3.0, 2},
    };
    auto emit = [&](const char* kind) {
        std::ostringstream out;
        emit_figure_data(out, trace, parse_figure_kind(kind));
        return out.str();
    };
    CHECK(emit("op_frequency") == "# op count\n0011 1\n1111 2\n");
    CHECK(emit("entropy_series") == "# iteration entropy\n0 0.5\n1 0.25\n2 0.125\n");
    CHECK(emit("theta_series") == "# iteration theta\n0 0\n1 1.5\n2 1.5\n");
    CHECK(emit("fitness_series") == "# iteration mean_q best\n0 4 3\n1 3.5 2\n2 3 2\n");
    CHECK_THROWS_AS((void)parse_figure_kind("histogram"), std::invalid_argument);
}
