// aossat: command-line front end for the adaptive-operator-selection SAT solver.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aos/cnf.hpp"
#include "aos/config.hpp"
#include "aos/engine.hpp"
#include "aos/generators.hpp"
#include "aos/harness.hpp"
#include "aos/stats.hpp"
#include "aos/trace_io.hpp"

namespace {

constexpr int kExitSatisfied = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudgetExhausted = 10;

struct SolveArgs {
    std::string instance;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> max_iterations;
    std::string trace_path;
    bool print_assignment = false;
};

int cmd_solve(const SolveArgs& args) {
    aos::RunConfig config = aos::default_run_config();
    if (!args.config_path.empty()) config = aos::load_run_config(args.config_path, config);
    if (args.seed) config.seed = *args.seed;
    if (args.max_iterations) config.max_iterations = *args.max_iterations;
    config.formula_path = args.instance;
    config.keep_trace = !args.trace_path.empty();

    const aos::CnfFormula formula = aos::load_dimacs_file(args.instance);
    const aos::RunResult result = aos::run(formula, config);
    if (!args.trace_path.empty()) aos::save_trace(args.trace_path, result.trace);

    std::cout << "c instance " << args.instance << " (" << formula.num_variables() << " vars, "
              << formula.num_clauses() << " clauses)\n"
              << "c seed " << config.seed << "\n"
              << "c iterations " << result.iterations << "\n"
              << "c best_false_clauses " << result.best_false_count << " at iteration " << result.best_iteration
              << "\n";
    for (std::size_t i = 0; i < result.operator_codes.size(); ++i)
        std::cout << "c applied " << result.operator_codes[i] << ' ' << result.application_counts[i] << '\n';
    std::cout << (result.solved() ? "s SATISFIABLE" : "s UNKNOWN") << '\n';
    if (args.print_assignment || result.solved()) {
        std::cout << 'v';
        for (std::size_t v = 0; v < result.best_assignment.size(); ++v)
            std::cout << ' ' << (result.best_assignment[v] ? "" : "-") << v + 1;
        std::cout << " 0\n";
    }
    return result.solved() ? kExitSatisfied : kExitBudgetExhausted;
}

int cmd_batch(const std::string& spec_path, std::optional<std::size_t> jobs) {
    aos::BatchSpec spec = aos::load_batch_spec(spec_path);
    if (jobs) spec.jobs = *jobs;
    const aos::BatchReport report = aos::run_batch(spec);
    aos::write_summary_csv(std::cout, report.cells);
    if (!report.tests.empty()) {
        std::cout << '\n';
        aos::write_pvalues_csv(std::cout, report.tests);
    }
    for (const auto& r : report.runs)
        if (!r.ok()) std::cerr << "run failed: " << r.instance << '/' << r.config << '#' << r.run << ": " << r.error << '\n';
    return kExitSatisfied;
}

std::map<std::string, std::vector<double>> bests_by_instance(const std::string& path, const std::string& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::map<std::string, std::vector<double>> out;
    for (const auto& r : aos::read_runs_csv(in))
        if (r.ok() && (config.empty() || r.config == config)) out[r.instance].push_back(r.best);
    return out;
}

int cmd_stats(const std::string& a, const std::string& b, const std::string& config_a, const std::string& config_b) {
    const auto samples_a = bests_by_instance(a, config_a);
    const auto samples_b = bests_by_instance(b, config_b);
    std::cout << "instance,n_a,n_b,median_a,median_b,min_a,min_b,p_value,mode\n";
    for (const auto& [instance, xs] : samples_a) {
        const auto it = samples_b.find(instance);
        if (it == samples_b.end()) continue;
        const auto& ys = it->second;
        const aos::RankSumResult test = aos::wilcoxon_ranksum_test(xs, ys);
        std::cout << instance << ',' << xs.size() << ',' << ys.size() << ',' << aos::format_double(aos::median(xs))
                  << ',' << aos::format_double(aos::median(ys)) << ',' << aos::format_double(aos::minimum(xs)) << ','
                  << aos::format_double(aos::minimum(ys)) << ',' << aos::format_double(test.p_value) << ','
                  << (test.exact ? "exact" : "normal") << '\n';
    }
    return kExitSatisfied;
}

int cmd_figdata(const std::string& trace_path, const std::string& kind, const std::string& out_path) {
    const aos::FigureKind figure = aos::parse_figure_kind(kind);
    const auto trace = aos::load_trace(trace_path);
    if (out_path.empty()) {
        aos::emit_figure_data(std::cout, trace, figure);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        aos::emit_figure_data(out, trace, figure);
    }
    return kExitSatisfied;
}

void emit_formula(const aos::CnfFormula& formula, const std::string& comment, const std::string& out_path) {
    if (out_path.empty()) {
        aos::write_dimacs(std::cout, formula, comment);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    aos::write_dimacs(out, formula, comment);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive operator selection for a steady-state evolutionary SAT solver"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run the solver on one DIMACS instance");
    solve_cmd->add_option("instance", solve.instance, "DIMACS CNF file")->required();
    solve_cmd->add_option("--config", solve.config_path, "Key-value run configuration");
    solve_cmd->add_option("--seed", solve.seed, "Random seed (overrides the config)");
    solve_cmd->add_option("--max-iterations", solve.max_iterations, "Iteration budget (overrides the config)");
    solve_cmd->add_option("--trace", solve.trace_path, "Write the per-iteration trace (.csv, or .bin for binary)");
    solve_cmd->add_flag("--print-assignment", solve.print_assignment, "Print the best assignment even if unsatisfied");

    std::string batch_spec;
    std::optional<std::size_t> batch_jobs;
    auto* batch_cmd = app.add_subcommand("batch", "Run a batch of experiments described by a spec file");
    batch_cmd->add_option("spec", batch_spec, "Batch spec file")->required();
    batch_cmd->add_option("--jobs", batch_jobs, "Concurrent runs (overrides the spec)");

    std::string report_a, report_b, stats_config_a, stats_config_b;
    auto* stats_cmd = app.add_subcommand("stats", "Rank-sum comparison of per-run bests from two runs.csv reports");
    stats_cmd->add_option("report_a", report_a, "First runs.csv")->required();
    stats_cmd->add_option("report_b", report_b, "Second runs.csv")->required();
    stats_cmd->add_option("--config-a", stats_config_a, "Only use this configuration from the first report");
    stats_cmd->add_option("--config-b", stats_config_b, "Only use this configuration from the second report");

    std::string trace_path, figure_kind, figure_out;
    auto* fig_cmd = app.add_subcommand("figdata", "Extract plot-ready columns from a trace");
    fig_cmd->add_option("trace", trace_path, "Trace file (.csv or .bin)")->required();
    fig_cmd->add_option("--kind", figure_kind, "op_frequency|entropy_series|theta_series|fitness_series")->required();
    fig_cmd->add_option("-o,--output", figure_out, "Output file (default stdout)");

    auto* gen_cmd = app.add_subcommand("generate", "Generate benchmark instances");
    gen_cmd->require_subcommand(1);
    std::size_t vertices = 50, edges = 115, colors = 3;
    std::size_t variables = 100, clauses = 430, width = 3;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* flat_cmd = gen_cmd->add_subcommand("flat", "Flat graph colouring instance with a planted colouring");
    flat_cmd->add_option("--vertices", vertices, "Vertices")->capture_default_str();
    flat_cmd->add_option("--edges", edges, "Edges")->capture_default_str();
    flat_cmd->add_option("--colors", colors, "Colours")->capture_default_str();
    flat_cmd->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    flat_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");
    auto* ksat_cmd = gen_cmd->add_subcommand("ksat", "Uniform random k-SAT instance");
    ksat_cmd->add_option("--vars", variables, "Variables")->capture_default_str();
    ksat_cmd->add_option("--clauses", clauses, "Clauses")->capture_default_str();
    ksat_cmd->add_option("--k", width, "Clause width")->capture_default_str();
    ksat_cmd->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
    ksat_cmd->add_option("-o,--output", gen_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve);
        if (*batch_cmd) return cmd_batch(batch_spec, batch_jobs);
        if (*stats_cmd) return cmd_stats(report_a, report_b, stats_config_a, stats_config_b);
        if (*fig_cmd) return cmd_figdata(trace_path, figure_kind, figure_out);
        if (*flat_cmd) {
            const auto graph = aos::generate_flat_graph(vertices, edges, colors, gen_seed);
            emit_formula(aos::encode_coloring(graph),
                         "flat graph colouring: " + std::to_string(vertices) + " vertices, " + std::to_string(edges) +
                             " edges, " + std::to_string(colors) + " colours, seed " + std::to_string(gen_seed),
                         gen_out);
            return kExitSatisfied;
        }
        if (*ksat_cmd) {
            emit_formula(aos::generate_random_ksat(variables, clauses, width, gen_seed),
                         "uniform random " + std::to_string(width) + "-SAT, seed " + std::to_string(gen_seed), gen_out);
            return kExitSatisfied;
        }
    } catch (const aos::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
