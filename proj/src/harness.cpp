#include "aos/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "aos/config.hpp"
#include "aos/stats.hpp"
#include "aos/trace_io.hpp"

namespace fs = std::filesystem;

namespace aos {

void BatchSpec::validate() const {
    if (runs < 1) throw std::invalid_argument("runs must be at least 1");
    if (instances.empty()) throw std::invalid_argument("batch has no instances");
    if (configs.empty()) throw std::invalid_argument("batch has no configurations");
    for (std::size_t i = 0; i < configs.size(); ++i)
        for (std::size_t j = i + 1; j < configs.size(); ++j)
            if (configs[i].name == configs[j].name)
                throw std::invalid_argument("duplicate configuration name '" + configs[i].name + "'");
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    if (base_dir.empty() || path.empty() || fs::path(path).is_absolute()) return path;
    return (fs::path(base_dir) / path).string();
}

bool parse_bool_value(const std::string& v) {
    if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "off" || v == "no") return false;
    throw ConfigError("expected a boolean, got '" + v + "'");
}

} // namespace

BatchSpec parse_batch_spec(std::istream& in, const std::string& base_dir) {
    BatchSpec spec;
    NamedConfig* section = nullptr;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) { throw ConfigError("batch line " + std::to_string(line_no) + ": " + msg); };

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string text = line.substr(first, last - first + 1);

        if (text.front() == '[') {
            if (text.back() != ']' || text.rfind("[config ", 0) != 0) fail("expected '[config NAME]'");
            std::string name = text.substr(8, text.size() - 9);
            name.erase(0, name.find_first_not_of(' '));
            name.erase(name.find_last_not_of(' ') + 1);
            if (name.empty()) fail("configuration name is empty");
            spec.configs.push_back({name, default_run_config()});
            section = &spec.configs.back();
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail("expected 'key = value'");
        std::string key = text.substr(0, eq);
        std::string value = text.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));

        try {
            if (section) {
                if (key == "config_file") section->config = load_run_config(resolve(base_dir, value), section->config);
                else if (key == "initial_population") apply_setting(section->config, key, resolve(base_dir, value));
                else apply_setting(section->config, key, value);
                continue;
            }
            if (key == "instance") spec.instances.push_back(resolve(base_dir, value));
            else if (key == "runs") spec.runs = std::stoul(value);
            else if (key == "base_seed") spec.base_seed = std::stoull(value);
            else if (key == "output_dir") spec.output_dir = resolve(base_dir, value);
            else if (key == "jobs") spec.jobs = std::max<std::size_t>(1, std::stoul(value));
            else if (key == "write_traces") spec.write_traces = parse_bool_value(value);
            else fail("unknown batch key '" + key + "'");
        } catch (const ConfigError& e) {
            if (std::string(e.what()).rfind("batch line", 0) == 0) throw;
            fail(e.what());
        } catch (const std::logic_error& e) {
            fail("bad value for '" + key + "': " + e.what());
        }
    }
    spec.validate();
    return spec;
}

BatchSpec load_batch_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open batch file " + path);
    return parse_batch_spec(in, fs::path(path).parent_path().string());
}

const CellSummary* BatchReport::find(std::string_view instance, std::string_view config) const {
    for (const CellSummary& cell : cells)
        if (cell.instance == instance && cell.config == config) return &cell;
    return nullptr;
}

std::string instance_label(const std::string& path) { return fs::path(path).stem().string(); }

BatchReport summarize(std::vector<RunRecord> runs) {
    BatchReport report;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (const RunRecord& r : runs) {
        const auto key = std::make_pair(r.instance, r.config);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, report.cells.size()).first;
            report.cells.push_back(CellSummary{r.instance, r.config, {}, 0, 0.0, 0.0, 0.0, 0.0});
        }
        CellSummary& cell = report.cells[it->second];
        if (r.ok()) cell.bests.push_back(r.best);
        else ++cell.failures;
    }
    for (CellSummary& cell : report.cells) {
        if (cell.bests.empty()) {
            cell.min = cell.std = cell.median = cell.mean = std::nan("");
            continue;
        }
        cell.min = minimum(cell.bests);
        cell.std = sample_std(cell.bests);
        cell.median = median(cell.bests);
        cell.mean = mean(cell.bests);
    }
    for (std::size_t i = 0; i < report.cells.size(); ++i)
        for (std::size_t j = i + 1; j < report.cells.size(); ++j) {
            const CellSummary& a = report.cells[i];
            const CellSummary& b = report.cells[j];
            if (a.instance != b.instance || a.bests.empty() || b.bests.empty()) continue;
            const RankSumResult test = wilcoxon_ranksum_test(a.bests, b.bests);
            report.tests.push_back({a.instance, a.config, b.config, test.p_value, test.exact});
        }
    report.runs = std::move(runs);
    return report;
}

BatchReport run_batch(const BatchSpec& spec) {
    spec.validate();

    std::vector<std::shared_ptr<const CnfFormula>> formulas;
    std::vector<std::string> load_errors;
    for (const auto& path : spec.instances) {
        try {
            formulas.push_back(std::make_shared<const CnfFormula>(load_dimacs_file(path)));
            load_errors.emplace_back();
        } catch (const std::exception& e) {
            formulas.push_back(nullptr);
            load_errors.emplace_back(e.what());
        }
    }

    const fs::path out_dir(spec.output_dir);
    const bool writing = !spec.output_dir.empty();
    if (writing) {
        fs::create_directories(out_dir);
        if (spec.write_traces) fs::create_directories(out_dir / "traces");
    }

    struct Job {
        std::size_t instance;
        std::size_t config;
        std::size_t run;
    };
    std::vector<Job> jobs;
    for (std::size_t i = 0; i < spec.instances.size(); ++i)
        for (std::size_t c = 0; c < spec.configs.size(); ++c)
            for (std::size_t r = 0; r < spec.runs; ++r) jobs.push_back({i, c, r});

    std::vector<RunRecord> records(jobs.size());
    auto execute = [&](std::size_t j) {
        const Job& job = jobs[j];
        RunRecord& rec = records[j];
        rec.instance = instance_label(spec.instances[job.instance]);
        rec.config = spec.configs[job.config].name;
        rec.run = job.run;
        rec.seed = spec.base_seed + job.run;
        if (!formulas[job.instance]) {
            rec.error = load_errors[job.instance];
            return;
        }
        try {
            RunConfig config = spec.configs[job.config].config;
            config.seed = rec.seed;
            config.formula_path = spec.instances[job.instance];
            config.keep_trace = writing && spec.write_traces;
            const RunResult result = run(*formulas[job.instance], config);
            rec.best = static_cast<double>(result.best_false_count);
            rec.best_iteration = result.best_iteration;
            rec.iterations = result.iterations;
            if (config.keep_trace) {
                const std::string name = rec.instance + "__" + rec.config + "__run" + std::to_string(rec.run) + ".csv";
                save_trace((out_dir / "traces" / name).string(), result.trace);
            }
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
    };

    const std::size_t workers = std::min(spec.jobs, jobs.size());
    if (workers <= 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) execute(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t j = next++; j < jobs.size(); j = next++) execute(j);
            });
    }

    BatchReport report = summarize(std::move(records));
    if (writing) {
        auto open = [&](const char* name) {
            std::ofstream f(out_dir / name);
            if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
            return f;
        };
        auto runs_csv = open("runs.csv");
        write_runs_csv(runs_csv, report.runs);
        auto summary_csv = open("summary.csv");
        write_summary_csv(summary_csv, report.cells);
        auto summary_json = open("summary.json");
        write_summary_json(summary_json, report);
        auto pvalues_csv = open("pvalues.csv");
        write_pvalues_csv(pvalues_csv, report.tests);
    }
    return report;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

} // namespace

void write_runs_csv(std::ostream& out, std::span<const RunRecord> runs) {
    out << "instance,config,run,seed,best,best_iteration,iterations,error\n";
    for (const RunRecord& r : runs)
        out << csv_escape(r.instance) << ',' << csv_escape(r.config) << ',' << r.run << ',' << r.seed << ','
            << (r.ok() ? format_double(r.best) : std::string()) << ',' << r.best_iteration << ',' << r.iterations
            << ',' << csv_escape(r.error) << '\n';
}

std::vector<RunRecord> read_runs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("instance,config,run,seed,best", 0) != 0)
        throw std::runtime_error("not a runs CSV (missing header)");
    std::vector<RunRecord> runs;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8) throw std::runtime_error("runs CSV line " + std::to_string(line_no) + ": expected 8 fields");
        RunRecord r;
        r.instance = f[0];
        r.config = f[1];
        r.run = std::stoul(f[2]);
        r.seed = std::stoull(f[3]);
        r.error = f[7];
        if (r.ok()) r.best = std::stod(f[4]);
        r.best_iteration = std::stoull(f[5]);
        r.iterations = std::stoull(f[6]);
        runs.push_back(std::move(r));
    }
    return runs;
}

void write_summary_csv(std::ostream& out, std::span<const CellSummary> cells) {
    out << "instance,config,runs,failures,min,std,median,mean\n";
    for (const CellSummary& c : cells)
        out << csv_escape(c.instance) << ',' << csv_escape(c.config) << ',' << c.bests.size() << ',' << c.failures
            << ',' << format_double(c.min) << ',' << format_double(c.std) << ',' << format_double(c.median) << ','
            << format_double(c.mean) << '\n';
}

void write_summary_json(std::ostream& out, const BatchReport& report) {
    auto number = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    nlohmann::json doc;
    doc["cells"] = nlohmann::json::array();
    for (const CellSummary& c : report.cells)
        doc["cells"].push_back({{"instance", c.instance},
                                {"config", c.config},
                                {"bests", c.bests},
                                {"failures", c.failures},
                                {"min", number(c.min)},
                                {"std", number(c.std)},
                                {"median", number(c.median)},
                                {"mean", number(c.mean)}});
    doc["tests"] = nlohmann::json::array();
    for (const PairwiseTest& t : report.tests)
        doc["tests"].push_back({{"instance", t.instance},
                                {"config_a", t.config_a},
                                {"config_b", t.config_b},
                                {"p_value", t.p_value},
                                {"exact", t.exact}});
    out << doc.dump(2) << '\n';
}

void write_pvalues_csv(std::ostream& out, std::span<const PairwiseTest> tests) {
    out << "instance,config_a,config_b,p_value,exact\n";
    for (const PairwiseTest& t : tests)
        out << csv_escape(t.instance) << ',' << csv_escape(t.config_a) << ',' << csv_escape(t.config_b) << ','
            << format_double(t.p_value) << ',' << (t.exact ? "exact" : "normal") << '\n';
}

FigureKind parse_figure_kind(std::string_view name) {
    if (name == "op_frequency") return FigureKind::OpFrequency;
    if (name == "entropy_series") return FigureKind::EntropySeries;
    if (name == "theta_series") return FigureKind::ThetaSeries;
    if (name == "fitness_series") return FigureKind::FitnessSeries;
    throw std::invalid_argument("unknown figure kind '" + std::string(name) +
                                "' (op_frequency|entropy_series|theta_series|fitness_series)");
}

void emit_figure_data(std::ostream& out, std::span<const TraceRecord> trace, FigureKind kind) {
    switch (kind) {
    case FigureKind::OpFrequency: {
        std::map<std::string, std::uint64_t> counts;
        for (const TraceRecord& r : trace) ++counts[r.op];
        out << "# op count\n";
        for (const auto& [op, count] : counts) out << op << ' ' << count << '\n';
        break;
    }
    case FigureKind::EntropySeries:
        out << "# iteration entropy\n";
        for (const TraceRecord& r : trace) out << r.iteration << ' ' << format_double(r.entropy) << '\n';
        break;
    case FigureKind::ThetaSeries:
        out << "# iteration theta\n";
        for (const TraceRecord& r : trace) out << r.iteration << ' ' << format_double(r.theta) << '\n';
        break;
    case FigureKind::FitnessSeries:
        out << "# iteration mean_q best\n";
        for (const TraceRecord& r : trace)
            out << r.iteration << ' ' << format_double(r.mean_q) << ' ' << r.best << '\n';
        break;
    }
}

} // namespace aos
