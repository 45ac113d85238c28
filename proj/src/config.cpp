#include "aos/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include "aos/trace_io.hpp"

namespace aos {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
    double value = 0.0;
    const auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("'" + std::string(key) + "': expected a number, got '" + std::string(text) + "'");
    return value;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view text) {
    std::uint64_t value = 0;
    const auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError("'" + std::string(key) + "': expected a non-negative integer, got '" + std::string(text) +
                          "'");
    return value;
}

bool to_bool(std::string_view key, std::string_view text) {
    const auto t = trim(text);
    if (t == "1" || t == "true" || t == "on" || t == "yes") return true;
    if (t == "0" || t == "false" || t == "off" || t == "no") return false;
    throw ConfigError("'" + std::string(key) + "': expected a boolean, got '" + std::string(text) + "'");
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) items.push_back(text.substr(i, j - i));
        i = j;
    }
    return items;
}

template <typename Fn>
auto wrap(std::string_view key, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError("'" + std::string(key) + "': " + e.what());
    }
}

} // namespace

std::vector<KeyValue> parse_key_values(std::istream& in) {
    std::vector<KeyValue> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        out.push_back({std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1))), line_no});
    }
    return out;
}

double parse_angle(std::string_view text) {
    const auto t = trim(text);
    const auto pi_pos = t.find("pi");
    if (pi_pos == std::string_view::npos) return to_double("angle", t);

    double factor = 1.0;
    auto head = trim(t.substr(0, pi_pos));
    if (!head.empty()) {
        if (head.back() != '*') throw ConfigError("malformed angle '" + std::string(text) + "'");
        head.remove_suffix(1);
        factor = to_double("angle", head);
    }
    auto tail = trim(t.substr(pi_pos + 2));
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') throw ConfigError("malformed angle '" + std::string(text) + "'");
        tail.remove_prefix(1);
        divisor = to_double("angle", tail);
        if (divisor == 0.0) throw ConfigError("angle divides by zero");
    }
    return factor * std::numbers::pi / divisor;
}

std::vector<std::string> parse_operator_list(std::string_view text) {
    std::vector<std::string> codes;
    for (std::string_view item : split_list(text)) {
        if (item == "@experiment") {
            for (const auto& op : experiment_operator_set()) codes.push_back(op.spec.code);
        } else if (item.starts_with("@nulls:")) {
            const auto n = to_unsigned("operators", item.substr(7));
            for (unsigned i = 0; i < n; ++i) codes.push_back(null_operator_code(i));
        } else {
            codes.push_back(decode(item).code);
        }
    }
    return codes;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
    wrap(key, [&] {
        auto& ctl = config.controller;
        auto& st = config.strategy;
        if (key == "twin") ctl.twin = to_unsigned(key, value);
        else if (key == "fwin") ctl.fwin = parse_aggregator(trim(value));
        else if (key == "tprime_win") ctl.tprime_win = to_unsigned(key, value);
        else if (key == "fprime_win") ctl.fprime_win = parse_aggregator(trim(value));
        else if (key == "p_min") ctl.p_min = to_double(key, value);
        else if (key == "beta") ctl.beta = to_double(key, value);
        else if (key == "c") ctl.c = to_double(key, value);
        else if (key == "alpha") {
            if (trim(value) == "running-mean" || trim(value) == "running_mean") ctl.alpha.reset();
            else ctl.alpha = to_double(key, value);
        } else if (key == "method") ctl.method = parse_selection_method(trim(value));
        else if (key == "strategy") st.kind = parse_strategy_kind(trim(value));
        else if (key == "theta") st.theta = parse_angle(value);
        else if (key == "epochs") st.epochs = to_unsigned(key, value);
        else if (key == "entropy_threshold") st.entropy_threshold = to_double(key, value);
        else if (key == "stagnation_limit") st.stagnation_limit = to_unsigned(key, value);
        else if (key == "stagnation_wins") st.stagnation_wins = to_bool(key, value);
        else if (key == "reactive_swap") st.reactive_swap = to_bool(key, value);
        else if (key == "tabu") config.tabu.mode = parse_tabu_mode(trim(value));
        else if (key == "tabu_fraction") config.tabu.fraction = to_double(key, value);
        else if (key == "memetic_flip_budget") config.tabu.memetic_flip_budget = to_unsigned(key, value);
        else if (key == "standalone_flip_budget") config.tabu.standalone_flip_budget = to_unsigned(key, value);
        else if (key == "population_size") config.population_size = to_unsigned(key, value);
        else if (key == "max_iterations") config.max_iterations = to_unsigned(key, value);
        else if (key == "operators") config.operator_codes = parse_operator_list(value);
        else if (key == "selection") config.selection = parse_selection_mode(trim(value));
        else if (key == "rates") {
            config.rates.clear();
            for (auto item : split_list(value)) config.rates.push_back(to_double(key, item));
        } else if (key == "seed") config.seed = to_unsigned(key, value);
        else if (key == "initial_population") config.initial_population_path = std::string(trim(value));
        else if (key == "early_exit") config.early_exit = to_bool(key, value);
        else if (key == "instance") config.formula_path = std::string(trim(value));
        else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    });
}

RunConfig parse_run_config(std::istream& in, RunConfig base) {
    for (const KeyValue& kv : parse_key_values(in)) {
        try {
            apply_setting(base, kv.key, kv.value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(kv.line) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    return parse_run_config(in, std::move(base));
}

RunConfig default_run_config() {
    RunConfig config;
    for (const auto& op : experiment_operator_set()) config.operator_codes.push_back(op.spec.code);
    return config;
}

void write_run_config(std::ostream& out, const RunConfig& c) {
    auto join = [](const auto& items, auto&& fmt) {
        std::string s;
        for (const auto& item : items) {
            if (!s.empty()) s += ',';
            s += fmt(item);
        }
        return s;
    };
    if (!c.formula_path.empty()) out << "instance = " << c.formula_path << '\n';
    out << "population_size = " << c.population_size << '\n'
        << "max_iterations = " << c.max_iterations << '\n'
        << "operators = " << join(c.operator_codes, [](const std::string& s) { return s; }) << '\n'
        << "selection = " << to_string(c.selection) << '\n';
    if (!c.rates.empty()) out << "rates = " << join(c.rates, [](double r) { return format_double(r); }) << '\n';
    out << "method = " << to_string(c.controller.method) << '\n'
        << "twin = " << c.controller.twin << '\n'
        << "fwin = " << to_string(c.controller.fwin) << '\n'
        << "tprime_win = " << c.controller.tprime_win << '\n'
        << "fprime_win = " << to_string(c.controller.fprime_win) << '\n'
        << "p_min = " << format_double(c.controller.p_min) << '\n'
        << "beta = " << format_double(c.controller.beta) << '\n'
        << "c = " << format_double(c.controller.c) << '\n'
        << "alpha = " << (c.controller.alpha ? format_double(*c.controller.alpha) : std::string("running-mean")) << '\n'
        << "strategy = " << to_string(c.strategy.kind) << '\n'
        << "theta = " << format_double(c.strategy.theta) << '\n'
        << "epochs = " << c.strategy.epochs << '\n'
        << "entropy_threshold = " << format_double(c.strategy.entropy_threshold) << '\n'
        << "stagnation_limit = " << c.strategy.stagnation_limit << '\n'
        << "stagnation_wins = " << (c.strategy.stagnation_wins ? "true" : "false") << '\n'
        << "reactive_swap = " << (c.strategy.reactive_swap ? "true" : "false") << '\n'
        << "tabu = " << to_string(c.tabu.mode) << '\n'
        << "tabu_fraction = " << format_double(c.tabu.fraction) << '\n'
        << "memetic_flip_budget = " << c.tabu.memetic_flip_budget << '\n'
        << "standalone_flip_budget = " << c.tabu.standalone_flip_budget << '\n'
        << "seed = " << c.seed << '\n'
        << "early_exit = " << (c.early_exit ? "true" : "false") << '\n';
    if (!c.initial_population_path.empty()) out << "initial_population = " << c.initial_population_path << '\n';
}

} // namespace aos
