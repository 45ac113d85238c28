#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aos/engine.hpp"

namespace aos {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct KeyValue {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

/// Flat `key = value` lines; '#' starts a comment, blank lines are ignored.
[[nodiscard]] std::vector<KeyValue> parse_key_values(std::istream& in);

/// Angles accept plain radians or the forms "pi", "pi/2", "pi/4", "3*pi/8"...
[[nodiscard]] double parse_angle(std::string_view text);

/// Operator lists are comma or space separated codes. "@experiment" expands to the twenty
/// experiment operators and "@nulls:N" to the codes 7000..70(N-1).
[[nodiscard]] std::vector<std::string> parse_operator_list(std::string_view text);

/// Applies one setting. Keys: twin fwin tprime_win fprime_win p_min beta c alpha method
/// strategy theta epochs entropy_threshold stagnation_limit stagnation_wins reactive_swap
/// tabu tabu_fraction memetic_flip_budget standalone_flip_budget population_size
/// max_iterations operators selection rates seed initial_population early_exit instance.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

[[nodiscard]] RunConfig parse_run_config(std::istream& in, RunConfig base = {});
[[nodiscard]] RunConfig load_run_config(const std::string& path, RunConfig base = {});

/// Defaults used by the CLI when no operator list is given: the twenty experiment operators.
[[nodiscard]] RunConfig default_run_config();

/// Writes the config back as key-value text accepted by parse_run_config.
void write_run_config(std::ostream& out, const RunConfig& config);

} // namespace aos
