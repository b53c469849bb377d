#pragma once

// Command-line front end. Kept as a library so tests can drive it in-process.

#include "surfstokes/benchmark.hpp"
#include "surfstokes/complexity.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace surfstokes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

/// Every setting a command can read. Defaults < config file < flags.
struct RunConfig {
    std::string shape = "biconcave"; ///< sphere | biconcave
    double radius = 1.0;
    double c = 0.95;
    double d = 0.96;
    int base_level = kDefaultBaseLevel;
    bool smooth = false;
    std::optional<int> quadrature_degree;
    std::optional<double> eta_override;
    std::string solver_kind = "direct";
    double solver_tol = 1e-10;
    std::vector<int> levels{0, 1, 2, 3};
    std::vector<int> orders{2, 3};
    std::vector<std::string> formulations{"th", "sf"};
    std::string output_dir = ".";
    std::string output_file;

    bool operator==(const RunConfig&) const = default;

    [[nodiscard]] LevelSetField field() const;
    [[nodiscard]] StokesOptions stokes_options() const;
};

/// All recognised keys, in dump order.
[[nodiscard]] const std::vector<std::string>& config_keys();

/// "key = value" lines; '#' starts a comment. Unknown keys and malformed values
/// raise ConfigError naming the line.
[[nodiscard]] RunConfig parse_config(const std::string& text, RunConfig base = {});
[[nodiscard]] RunConfig load_config(const std::string& path, RunConfig base = {});
/// Canonical text of every key; parse_config(dump_config(c)) == c.
[[nodiscard]] std::string dump_config(const RunConfig& cfg);
/// Sets one key from its textual value.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// "0..3", "1,2,4" or a single integer.
[[nodiscard]] std::vector<int> parse_int_list(const std::string& text);

/// Text dump of a velocity/pressure pair at the velocity nodes: one line per node,
/// "x y z ux uy uz p".
[[nodiscard]] std::string field_dump(const VectorSpace& velocity_space, const VecX& u,
                                     const ScalarSpace& pressure_space, const VecX& p);

/// Runs the tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace surfstokes::cli
