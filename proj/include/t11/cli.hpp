#pragma once

// Batch verification front end: configuration, reports and grid output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "t11/flow.hpp"

namespace t11::cli {

enum class Command { VerifyContact, VerifyEinstein, VerifyFlow, EmitGrid };

std::string to_string(Command c);
/// "verify contact", "verify einstein", "verify flow", "emit grid".
Command parse_command(const std::string& verb, const std::string& target);

/// Bad flags, unknown config keys, out-of-range values. Exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::VerifyContact;
  Family family = Family::None;
  double c1 = 0.0;
  double c2 = 0.0;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  double eps_theta = 0.1;
  /// Unset means the default for the derivative mode.
  std::optional<double> tol;
  DerivativeMode deriv = DerivativeMode::Jets;
  std::vector<double> t_values{0.0, 0.1, 0.5};
  double dt = 1e-3;
  Integrator integrator = Integrator::RK4;
  std::string out_format;  // empty: json for verify, csv for emit
  std::string out_path;    // empty: stdout
  /// Points per axis of the (theta1, theta2) grid for emit grid.
  int grid = 16;
  bool timing = true;

  double effective_tol() const;
  std::string effective_format() const;
  /// Throws UsageError.
  void validate() const;
};

inline constexpr double kDefaultTolJets = 1e-7;
inline constexpr double kDefaultTolFd = 1e-4;
/// Tolerance of the integrator comparison in verify flow.
inline constexpr double kIntegratorTol = 1e-6;

/// Config keys accepted in a JSON config file.
const std::vector<std::string>& config_keys();

/// Overlays the keys of j onto cfg. Unknown keys and wrong types throw UsageError.
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config(const std::string& path, RunConfig base = {});

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

struct Check {
  std::string name;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct Report {
  RunConfig config;
  std::size_t n_points = 0;
  std::vector<Check> checks;
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();
  double wall_time_s = 0.0;

  /// True iff every check passes (and there is at least one).
  bool pass() const;
  nlohmann::ordered_json to_json() const;
};

Report verify_contact(const RunConfig& cfg);
Report verify_einstein(const RunConfig& cfg);
Report verify_flow(const RunConfig& cfg);

/// Rows (theta1, theta2, component, value) over an n x n grid in
/// [eps, pi - eps]^2 at psi = 0, phi1 = phi2 = pi / 3. Components are the
/// upper-triangle metric entries followed by the Einstein residual.
struct GridRow {
  double theta1;
  double theta2;
  std::string component;
  double value;
};

std::vector<std::string> grid_components();
std::vector<GridRow> emit_grid(const RunConfig& cfg);
std::string grid_to_csv(const std::vector<GridRow>& rows);
std::string grid_to_json(const std::vector<GridRow>& rows);

/// Runs the command and writes its output to cfg.out_path or out.
/// Returns 0 on pass, 1 on check failure, 2 on usage errors, 3 on
/// definiteness, cone or step failures; messages go to err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace t11::cli
