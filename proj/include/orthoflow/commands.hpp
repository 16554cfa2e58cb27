#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orthoflow/flow.hpp"
#include "orthoflow/morse.hpp"
#include "orthoflow/params.hpp"

namespace orthoflow {

enum class Family { ContinuousHahn, Wilson, Jacobi, ContinuousHahnEven, ContinuousHahnOdd };
enum class InitKind { Zeros, Equispaced, Custom };
enum class OutputFormat { Csv, Json };

Family parse_family(std::string_view name);
std::string_view family_name(Family f) noexcept;

/// Parameter names expected for a family, in order.
std::vector<std::string> parameter_names(Family f);

struct RunConfig {
  Family family = Family::ContinuousHahn;
  unsigned n = 0;  // full polynomial degree, also for the reduced families
  std::vector<std::pair<std::string, Complex>> params;
  /// Unset means zeros, except equispaced for jacobi.
  std::optional<InitKind> init;
  std::vector<double> x0;  // used with InitKind::Custom
  double t_max = 30.0;
  double step = 0.01;
  double grad_tol = 1e-12;
  unsigned record_every = 1;
  std::string output;
  OutputFormat format = OutputFormat::Csv;
  std::optional<int> precision;
  std::optional<std::pair<double, double>> window;
  std::optional<double> noise_floor;

  FlowSettings flow_settings() const;
};

/// Checks parameter names and count, degree, parity and the initial condition.
/// Throws ValidationError subclasses.
void validate(const RunConfig& cfg);

PotentialKind make_kind(const RunConfig& cfg);

/// Initial state in the coordinates of make_kind(cfg): n values for the full
/// families, the positive half for the reduced ones.
Configuration initial_state(const RunConfig& cfg);

/// Full sorted root vector from a state of make_kind(cfg).
Configuration full_configuration(const RunConfig& cfg, const Configuration& state);

/// "<stem>.logerr.csv" for "<stem>.csv" (or for any other path, path + ".logerr.csv").
std::string logerr_path(const std::string& output);

/// Each command writes its report to `out` and returns the exit status.
/// Library errors propagate as exceptions; run_command maps them.
int cmd_roots(const RunConfig& cfg, std::ostream& out);
int cmd_flow(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_rate(const RunConfig& cfg, std::ostream& out);

enum class Command { Roots, Flow, Verify, Rate };

/// Runs a command; reports exceptions on `err` and returns 0, 2 or 3.
int run_command(Command command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace orthoflow
