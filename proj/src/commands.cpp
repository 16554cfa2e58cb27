#include "orthoflow/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "orthoflow/cli_support.hpp"
#include "orthoflow/errors.hpp"
#include "orthoflow/jacobi_baseline.hpp"
#include "orthoflow/oracle.hpp"
#include "orthoflow/polyfactory.hpp"
#include "orthoflow/rates.hpp"

namespace orthoflow {
namespace {

using nlohmann::json;

bool is_reduced(Family f) {
  return f == Family::ContinuousHahnEven || f == Family::ContinuousHahnOdd;
}

Complex param(const RunConfig& cfg, const std::string& name) {
  for (const auto& [key, value] : cfg.params) {
    if (key == name) return value;
  }
  throw InvalidParameters("missing parameter '" + name + "' for family " +
                          std::string(family_name(cfg.family)));
}

ContinuousHahnParams ch_params(const RunConfig& cfg) { return {param(cfg, "a"), param(cfg, "b")}; }

WilsonParams wilson_params(const RunConfig& cfg) {
  return {param(cfg, "a"), param(cfg, "b"), param(cfg, "c"), param(cfg, "d")};
}

JacobiParams jacobi_params(const RunConfig& cfg) {
  return {param(cfg, "alpha").real(), param(cfg, "beta").real()};
}

InitKind effective_init(const RunConfig& cfg) {
  if (cfg.init) return *cfg.init;
  return cfg.family == Family::Jacobi ? InitKind::Equispaced : InitKind::Zeros;
}

// Full-length starting configuration before any reduction.
Configuration full_start(const RunConfig& cfg) {
  switch (effective_init(cfg)) {
    case InitKind::Zeros:
      return Configuration(cfg.n, 0.0);
    case InitKind::Equispaced: {
      if (cfg.family == Family::Jacobi) return equispaced_start(cfg.n);
      Configuration x(cfg.n);
      for (unsigned j = 0; j < cfg.n; ++j) x[j] = static_cast<double>(j) - 0.5 * (cfg.n - 1.0);
      return x;
    }
    case InitKind::Custom:
      break;
  }
  return cfg.x0;
}

json params_json(const RunConfig& cfg) {
  json out = json::object();
  for (const auto& [key, value] : cfg.params) {
    if (value.imag() == 0.0) {
      out[key] = value.real();
    } else {
      out[key] = {{"re", value.real()}, {"im", value.imag()}};
    }
  }
  return out;
}

void emit_json(const RunConfig& cfg, const json& doc, std::ostream& out) {
  out << doc.dump(2) << '\n';
  if (cfg.output.empty()) return;
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw InvalidParameters("cannot open '" + cfg.output + "' for writing");
  file << doc.dump(2) << '\n';
}

double min_eigenvalue(const PotentialKind& kind, const Configuration& x) {
  if (x.empty()) return std::nan("");
  return symmetric_eigenvalues(hessian(kind, x)).front();
}

// Flow from the configured start, followed by a Newton polish of the end state.
std::pair<Trajectory, Configuration> run_flow(const RunConfig& cfg, const PotentialKind& kind) {
  Trajectory traj = integrate(kind, initial_state(cfg), cfg.flow_settings());
  Configuration eq = newton_solve(kind, traj.states.back());
  return {std::move(traj), std::move(eq)};
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "ch") return Family::ContinuousHahn;
  if (name == "wilson") return Family::Wilson;
  if (name == "jacobi") return Family::Jacobi;
  if (name == "ch-even") return Family::ContinuousHahnEven;
  if (name == "ch-odd") return Family::ContinuousHahnOdd;
  throw InvalidParameters("unknown family '" + std::string(name) +
                          "' (expected ch, wilson, jacobi, ch-even or ch-odd)");
}

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::ContinuousHahn: return "ch";
    case Family::Wilson: return "wilson";
    case Family::Jacobi: return "jacobi";
    case Family::ContinuousHahnEven: return "ch-even";
    case Family::ContinuousHahnOdd: return "ch-odd";
  }
  return "?";
}

std::vector<std::string> parameter_names(Family f) {
  switch (f) {
    case Family::Wilson: return {"a", "b", "c", "d"};
    case Family::Jacobi: return {"alpha", "beta"};
    default: return {"a", "b"};
  }
}

FlowSettings RunConfig::flow_settings() const {
  FlowSettings s;
  s.step = step;
  s.t_max = t_max;
  s.grad_tol = grad_tol;
  s.record_every = record_every;
  return s;
}

void validate(const RunConfig& cfg) {
  const std::string fam(family_name(cfg.family));
  const auto names = parameter_names(cfg.family);
  for (const auto& [key, value] : cfg.params) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw InvalidParameters("parameter '" + key + "' does not apply to family " + fam);
    }
    if (std::count_if(cfg.params.begin(), cfg.params.end(),
                      [&](const auto& kv) { return kv.first == key; }) > 1) {
      throw InvalidParameters("parameter '" + key + "' given twice");
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw InvalidParameters("parameter '" + key + "' is not finite");
    }
  }
  if (cfg.params.size() != names.size()) {
    throw InvalidParameters("family " + fam + " takes " + std::to_string(names.size()) +
                            " parameters, got " + std::to_string(cfg.params.size()));
  }
  if (cfg.family == Family::Jacobi) {
    for (const char* key : {"alpha", "beta"}) {
      if (param(cfg, key).imag() != 0.0) {
        throw InvalidParameters(std::string("jacobi parameter ") + key + " must be real");
      }
    }
  }

  if (cfg.n < 1) throw InvalidParameters("degree n must be at least 1");
  if (cfg.n > kMaxDegree) {
    throw InvalidParameters("degree n exceeds the cap of " + std::to_string(kMaxDegree));
  }
  if (cfg.family == Family::ContinuousHahnEven && cfg.n % 2 != 0) {
    throw InvalidParameters("family ch-even needs an even degree");
  }
  if (cfg.family == Family::ContinuousHahnOdd && cfg.n % 2 != 1) {
    throw InvalidParameters("family ch-odd needs an odd degree");
  }
  if (!(cfg.step > 0.0) || !(cfg.t_max > 0.0) || !(cfg.grad_tol > 0.0) || cfg.record_every == 0) {
    throw InvalidParameters("step, t_max, grad_tol and record_every must be positive");
  }
  if (cfg.window && !(cfg.window->first < cfg.window->second)) {
    throw InvalidParameters("fit window must be increasing");
  }

  const InitKind init = effective_init(cfg);
  if (cfg.family == Family::Jacobi && init == InitKind::Zeros) {
    throw InvalidParameters("init=zeros is outside the ordered cell -1 < x_1 < ... < x_n < 1");
  }
  if (init == InitKind::Custom) {
    if (cfg.x0.size() != cfg.n) {
      throw InvalidParameters("custom initial condition has " + std::to_string(cfg.x0.size()) +
                              " values, expected " + std::to_string(cfg.n));
    }
    for (double v : cfg.x0) {
      if (!std::isfinite(v)) throw InvalidParameters("custom initial condition is not finite");
    }
    if (cfg.family == Family::Jacobi) {
      for (std::size_t j = 0; j < cfg.x0.size(); ++j) {
        const bool inside = cfg.x0[j] > -1.0 && cfg.x0[j] < 1.0;
        const bool ordered = j == 0 || cfg.x0[j - 1] < cfg.x0[j];
        if (!inside || !ordered) {
          throw InvalidParameters("jacobi start must satisfy -1 < x_1 < ... < x_n < 1");
        }
      }
    }
    Configuration sorted = cfg.x0;
    std::sort(sorted.begin(), sorted.end());
    if (is_reduced(cfg.family) && parity_defect(sorted) > 1e-12 * (1.0 + max_norm(sorted))) {
      throw InvalidParameters("reduced families need a start with x_j = -x_{n+1-j}");
    }
  }
  orthoflow::validate(make_kind(cfg));
}

PotentialKind make_kind(const RunConfig& cfg) {
  switch (cfg.family) {
    case Family::ContinuousHahn: return ContinuousHahnPotential{ch_params(cfg)};
    case Family::Wilson: return WilsonPotential{wilson_params(cfg)};
    case Family::Jacobi: return JacobiPotential{jacobi_params(cfg)};
    case Family::ContinuousHahnEven: return ReducedEvenPotential{ch_params(cfg)};
    case Family::ContinuousHahnOdd: return ReducedOddPotential{ch_params(cfg)};
  }
  throw InvalidParameters("unknown family");
}

Configuration initial_state(const RunConfig& cfg) {
  Configuration x = full_start(cfg);
  if (!is_reduced(cfg.family)) return x;
  std::sort(x.begin(), x.end());
  return restrict_to_half(x);
}

Configuration full_configuration(const RunConfig& cfg, const Configuration& state) {
  Configuration x = state;
  if (cfg.family == Family::ContinuousHahnEven) x = embed(Parity::Even, state);
  if (cfg.family == Family::ContinuousHahnOdd) x = embed(Parity::Odd, state);
  std::sort(x.begin(), x.end());
  return x;
}

std::string logerr_path(const std::string& output) {
  const std::string ext = ".csv";
  if (output.size() > ext.size() && output.compare(output.size() - ext.size(), ext.size(), ext) == 0) {
    return output.substr(0, output.size() - ext.size()) + ".logerr.csv";
  }
  return output + ".logerr.csv";
}

int cmd_roots(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const int digits = resolve_precision(cfg.precision);
  const PotentialKind kind = make_kind(cfg);
  Configuration eq = initial_state(cfg);
  if (!eq.empty()) eq = find_equilibrium(kind, std::move(eq), cfg.flow_settings());
  const Configuration roots = full_configuration(cfg, eq);

  for (double r : roots) out << format_fixed(r, digits) << '\n';
  if (cfg.output.empty()) return 0;

  json doc;
  doc["family"] = family_name(cfg.family);
  doc["n"] = cfg.n;
  doc["params"] = params_json(cfg);
  doc["roots"] = roots;
  doc["kappa_bound"] = kappa_bound_for(kind, eq);
  doc["hessian_min_eigenvalue"] = min_eigenvalue(kind, eq);
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw InvalidParameters("cannot open '" + cfg.output + "' for writing");
  file << doc.dump(2) << '\n';
  return 0;
}

int cmd_flow(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const PotentialKind kind = make_kind(cfg);
  if (initial_state(cfg).empty()) throw InvalidParameters("reduced flow has no free coordinates");
  const auto [traj, eq] = run_flow(cfg, kind);
  const Configuration eq_full = full_configuration(cfg, eq);

  CsvTable states, errors;
  states.header = {"t"};
  errors.header = {"t"};
  for (unsigned j = 1; j <= cfg.n; ++j) {
    states.header.push_back("x" + std::to_string(j));
    errors.header.push_back("log10err_" + std::to_string(j));
  }
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Configuration x = full_configuration(cfg, traj.states[i]);
    std::vector<double> srow{traj.times[i]}, erow{traj.times[i]};
    for (std::size_t j = 0; j < x.size(); ++j) {
      srow.push_back(x[j]);
      erow.push_back(std::log10(std::abs(x[j] - eq_full[j])));
    }
    states.rows.push_back(std::move(srow));
    errors.rows.push_back(std::move(erow));
  }

  if (cfg.format == OutputFormat::Json) {
    json doc;
    doc["family"] = family_name(cfg.family);
    doc["n"] = cfg.n;
    doc["params"] = params_json(cfg);
    doc["times"] = traj.times;
    json xs = json::array(), es = json::array();
    for (std::size_t i = 0; i < states.rows.size(); ++i) {
      xs.push_back(std::vector<double>(states.rows[i].begin() + 1, states.rows[i].end()));
      es.push_back(std::vector<double>(errors.rows[i].begin() + 1, errors.rows[i].end()));
    }
    doc["states"] = std::move(xs);
    doc["log10_errors"] = std::move(es);
    doc["equilibrium"] = eq_full;
    if (cfg.output.empty()) {
      out << doc.dump() << '\n';
      return 0;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw InvalidParameters("cannot open '" + cfg.output + "' for writing");
    file << doc.dump() << '\n';
    out << "wrote " << cfg.output << '\n';
    return 0;
  }
  if (cfg.output.empty()) {
    write_csv(out, states);
    return 0;
  }
  write_csv_file(cfg.output, states);
  write_csv_file(logerr_path(cfg.output), errors);
  out << "wrote " << cfg.output << " and " << logerr_path(cfg.output) << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  VerificationReport rep;
  if (cfg.family == Family::ContinuousHahn) {
    rep = full_verify(ch_params(cfg), cfg.n, cfg.flow_settings());
  } else if (cfg.family == Family::Wilson) {
    rep = full_verify(wilson_params(cfg), cfg.n, cfg.flow_settings());
  } else {
    throw InvalidParameters("verify supports the ch and wilson families only");
  }

  constexpr double tol = 1e-6;
  std::vector<std::string> failed;
  if (!(rep.root_mismatch < tol)) failed.push_back("root_mismatch");
  if (!(rep.max_bethe_residual < tol)) failed.push_back("max_bethe_residual");
  if (!(rep.max_diff_eq_residual < tol)) failed.push_back("max_diff_eq_residual");
  if (!(rep.hessian_min_eigenvalue >= rep.kappa_bound)) failed.push_back("hessian_min_eigenvalue");

  json doc;
  doc["family"] = family_name(cfg.family);
  doc["n"] = cfg.n;
  doc["params"] = params_json(cfg);
  doc["root_mismatch"] = rep.root_mismatch;
  doc["max_bethe_residual"] = rep.max_bethe_residual;
  doc["max_diff_eq_residual"] = rep.max_diff_eq_residual;
  doc["hessian_min_eigenvalue"] = rep.hessian_min_eigenvalue;
  doc["kappa_bound"] = rep.kappa_bound;
  doc["flow_roots"] = rep.flow_roots;
  doc["companion_roots"] = rep.companion_roots;
  doc["tolerance"] = tol;
  doc["passed"] = failed.empty();
  doc["failed_checks"] = failed;
  emit_json(cfg, doc, out);

  if (failed.empty()) return 0;
  err << "verification failed:";
  for (const auto& f : failed) err << ' ' << f;
  err << '\n';
  return 3;
}

int cmd_rate(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const PotentialKind kind = make_kind(cfg);
  if (initial_state(cfg).empty()) throw InvalidParameters("reduced flow has no free coordinates");
  const auto [traj, eq] = run_flow(cfg, kind);
  const auto window = cfg.window.value_or(std::pair{cfg.t_max / 6.0, 5.0 * cfg.t_max / 6.0});
  const RateReport rep = measure_decay(traj, eq, window, cfg.noise_floor);

  json doc;
  doc["family"] = family_name(cfg.family);
  doc["n"] = cfg.n;
  doc["params"] = params_json(cfg);
  doc["kappa_bound"] = rep.kappa_bound;
  doc["improved_bound"] = rep.improved_bound ? json(*rep.improved_bound) : json(nullptr);
  doc["R_n"] = rep.R_n;
  doc["fit_window"] = {rep.fit_window.first, rep.fit_window.second};
  doc["measured_slopes"] = rep.measured_slopes;
  doc["min_slope"] = rep.min_slope();
  doc["all_above_bound"] = rep.min_slope() > rep.kappa_bound;
  doc["equilibrium"] = full_configuration(cfg, eq);
  emit_json(cfg, doc, out);
  return 0;
}

int run_command(Command command, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (command) {
      case Command::Roots: return cmd_roots(cfg, out);
      case Command::Flow: return cmd_flow(cfg, out);
      case Command::Verify: return cmd_verify(cfg, out, err);
      case Command::Rate: return cmd_rate(cfg, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return 3;
}

}  // namespace orthoflow
