// orthoflow: roots of continuous Hahn, Wilson and Jacobi polynomials from
// gradient flows, with oracle cross-checks and decay-rate reports.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "orthoflow/cli_support.hpp"
#include "orthoflow/commands.hpp"
#include "orthoflow/errors.hpp"

namespace {

struct RawOptions {
  std::string family = "ch";
  unsigned n = 0;
  std::map<std::string, std::string> params;
  std::string init;
  std::string x0;
  double t_max = 30.0;
  double step = 0.01;
  double grad_tol = 1e-12;
  unsigned record_every = 1;
  std::string output;
  std::string format = "csv";
  std::optional<int> precision;
  std::string window;
  std::optional<double> floor;
};

void add_options(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--family", raw.family, "ch, wilson, jacobi, ch-even or ch-odd")
      ->capture_default_str();
  cmd->add_option("-n,--n", raw.n, "polynomial degree")->required();
  for (const char* name : {"a", "b", "c", "d", "alpha", "beta"}) {
    cmd->add_option(std::string("--") + name, raw.params[name],
                    "parameter value: real, rational p/q or complex re+imi");
  }
  cmd->add_option("--init", raw.init, "zeros, equispaced or custom");
  cmd->add_option("--x0", raw.x0, "custom start, e.g. 1,2,3 or 3x30");
  cmd->add_option("--t-max", raw.t_max, "integration horizon")->capture_default_str();
  cmd->add_option("--step", raw.step, "RK4 step")->capture_default_str();
  cmd->add_option("--grad-tol", raw.grad_tol, "stop when the field max-norm drops below")
      ->capture_default_str();
  cmd->add_option("--record-every", raw.record_every, "record every k-th step")
      ->capture_default_str();
  cmd->add_option("-o,--output", raw.output, "output file");
  cmd->add_option("--format", raw.format, "csv or json (flow)")->capture_default_str();
  cmd->add_option("--precision", raw.precision, "decimals for printed roots");
  cmd->add_option("--window", raw.window, "fit window t0,t1 (rate)");
  cmd->add_option("--floor", raw.floor, "error floor excluded from slope fits (rate)");
}

orthoflow::RunConfig to_config(const RawOptions& raw) {
  using namespace orthoflow;
  RunConfig cfg;
  cfg.family = parse_family(raw.family);
  cfg.n = raw.n;
  for (const auto& [name, text] : raw.params) {
    if (!text.empty()) cfg.params.emplace_back(name, parse_scalar(text));
  }
  if (raw.init == "zeros") {
    cfg.init = InitKind::Zeros;
  } else if (raw.init == "equispaced") {
    cfg.init = InitKind::Equispaced;
  } else if (raw.init == "custom") {
    cfg.init = InitKind::Custom;
  } else if (!raw.init.empty()) {
    throw InvalidParameters("unknown init '" + raw.init + "'");
  }
  if (!raw.x0.empty()) {
    if (!cfg.init) cfg.init = InitKind::Custom;
    if (*cfg.init != InitKind::Custom) throw InvalidParameters("--x0 needs --init custom");
    cfg.x0 = parse_real_list(raw.x0);
  } else if (cfg.init == InitKind::Custom) {
    throw InvalidParameters("--init custom needs --x0");
  }
  cfg.t_max = raw.t_max;
  cfg.step = raw.step;
  cfg.grad_tol = raw.grad_tol;
  cfg.record_every = raw.record_every;
  cfg.output = raw.output;
  if (raw.format == "csv") {
    cfg.format = OutputFormat::Csv;
  } else if (raw.format == "json") {
    cfg.format = OutputFormat::Json;
  } else {
    throw InvalidParameters("unknown format '" + raw.format + "'");
  }
  cfg.precision = raw.precision;
  if (!raw.window.empty()) {
    const auto w = parse_real_list(raw.window);
    if (w.size() != 2) throw InvalidParameters("--window takes two values t0,t1");
    cfg.window = std::pair{w[0], w[1]};
  }
  cfg.noise_floor = raw.floor;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial roots as equilibria of gradient flows"};
  app.require_subcommand(1);
  RawOptions raw;
  struct Entry {
    const char* name;
    const char* help;
    orthoflow::Command command;
  };
  const Entry entries[] = {
      {"roots", "print the sorted roots", orthoflow::Command::Roots},
      {"flow", "write the trajectory and its log-error curves", orthoflow::Command::Flow},
      {"verify", "cross-check flow roots against the oracles", orthoflow::Command::Verify},
      {"rate", "measure decay rates against the theoretical bound", orthoflow::Command::Rate},
  };
  std::map<CLI::App*, orthoflow::Command> commands;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_options(sub, raw);
    commands[sub] = e.command;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  orthoflow::RunConfig cfg;
  try {
    cfg = to_config(raw);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return orthoflow::exit_code_for(e);
  }
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) return orthoflow::run_command(command, cfg, std::cout, std::cerr);
  }
  return 2;
}
