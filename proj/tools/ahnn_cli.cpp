// ahnn: synthesize, certify and simulate asymmetric Hopfield linear-equation
// solver circuits.
//
// Exit codes: 0 success, 1 not certified, 2 input/validation error,
// 3 non-convergence, 4 saturated solution.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ahnn/bench.hpp"
#include "ahnn/dynamics.hpp"
#include "ahnn/version.hpp"

namespace {

using namespace ahnn;

constexpr int kExitOk = 0;
constexpr int kExitNotCertified = 1;
constexpr int kExitInput = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitSaturated = 4;

struct Flags {
  std::string input;
  std::string scale = "auto";
  double gain = 1e5;
  double vm = 15.0;
  std::string shape = "clamped";
  double cap = 1.0;
  std::string mode = "physical";
  std::string integrator = "rk45";
  double dt = 0.0;
  double tmax = 1000.0;
  double rtol = 1e-8;
  double atol = 1e-10;
  double eps = 1e-6;
  double hold = 0.0;
  std::string init = "zero";
  bool strict = false;
  std::string trace;
  long stride = 1;
  std::string netlist;
  std::string minors;
  std::string out;
  std::string form = "modified";
  long grid = 101;
  std::string range;
  std::string sizes = "2,3,5,10,20";
  int trials = 5;
  std::uint64_t seed = 1;
  double margin = 1.0;
  double box = 10.0;
  unsigned threads = 1;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::invalid_config, "invalid " + what + " '" + text + "'");
}

ScalingPolicy<double> parse_scale(const std::string& text) {
  if (text == "auto") return ScalingPolicy<double>::per_row();
  if (text == "global") return ScalingPolicy<double>::global();
  std::vector<double> values;
  for (const auto& p : split(text, ',')) values.push_back(to_double(p, "scale"));
  return ScalingPolicy<double>::fixed(std::move(values));
}

InitialCondition<double> parse_init(const std::string& text) {
  if (text == "zero") return InitialCondition<double>::zero();
  const auto parts = split(text, ':');
  if (parts.size() == 3 && parts[0] == "noise") {
    const double amp = to_double(parts[1], "noise amplitude");
    const double seed = to_double(parts[2], "noise seed");
    if (amp < 0.0 || seed < 0.0) throw Error(ErrorKind::invalid_config, "invalid --init");
    return InitialCondition<double>::noise(amp, static_cast<std::uint64_t>(seed));
  }
  throw Error(ErrorKind::invalid_config, "--init expects zero or noise:<amp>:<seed>");
}

SolveOptions<double> build_options(const Flags& f) {
  SolveOptions<double> opts;
  opts.scaling = parse_scale(f.scale);
  opts.synthesis.mode = f.mode == "idealized" ? SynthesisMode::idealized : SynthesisMode::physical;
  opts.synthesis.capacitance_nF = f.cap;
  opts.amp.gain = f.gain;
  opts.amp.v_m = f.vm;
  opts.amp.shape =
      f.shape == "smooth" ? ActivationShape::smooth_saturating : ActivationShape::clamped_linear;
  auto& sim = opts.sim;
  sim.integrator = f.integrator == "euler" ? Integrator::fixed_euler
                   : f.integrator == "rk4" ? Integrator::fixed_rk4
                                           : Integrator::adaptive_rk45;
  sim.dt = f.dt;
  sim.t_max = f.tmax;
  sim.rel_tol = f.rtol;
  sim.abs_tol = f.atol;
  sim.eps_conv = f.eps;
  sim.t_hold = f.hold;
  sim.init = parse_init(f.init);
  sim.strict_stability = f.strict;
  sim.sample_stride = f.trace.empty() ? 0 : f.stride;
  validate(opts.amp);
  validate(sim);
  if (!(opts.synthesis.capacitance_nF > 0.0)) {
    throw Error(ErrorKind::invalid_config, "--cap must be positive");
  }
  return opts;
}

std::string fmt(double v, int digits = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

template <typename Derived>
std::string join(const Eigen::MatrixBase<Derived>& v, int digits = 6) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += fmt(v(i), digits);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_config, "cannot write '" + path + "'");
  out << content;
}

int cmd_check(const Flags& f) {
  const auto sys = read_system_file(f.input);
  const auto s = choose_scaling(sys, parse_scale(f.scale));
  const auto report = check_stability(sys, s);
  std::cout << "scaling: " << join(s.s) << "\n" << format_report(report);
  if (!f.minors.empty()) write_file(f.minors, minors_csv(report));
  return report.verdict == Verdict::certified_stable ? kExitOk : kExitNotCertified;
}

void warn_rails(const CircuitNetworkd& net, double v_m) {
  for (Index i : bias_beyond_rails(net, v_m)) {
    std::cerr << "warning: bias of neuron " << i + 1 << " exceeds the rails (" << fmt(v_m)
              << " V)\n";
  }
}

int cmd_synth(const Flags& f) {
  const auto sys = read_system_file(f.input);
  const auto opts = build_options(f);
  const auto s = choose_scaling(sys, opts.scaling);
  const auto net = synthesize(sys, s, opts.synthesis);
  const Index n = net.size();
  std::cout << "scaling: " << join(s.s) << "\n";
  std::cout << "mode: " << f.mode << "\n";
  std::cout << "R (kOhm):\n";
  for (Index i = 0; i < n; ++i) {
    std::cout << " ";
    for (Index j = 0; j < n; ++j) std::cout << " " << fmt(net.resistance(i, j));
    std::cout << "\n";
  }
  std::cout << "R_self (kOhm):";
  for (Index i = 0; i < n; ++i) std::cout << " " << fmt(net.self_resistance(i));
  std::cout << "\nbias (V): " << join(net.bias) << "\n";
  warn_rails(net, opts.amp.v_m);
  if (!f.netlist.empty()) {
    NetlistOptions nopts;
    nopts.title = f.input;
    nopts.v_m = f.vm;
    write_file(f.netlist, export_netlist(net, nopts));
  }
  return kExitOk;
}

int cmd_solve(const Flags& f) {
  const auto sys = read_system_file(f.input);
  const auto opts = build_options(f);
  const auto result = solve(sys, opts);
  warn_rails(result.network, opts.amp.v_m);
  std::cout << "verdict: " << to_string(result.stability.verdict) << "\n";
  std::cout << "scaling: " << join(result.scaling.s) << "\n";
  if (result.trajectory) {
    const auto& traj = *result.trajectory;
    std::cout << "status: " << to_string(traj.status) << "\n";
    std::cout << "V: " << join(result.final_V, 10) << "\n";
    std::cout << "residual_inf: " << fmt(result.residual.norm_inf, 6) << "\n";
    std::cout << "t_converge_us: " << (traj.t_converge ? fmt(*traj.t_converge, 6) : "none")
              << "\n";
    std::cout << "t_end_us: " << fmt(traj.t_end, 6) << "\n";
    if (!f.trace.empty()) write_file(f.trace, trajectory_csv(traj));
  }
  std::cout << "outcome: " << to_string(result.outcome) << "\n";
  switch (result.outcome) {
    case SolveOutcome::success: return kExitOk;
    case SolveOutcome::not_certified: return kExitNotCertified;
    case SolveOutcome::non_convergence: return kExitNonConvergence;
    case SolveOutcome::saturated: return kExitSaturated;
  }
  return kExitInput;
}

int cmd_surface(const Flags& f) {
  const auto sys = read_system_file(f.input);
  SurfaceGrid<double> grid;
  grid.resolution = f.grid;
  grid.lo = -f.vm;
  grid.hi = f.vm;
  if (!f.range.empty()) {
    const auto parts = split(f.range, ':');
    if (parts.size() != 2) throw Error(ErrorKind::invalid_config, "--range expects lo:hi");
    grid.lo = to_double(parts[0], "range");
    grid.hi = to_double(parts[1], "range");
  }
  const EnergyForm form = f.form == "standard" ? EnergyForm::standard : EnergyForm::modified;
  const auto points = energy_surface(sys.A, sys.b, grid, form);
  const std::string csv = surface_csv(points);
  if (f.out.empty()) {
    std::cout << csv;
    return kExitOk;
  }
  write_file(f.out, csv);
  std::size_t best = 0;
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].E < points[best].E) best = k;
  }
  std::cout << "argmin: " << fmt(points[best].V1) << " " << fmt(points[best].V2)
            << " E=" << fmt(points[best].E) << "\n";
  return kExitOk;
}

int cmd_bench(const Flags& f) {
  BenchSpec spec;
  for (const auto& p : split(f.sizes, ',')) {
    const double n = to_double(p, "size");
    if (n < 1 || n != static_cast<double>(static_cast<Index>(n))) {
      throw Error(ErrorKind::invalid_config, "invalid size '" + p + "'");
    }
    spec.sizes.push_back(static_cast<Index>(n));
  }
  spec.trials = f.trials;
  spec.seed = f.seed;
  spec.dominance_margin = f.margin;
  spec.v_box = f.box;
  spec.threads = f.threads;
  spec.solve = build_options(f);
  validate(spec);
  const auto report = run_benchmark(spec);
  const std::string csv = bench_csv(report);
  if (f.out.empty()) {
    std::cout << csv;
    return kExitOk;
  }
  write_file(f.out, csv);
  for (const auto& s : report.summaries) {
    std::cout << "n=" << s.size << " trials=" << s.trials << " certified=" << s.certified
              << " converged=" << s.converged << " max_rel_err=" << fmt(s.max_rel_err)
              << " mean_rel_err=" << fmt(s.mean_rel_err) << "\n";
  }
  return kExitOk;
}

void add_circuit_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--scale", f.scale, "auto | global | s1,s2,...");
  cmd->add_option("--gain", f.gain, "amplifier open-loop gain");
  cmd->add_option("--vm", f.vm, "rail magnitude, V");
  cmd->add_option("--shape", f.shape, "activation shape")
      ->check(CLI::IsMember({"clamped", "smooth"}));
  cmd->add_option("--cap", f.cap, "parasitic capacitance per node, nF");
  cmd->add_option("--mode", f.mode, "synthesis mode")
      ->check(CLI::IsMember({"physical", "idealized"}));
}

void add_sim_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--integrator", f.integrator, "rk45 | euler | rk4")
      ->check(CLI::IsMember({"rk45", "euler", "rk4"}));
  cmd->add_option("--dt", f.dt, "fixed step, us (0 = derived from the network)");
  cmd->add_option("--tmax", f.tmax, "simulation horizon, us");
  cmd->add_option("--rtol", f.rtol, "relative tolerance (rk45)");
  cmd->add_option("--atol", f.atol, "absolute tolerance in output volts (rk45)");
  cmd->add_option("--eps", f.eps, "convergence rate threshold, V/us");
  cmd->add_option("--hold", f.hold, "convergence hold window, us (0 = 5 C_p/1mS)");
  cmd->add_option("--init", f.init, "zero | noise:<amp>:<seed>");
  cmd->add_flag("--strict", f.strict, "refuse to simulate uncertified networks");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymmetric Hopfield network linear-equation solver"};
  app.set_version_flag("--version", std::string(ahnn::kVersion));
  app.require_subcommand(1);
  Flags f;

  auto* check = app.add_subcommand("check", "certify stability via the M-matrix test");
  check->add_option("file", f.input, "system file")->required();
  check->add_option("--scale", f.scale, "auto | global | s1,s2,...");
  check->add_option("--minors", f.minors, "write leading minors as CSV");

  auto* synth = app.add_subcommand("synth", "compute the resistor network");
  synth->add_option("file", f.input, "system file")->required();
  add_circuit_flags(synth, f);
  synth->add_option("--netlist", f.netlist, "write a netlist");

  auto* solve_cmd = app.add_subcommand("solve", "simulate the network to convergence");
  solve_cmd->add_option("file", f.input, "system file")->required();
  add_circuit_flags(solve_cmd, f);
  add_sim_flags(solve_cmd, f);
  solve_cmd->add_option("--trace", f.trace, "write the trajectory as CSV");
  solve_cmd->add_option("--stride", f.stride, "keep every k-th step in the trace");

  auto* surface = app.add_subcommand("surface", "tabulate a two-neuron energy surface");
  surface->add_option("file", f.input, "2-variable file: A is W, b is the bias")->required();
  surface->add_option("--form", f.form, "standard | modified")
      ->check(CLI::IsMember({"standard", "modified"}));
  surface->add_option("--grid", f.grid, "points per axis");
  surface->add_option("--range", f.range, "lo:hi in volts (default -vm:vm)");
  surface->add_option("--vm", f.vm, "rail magnitude, V");
  surface->add_option("--out", f.out, "CSV path (stdout if absent)");

  auto* bench = app.add_subcommand("bench", "random diagonally dominant benchmark");
  add_circuit_flags(bench, f);
  add_sim_flags(bench, f);
  bench->add_option("--sizes", f.sizes, "comma-separated system sizes");
  bench->add_option("--trials", f.trials, "trials per size");
  bench->add_option("--seed", f.seed, "master seed");
  bench->add_option("--margin", f.margin, "dominance margin");
  bench->add_option("--box", f.box, "solution box, V");
  bench->add_option("--threads", f.threads, "worker threads");
  bench->add_option("--out", f.out, "CSV path (stdout if absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (check->parsed()) return cmd_check(f);
    if (synth->parsed()) return cmd_synth(f);
    if (solve_cmd->parsed()) return cmd_solve(f);
    if (surface->parsed()) return cmd_surface(f);
    return cmd_bench(f);
  } catch (const ahnn::Error& e) {
    std::cerr << "error (" << ahnn::to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitInput;
  }
}
