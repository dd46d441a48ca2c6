#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ahnn/linsys.hpp"
#include "ahnn/stability.hpp"
#include "ahnn/synthesis.hpp"

namespace ahnn {

enum class ActivationShape { clamped_linear, smooth_saturating };

/// The neuron: an opamp with finite open-loop gain and hard supply rails.
template <typename Scalar = double>
struct AmplifierModel {
  Scalar gain = Scalar(1e5);
  Scalar v_m = Scalar(15);
  ActivationShape shape = ActivationShape::clamped_linear;
};

template <typename Scalar>
void validate(const AmplifierModel<Scalar>& amp) {
  if (!(amp.gain > Scalar(0)) || !(amp.v_m > Scalar(0))) {
    throw Error(ErrorKind::invalid_config, "amplifier gain and rail voltage must be positive");
  }
}

/// Output voltage for a differential input x = v(+) − v(−).
template <typename Scalar>
Scalar activation(Scalar x, const AmplifierModel<Scalar>& amp) {
  const Scalar linear = amp.gain * x;
  if (amp.shape == ActivationShape::clamped_linear) {
    return std::clamp(linear, -amp.v_m, amp.v_m);
  }
  return amp.v_m * std::tanh(linear / amp.v_m);
}

/// d activation / dx.
template <typename Scalar>
Scalar activation_slope(Scalar x, const AmplifierModel<Scalar>& amp) {
  const Scalar linear = amp.gain * x;
  if (amp.shape == ActivationShape::clamped_linear) {
    return std::abs(linear) < amp.v_m ? amp.gain : Scalar(0);
  }
  const Scalar th = std::tanh(linear / amp.v_m);
  return amp.gain * (Scalar(1) - th * th);
}

template <typename Scalar = double>
struct NeuronState {
  VectorX<Scalar> u;  ///< summing-node (inverting input) voltages, V
  Scalar t{0};        ///< µs
};

/// du/dt in V/µs from the node charge balance
///   C_i du_i/dt = Σ_j G_ij V_j − u_i·(Σ_j G_ij + G_self,i + g_p,i),
/// with V_j = activation(bias_j − u_j).
template <typename Scalar>
VectorX<Scalar> derivative(const NeuronState<Scalar>& state, const CircuitNetwork<Scalar>& net,
                           const AmplifierModel<Scalar>& amp) {
  const Index n = net.size();
  if (state.u.size() != n) {
    throw Error(ErrorKind::dimension_mismatch, "state length does not match network");
  }
  VectorX<Scalar> V(n);
  for (Index j = 0; j < n; ++j) V(j) = activation(net.bias(j) - state.u(j), amp);
  const VectorX<Scalar> gtot = net.total_conductance();
  return (net.G * V - state.u.cwiseProduct(gtot)).cwiseQuotient(net.C_p);
}

/// Simplified circuit energy (integral term dropped):
///   E = ½ Σ_ij G_ij V_i V_j − Σ_i (b_i/s_i)/R_eqv,i · V_i.
/// The quadratic form only sees the symmetric part of G, so for asymmetric
/// networks this is a diagnostic, not a Lyapunov function.
template <typename Scalar, typename Derived>
Scalar energy(const Eigen::MatrixBase<Derived>& V, const CircuitNetwork<Scalar>& net) {
  if (V.size() != net.size()) {
    throw Error(ErrorKind::dimension_mismatch, "voltage vector does not match network");
  }
  const VectorX<Scalar> gtot = net.total_conductance();
  return Scalar(0.5) * V.dot(net.G * V) - net.bias.cwiseProduct(gtot).dot(V);
}

template <typename Scalar, typename Derived>
VectorX<Scalar> energy_gradient(const Eigen::MatrixBase<Derived>& V,
                                const CircuitNetwork<Scalar>& net) {
  if (V.size() != net.size()) {
    throw Error(ErrorKind::dimension_mismatch, "voltage vector does not match network");
  }
  const MatrixX<Scalar> sym = Scalar(0.5) * (net.G + net.G.transpose());
  return sym * V - net.bias.cwiseProduct(net.total_conductance());
}

enum class EnergyForm { standard, modified };

template <typename Scalar = double>
struct SurfaceGrid {
  Index resolution = 101;  ///< points per axis
  Scalar lo = Scalar(-15);
  Scalar hi = Scalar(15);
};

template <typename Scalar = double>
struct SurfacePoint {
  Scalar V1;
  Scalar V2;
  Scalar E;
};

/// Tabulates a two-neuron energy landscape (integral terms omitted):
///   standard: E = −½ Σ W_ij V_i V_j − Σ i_i V_i
///   modified: E = +½ Σ W_ij V_i V_j + Σ i_i V_i
/// Rows are ordered V1-major.
template <typename Scalar, typename DerivedW, typename DerivedB>
std::vector<SurfacePoint<Scalar>> energy_surface(const Eigen::MatrixBase<DerivedW>& W,
                                                 const Eigen::MatrixBase<DerivedB>& bias,
                                                 const SurfaceGrid<Scalar>& grid,
                                                 EnergyForm form) {
  if (W.rows() != 2 || W.cols() != 2 || bias.size() != 2) {
    throw Error(ErrorKind::wrong_dimension, "energy surfaces are defined for two neurons only");
  }
  if (grid.resolution < 2 || !(grid.hi > grid.lo)) {
    throw Error(ErrorKind::invalid_config, "surface grid needs ≥ 2 points and lo < hi");
  }
  const Scalar sign = form == EnergyForm::standard ? Scalar(-1) : Scalar(1);
  const Scalar step = (grid.hi - grid.lo) / Scalar(grid.resolution - 1);
  std::vector<SurfacePoint<Scalar>> out;
  out.reserve(static_cast<std::size_t>(grid.resolution * grid.resolution));
  Eigen::Matrix<Scalar, 2, 1> V;
  for (Index a = 0; a < grid.resolution; ++a) {
    V(0) = a + 1 == grid.resolution ? grid.hi : grid.lo + step * Scalar(a);
    for (Index c = 0; c < grid.resolution; ++c) {
      V(1) = c + 1 == grid.resolution ? grid.hi : grid.lo + step * Scalar(c);
      const Scalar quad = V.dot(W * V);
      out.push_back({V(0), V(1), sign * (Scalar(0.5) * quad + bias.dot(V))});
    }
  }
  return out;
}

enum class Integrator { adaptive_rk45, fixed_euler, fixed_rk4 };
enum class InitKind { zero, noise };

template <typename Scalar = double>
struct InitialCondition {
  InitKind kind = InitKind::zero;
  Scalar amplitude{0};  ///< u_i(0) ~ uniform(−amplitude, amplitude)
  std::uint64_t seed = 0;

  static InitialCondition zero() { return {}; }
  static InitialCondition noise(Scalar amplitude, std::uint64_t seed) {
    return {InitKind::noise, amplitude, seed};
  }
};

template <typename Scalar = double>
struct SimConfig {
  Integrator integrator = Integrator::adaptive_rk45;
  Scalar dt{0};                  ///< fixed-step size, µs; 0 derives a stable step
  Scalar rel_tol = Scalar(1e-8);
  Scalar abs_tol = Scalar(1e-10);  ///< output volts
  Scalar t_max = Scalar(1000);     ///< µs
  Scalar eps_conv = Scalar(1e-6);  ///< V/µs
  Scalar t_hold{0};                ///< µs; 0 means 5·max C_p / (1 mS)
  InitialCondition<Scalar> init;
  bool strict_stability = false;
  long sample_stride = 1;  ///< keep every k-th step; 0 keeps only the endpoints
};

template <typename Scalar>
Scalar resolved_hold(const SimConfig<Scalar>& cfg, const CircuitNetwork<Scalar>& net) {
  return cfg.t_hold > Scalar(0) ? cfg.t_hold : Scalar(5) * net.C_p.maxCoeff();
}

template <typename Scalar = double>
struct Sample {
  Scalar t;
  VectorX<Scalar> u;
  VectorX<Scalar> V;
  Scalar E;
  Scalar rate;  ///< max_i max(|dV_i/dt|, |du_i/dt|), V/µs
};

/// Sees every accepted step, including ones the stride does not keep.
template <typename Scalar = double>
using StepObserver = std::function<void(const Sample<Scalar>&)>;

enum class TrajectoryStatus { converged, not_converged, step_underflow };

const char* to_string(TrajectoryStatus s) noexcept;

template <typename Scalar = double>
struct Trajectory {
  std::vector<Sample<Scalar>> samples;
  TrajectoryStatus status = TrajectoryStatus::not_converged;
  std::optional<Scalar> t_converge;
  VectorX<Scalar> final_V;
  VectorX<Scalar> final_u;
  Scalar t_end{0};
  bool saturated = false;  ///< some |V_i| ≥ v_m − 1e-6 at the end
  long accepted_steps = 0;
  long rejected_steps = 0;

  bool converged() const { return status == TrajectoryStatus::converged; }
};

template <typename Scalar = double>
struct ConvergenceResult {
  bool converged = false;
  std::optional<Scalar> t_converge;
};

/// Streaming form of the convergence rule: converged once the rate stays
/// below eps for a trailing window of length t_hold. t_converge is the
/// window start.
template <typename Scalar = double>
class ConvergenceMonitor {
 public:
  ConvergenceMonitor(Scalar eps, Scalar hold) : eps_(eps), hold_(hold) {}

  bool observe(Scalar t, Scalar rate) {
    if (!(rate < eps_)) {
      start_.reset();
      return false;
    }
    if (!start_) start_ = t;
    if (t - *start_ >= hold_) done_ = true;
    return done_;
  }

  bool converged() const { return done_; }
  std::optional<Scalar> window_start() const { return start_; }

 private:
  Scalar eps_;
  Scalar hold_;
  std::optional<Scalar> start_;
  bool done_ = false;
};

template <typename Scalar>
ConvergenceResult<Scalar> detect_convergence(std::span<const Sample<Scalar>> samples,
                                             Scalar eps_conv, Scalar t_hold) {
  ConvergenceMonitor<Scalar> monitor(eps_conv, t_hold);
  for (const auto& s : samples) {
    if (monitor.observe(s.t, s.rate)) return {true, monitor.window_start()};
  }
  return {};
}

namespace detail {

// Right-hand side in terms of the differential input x = bias − u. The
// amplifier multiplies x by the gain, so carrying x instead of u keeps the
// outputs resolved to full relative precision near equilibrium.
template <typename Scalar>
class NodeModel {
 public:
  NodeModel(const CircuitNetwork<Scalar>& net, const AmplifierModel<Scalar>& amp)
      : net_(net),
        amp_(amp),
        gtot_(net.total_conductance()),
        inv_c_(net.C_p.cwiseInverse()),
        abs_g_(net.G.cwiseAbs()),
        V_(net.size()),
        slope_(net.size()) {}

  Index size() const { return net_.size(); }

  // dx/dt = −du/dt
  template <typename Out>
  void rate(const VectorX<Scalar>& x, Out&& dxdt) {
    for (Index j = 0; j < x.size(); ++j) V_(j) = activation(x(j), amp_);
    dxdt.noalias() = net_.G * V_;
    dxdt = ((net_.bias - x).cwiseProduct(gtot_) - dxdt).cwiseProduct(inv_c_);
  }

  // Gershgorin bound on the spectral radius of ∂(dx/dt)/∂x at x.
  // Cached while the slopes are unchanged (always, inside the linear region
  // of the clamped amplifier).
  Scalar spectral_bound(const VectorX<Scalar>& x) {
    bool same = bound_ > Scalar(0);
    for (Index j = 0; j < x.size(); ++j) {
      const Scalar slope = activation_slope(x(j), amp_);
      same = same && slope == slope_(j);
      slope_(j) = slope;
    }
    if (!same) {
      bound_ = ((abs_g_ * slope_ + gtot_.cwiseAbs()).cwiseProduct(inv_c_)).maxCoeff();
    }
    return bound_;
  }

  Scalar worst_spectral_bound() const {
    const VectorX<Scalar> slope = VectorX<Scalar>::Constant(size(), amp_.gain);
    return ((abs_g_ * slope + gtot_.cwiseAbs()).cwiseProduct(inv_c_)).maxCoeff();
  }

  Scalar convergence_rate(const VectorX<Scalar>& x, const VectorX<Scalar>& dxdt) const {
    Scalar worst{0};
    for (Index i = 0; i < x.size(); ++i) {
      const Scalar dx = std::abs(dxdt(i));
      worst = std::max({worst, dx, activation_slope(x(i), amp_) * dx});
    }
    return worst;
  }

  VectorX<Scalar> outputs(const VectorX<Scalar>& x) const {
    VectorX<Scalar> V(x.size());
    for (Index j = 0; j < x.size(); ++j) V(j) = activation(x(j), amp_);
    return V;
  }

  const CircuitNetwork<Scalar>& network() const { return net_; }

 private:
  const CircuitNetwork<Scalar>& net_;
  const AmplifierModel<Scalar>& amp_;
  VectorX<Scalar> gtot_;
  VectorX<Scalar> inv_c_;
  MatrixX<Scalar> abs_g_;
  VectorX<Scalar> V_;
  VectorX<Scalar> slope_;
  Scalar bound_{0};
};

// Dormand–Prince 5(4) tableau.
template <typename Scalar>
struct Dopri5 {
  static constexpr Scalar c2 = Scalar(1) / 5, c3 = Scalar(3) / 10, c4 = Scalar(4) / 5,
                          c5 = Scalar(8) / 9;
  static constexpr Scalar a21 = Scalar(1) / 5;
  static constexpr Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
  static constexpr Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
  static constexpr Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187,
                          a53 = Scalar(64448) / 6561, a54 = Scalar(-212) / 729;
  static constexpr Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33,
                          a63 = Scalar(46732) / 5247, a64 = Scalar(49) / 176,
                          a65 = Scalar(-5103) / 18656;
  static constexpr Scalar a71 = Scalar(35) / 384, a73 = Scalar(500) / 1113,
                          a74 = Scalar(125) / 192, a75 = Scalar(-2187) / 6784,
                          a76 = Scalar(11) / 84;
  static constexpr Scalar e1 = Scalar(71) / 57600, e3 = Scalar(-71) / 16695,
                          e4 = Scalar(71) / 1920, e5 = Scalar(-17253) / 339200,
                          e6 = Scalar(22) / 525, e7 = Scalar(-1) / 40;
  // The real-axis stability boundary is near −3.31; |R(−3)| ≈ 0.57.
  static constexpr Scalar stability_limit = Scalar(3);
};

template <typename Scalar>
class TrajectoryRecorder {
 public:
  TrajectoryRecorder(const NodeModel<Scalar>& model, Trajectory<Scalar>& out, long stride,
                     const StepObserver<Scalar>& observer)
      : model_(model), out_(out), stride_(stride), observer_(observer) {}

  Sample<Scalar> make(Scalar t, const VectorX<Scalar>& x, Scalar rate) const {
    const auto& net = model_.network();
    Sample<Scalar> s;
    s.t = t;
    s.u = net.bias - x;
    s.V = model_.outputs(x);
    s.E = energy(s.V, net);
    s.rate = rate;
    return s;
  }

  void record(Scalar t, const VectorX<Scalar>& x, Scalar rate) {
    auto s = make(t, x, rate);
    if (observer_ && out_.samples.empty()) observer_(s);
    out_.samples.push_back(std::move(s));
  }

  // Called after every accepted step; the endpoint is written separately.
  void step(Scalar t, const VectorX<Scalar>& x, Scalar rate) {
    ++count_;
    const bool keep = stride_ > 0 && count_ % stride_ == 0;
    if (!keep && !observer_) return;
    auto s = make(t, x, rate);
    if (observer_) observer_(s);
    if (keep) {
      out_.samples.push_back(std::move(s));
      last_recorded_ = count_;
    }
  }

  void finish(Scalar t, const VectorX<Scalar>& x, Scalar rate) {
    if (last_recorded_ != count_ || out_.samples.empty()) record(t, x, rate);
  }

 private:
  const NodeModel<Scalar>& model_;
  Trajectory<Scalar>& out_;
  long stride_;
  const StepObserver<Scalar>& observer_;
  long count_ = 0;
  long last_recorded_ = 0;
};

}  // namespace detail

template <typename Scalar>
void validate(const SimConfig<Scalar>& cfg) {
  if (cfg.dt < Scalar(0) || cfg.t_hold < Scalar(0) || !(cfg.eps_conv > Scalar(0)) ||
      !(cfg.t_max >= Scalar(0)) || !(cfg.rel_tol >= Scalar(0)) || !(cfg.abs_tol > Scalar(0)) ||
      cfg.sample_stride < 0 || cfg.init.amplitude < Scalar(0)) {
    throw Error(ErrorKind::invalid_config, "invalid simulation configuration");
  }
}

/// Stable default for the fixed-step integrators: 1/ρ keeps every
/// Gershgorin disc of hJ inside the forward-Euler stability disc.
template <typename Scalar>
Scalar default_fixed_step(const CircuitNetwork<Scalar>& net, const AmplifierModel<Scalar>& amp) {
  detail::NodeModel<Scalar> model(net, amp);
  return Scalar(1) / model.worst_spectral_bound();
}

template <typename Scalar>
VectorX<Scalar> initial_state(const CircuitNetwork<Scalar>& net, const InitialCondition<Scalar>& init) {
  VectorX<Scalar> u = VectorX<Scalar>::Zero(net.size());
  if (init.kind == InitKind::noise && init.amplitude > Scalar(0)) {
    std::mt19937_64 rng(init.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (Index i = 0; i < u.size(); ++i) u(i) = init.amplitude * Scalar(dist(rng));
  }
  return u;
}

/// Integrates the network from its initial condition until the outputs
/// settle (see ConvergenceMonitor) or t_max is reached.
template <typename Scalar>
Trajectory<Scalar> integrate(const CircuitNetwork<Scalar>& net, const AmplifierModel<Scalar>& amp,
                             const SimConfig<Scalar>& cfg,
                             const StepObserver<Scalar>& observer = {}) {
  validate(amp);
  validate(cfg);
  const Index n = net.size();
  detail::NodeModel<Scalar> model(net, amp);
  Trajectory<Scalar> traj;
  detail::TrajectoryRecorder<Scalar> recorder(model, traj, cfg.sample_stride, observer);
  ConvergenceMonitor<Scalar> monitor(cfg.eps_conv, resolved_hold(cfg, net));

  VectorX<Scalar> x = net.bias - initial_state(net, cfg.init);
  VectorX<Scalar> f(n);
  model.rate(x, f);
  Scalar t{0};
  Scalar rate = model.convergence_rate(x, f);
  recorder.record(t, x, rate);
  bool done = monitor.observe(t, rate);

  auto finish = [&](TrajectoryStatus status) {
    recorder.finish(t, x, rate);
    traj.status = status;
    if (status == TrajectoryStatus::converged) traj.t_converge = monitor.window_start();
    traj.t_end = t;
    traj.final_V = model.outputs(x);
    traj.final_u = net.bias - x;
    traj.saturated = (traj.final_V.cwiseAbs().array() >= amp.v_m - Scalar(1e-6)).any();
    return traj;
  };
  if (done) return finish(TrajectoryStatus::converged);

  if (cfg.integrator == Integrator::adaptive_rk45) {
    using T = detail::Dopri5<Scalar>;
    VectorX<Scalar> k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), xs(n), xn(n), err(n);
    Scalar h = std::min(cfg.t_max, Scalar(0.1) * T::stability_limit / model.spectral_bound(x));
    Scalar fac_old = Scalar(1e-4);
    const Scalar h_floor = Scalar(1e-12);
    while (t < cfg.t_max) {
      const Scalar cap = T::stability_limit / model.spectral_bound(x);
      h = std::min(h, cap);
      if (h < h_floor) return finish(TrajectoryStatus::step_underflow);
      h = std::min(h, cfg.t_max - t);

      xs.noalias() = x + h * T::a21 * f;
      model.rate(xs, k2);
      xs.noalias() = x + h * (T::a31 * f + T::a32 * k2);
      model.rate(xs, k3);
      xs.noalias() = x + h * (T::a41 * f + T::a42 * k2 + T::a43 * k3);
      model.rate(xs, k4);
      xs.noalias() = x + h * (T::a51 * f + T::a52 * k2 + T::a53 * k3 + T::a54 * k4);
      model.rate(xs, k5);
      xs.noalias() = x + h * (T::a61 * f + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5);
      model.rate(xs, k6);
      xn.noalias() = x + h * (T::a71 * f + T::a73 * k3 + T::a74 * k4 + T::a75 * k5 + T::a76 * k6);
      model.rate(xn, k7);
      err.noalias() = h * (T::e1 * f + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);

      // Tolerances are stated in output volts; the amplifier maps x to V
      // with slope at most `gain`, so the x-space scale shrinks by that factor.
      Scalar norm{0};
      for (Index i = 0; i < n; ++i) {
        const Scalar sc = cfg.abs_tol / amp.gain +
                          cfg.rel_tol * std::max(std::abs(x(i)), std::abs(xn(i)));
        const Scalar r = err(i) / sc;
        norm += r * r;
      }
      norm = std::sqrt(norm / Scalar(n));

      // PI step-size controller (Hairer–Wanner constants).
      constexpr Scalar beta = Scalar(0.04);
      constexpr Scalar expo = Scalar(0.2) - beta * Scalar(0.75);
      const Scalar safe = Scalar(0.9);
      if (norm <= Scalar(1) && std::isfinite(static_cast<double>(norm))) {
        Scalar fac = std::pow(std::max(norm, Scalar(1e-10)), expo) / std::pow(fac_old, beta);
        fac = std::clamp(fac / safe, Scalar(0.2), Scalar(10));
        fac_old = std::max(norm, Scalar(1e-4));
        t += h;
        x.swap(xn);
        f.swap(k7);
        ++traj.accepted_steps;
        rate = model.convergence_rate(x, f);
        recorder.step(t, x, rate);
        if (monitor.observe(t, rate)) return finish(TrajectoryStatus::converged);
        h = h / fac;
      } else {
        ++traj.rejected_steps;
        const Scalar fac = std::isfinite(static_cast<double>(norm))
                               ? std::min(Scalar(5), std::pow(norm, Scalar(0.2)) / safe)
                               : Scalar(10);
        h = h / fac;
      }
    }
    return finish(TrajectoryStatus::not_converged);
  }

  const Scalar dt = cfg.dt > Scalar(0) ? cfg.dt : default_fixed_step(net, amp);
  VectorX<Scalar> k2(n), k3(n), k4(n), xs(n);
  for (long step = 1; t < cfg.t_max; ++step) {
    const Scalar h = std::min(dt, cfg.t_max - t);
    if (cfg.integrator == Integrator::fixed_euler) {
      x.noalias() += h * f;
    } else {
      xs.noalias() = x + Scalar(0.5) * h * f;
      model.rate(xs, k2);
      xs.noalias() = x + Scalar(0.5) * h * k2;
      model.rate(xs, k3);
      xs.noalias() = x + h * k3;
      model.rate(xs, k4);
      x.noalias() += (h / Scalar(6)) * (f + Scalar(2) * k2 + Scalar(2) * k3 + k4);
    }
    // t from the step counter so long runs do not drift.
    t = h == dt ? Scalar(step) * dt : cfg.t_max;
    model.rate(x, f);
    ++traj.accepted_steps;
    rate = model.convergence_rate(x, f);
    recorder.step(t, x, rate);
    if (monitor.observe(t, rate)) return finish(TrajectoryStatus::converged);
  }
  return finish(TrajectoryStatus::not_converged);
}

enum class SolveOutcome { success, not_certified, non_convergence, saturated };

const char* to_string(SolveOutcome o) noexcept;

template <typename Scalar = double>
struct SolveOptions {
  ScalingPolicy<Scalar> scaling = ScalingPolicy<Scalar>::per_row();
  SynthesisOptions<Scalar> synthesis;
  AmplifierModel<Scalar> amp;
  SimConfig<Scalar> sim;
};

template <typename Scalar = double>
struct SolveResult {
  ScalingVector<Scalar> scaling;
  CircuitNetwork<Scalar> network;
  StabilityReport<Scalar> stability;
  std::optional<Trajectory<Scalar>> trajectory;
  VectorX<Scalar> final_V;
  Residual<Scalar> residual;
  SolveOutcome outcome = SolveOutcome::success;
};

/// Scale, synthesize, certify, simulate and check the residual. In strict
/// mode an uncertified network is never simulated.
template <typename Scalar>
SolveResult<Scalar> solve(const LinearSystem<Scalar>& sys, const SolveOptions<Scalar>& opts) {
  validate(sys);
  SolveResult<Scalar> out;
  out.scaling = choose_scaling(sys, opts.scaling);
  out.network = synthesize(sys, out.scaling, opts.synthesis);
  out.stability = check_stability(sys, out.scaling);
  if (opts.sim.strict_stability && out.stability.verdict != Verdict::certified_stable) {
    out.outcome = SolveOutcome::not_certified;
    out.final_V = VectorX<Scalar>::Zero(sys.size());
    out.residual = residual(sys, out.final_V);
    return out;
  }
  out.trajectory = integrate(out.network, opts.amp, opts.sim);
  out.final_V = out.trajectory->final_V;
  out.residual = residual(sys, out.final_V);
  if (!out.trajectory->converged()) {
    out.outcome = SolveOutcome::non_convergence;
  } else if (out.trajectory->saturated) {
    out.outcome = SolveOutcome::saturated;
  } else {
    out.outcome = SolveOutcome::success;
  }
  return out;
}

/// `t,u1..un,V1..Vn,E` with 12 significant digits.
std::string trajectory_csv(const Trajectory<double>& traj);

/// `V1,V2,E`.
std::string surface_csv(const std::vector<SurfacePoint<double>>& points);

}  // namespace ahnn
