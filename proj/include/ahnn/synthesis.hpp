#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ahnn/linsys.hpp"

namespace ahnn {

// Units used throughout the circuit model: kΩ ⇔ mS, nF, µs, V. With these,
// the unit equivalent conductance at every summing node is 1 mS and the RC
// product C/G comes out directly in microseconds.

/// One positive scale per equation. Row i of the system is divided by s_i
/// before it is mapped onto resistors.
template <typename Scalar = double>
struct ScalingVector {
  VectorX<Scalar> s;

  Index size() const { return s.size(); }
  Scalar operator()(Index i) const { return s(i); }
};

using ScalingVectord = ScalingVector<double>;

enum class ScalingKind { per_row, global, explicit_values };

template <typename Scalar = double>
struct ScalingPolicy {
  ScalingKind kind = ScalingKind::per_row;
  std::vector<Scalar> values;  // explicit_values only

  static ScalingPolicy per_row() { return {ScalingKind::per_row, {}}; }
  static ScalingPolicy global() { return {ScalingKind::global, {}}; }
  static ScalingPolicy fixed(std::vector<Scalar> v) {
    return {ScalingKind::explicit_values, std::move(v)};
  }
};

using ScalingPolicyd = ScalingPolicy<double>;

/// Smallest scale row i admits: s_i ≥ Σ_j a_ij keeps the self-leak resistor
/// non-negative, s_i ≥ max_j |a_ij| keeps every weight magnitude ≤ 1.
template <typename Scalar>
Scalar minimum_admissible_scale(const LinearSystem<Scalar>& sys, Index i) {
  const Scalar literal = compensated_sum(sys.A.row(i));
  const Scalar largest = sys.A.row(i).cwiseAbs().maxCoeff();
  return std::max(literal, largest);
}

/// Throws unless every s_i is positive and admissible for its row.
template <typename Scalar>
void validate_scaling(const LinearSystem<Scalar>& sys, const ScalingVector<Scalar>& s) {
  if (s.size() != sys.size()) {
    throw Error(ErrorKind::dimension_mismatch,
                "scaling vector has " + std::to_string(s.size()) + " entries, system has " +
                    std::to_string(sys.size()) + " rows");
  }
  for (Index i = 0; i < s.size(); ++i) {
    if (!(s(i) > Scalar(0)) || !std::isfinite(static_cast<double>(s(i)))) {
      throw Error(ErrorKind::nonpositive_scale,
                  "scale for row " + std::to_string(i + 1) + " must be positive");
    }
    const Scalar minimum = minimum_admissible_scale(sys, i);
    if (s(i) < minimum) {
      throw Error(ErrorKind::scale_too_small,
                  "scale for row " + std::to_string(i + 1) + " is " +
                      std::to_string(static_cast<double>(s(i))) +
                      ", minimum admissible value is " +
                      std::to_string(static_cast<double>(minimum)));
    }
  }
}

/// per_row: s_i = Σ_j |a_ij|. global: every entry is max_i Σ_j |a_ij|.
/// explicit_values: validated pass-through.
template <typename Scalar>
ScalingVector<Scalar> choose_scaling(const LinearSystem<Scalar>& sys,
                                     const ScalingPolicy<Scalar>& policy) {
  validate(sys);
  const Index n = sys.size();
  ScalingVector<Scalar> out{VectorX<Scalar>(n)};
  switch (policy.kind) {
    case ScalingKind::per_row:
      for (Index i = 0; i < n; ++i) out.s(i) = compensated_sum(sys.A.row(i).cwiseAbs());
      break;
    case ScalingKind::global: {
      Scalar largest{0};
      for (Index i = 0; i < n; ++i) {
        largest = std::max(largest, compensated_sum(sys.A.row(i).cwiseAbs()));
      }
      out.s.setConstant(largest);
      break;
    }
    case ScalingKind::explicit_values:
      if (static_cast<Index>(policy.values.size()) != n) {
        throw Error(ErrorKind::dimension_mismatch,
                    "expected " + std::to_string(n) + " scale values, got " +
                        std::to_string(policy.values.size()));
      }
      for (Index i = 0; i < n; ++i) out.s(i) = policy.values[static_cast<std::size_t>(i)];
      break;
  }
  validate_scaling(sys, out);
  return out;
}

enum class SynthesisMode { physical, idealized };

template <typename Scalar = double>
struct SynthesisOptions {
  SynthesisMode mode = SynthesisMode::physical;
  Scalar capacitance_nF = Scalar(1);
  Scalar parasitic_mS = Scalar(0);
};

/// The resistor network realizing one scaled system. Infinite resistors are
/// zero conductances.
template <typename Scalar = double>
struct CircuitNetwork {
  MatrixX<Scalar> G;       ///< weight conductances, mS (G_ij = a_ij / s_i)
  VectorX<Scalar> G_self;  ///< summing-node leak to ground, mS
  VectorX<Scalar> bias;    ///< non-inverting input voltages b_i / s_i, V
  VectorX<Scalar> C_p;     ///< parasitic capacitance, nF
  VectorX<Scalar> g_p;     ///< parasitic conductance, mS

  Index size() const { return G.rows(); }

  /// 1 / R_eqv,i: everything hanging off summing node i.
  Scalar total_conductance(Index i) const {
    return compensated_sum(G.row(i)) + G_self(i) + g_p(i);
  }

  VectorX<Scalar> total_conductance() const {
    VectorX<Scalar> out(size());
    for (Index i = 0; i < size(); ++i) out(i) = total_conductance(i);
    return out;
  }

  /// R_ij in kΩ, +inf for an absent resistor.
  Scalar resistance(Index i, Index j) const { return reciprocal(G(i, j)); }
  Scalar self_resistance(Index i) const { return reciprocal(G_self(i)); }

 private:
  static Scalar reciprocal(Scalar g) {
    return g == Scalar(0) ? std::numeric_limits<Scalar>::infinity() : Scalar(1) / g;
  }
};

using CircuitNetworkd = CircuitNetwork<double>;

template <typename Scalar>
CircuitNetwork<Scalar> synthesize(const LinearSystem<Scalar>& sys,
                                  const ScalingVector<Scalar>& s,
                                  const SynthesisOptions<Scalar>& opts = {}) {
  validate(sys);
  validate_scaling(sys, s);
  if (!(opts.capacitance_nF > Scalar(0))) {
    throw Error(ErrorKind::invalid_config, "parasitic capacitance must be positive");
  }
  if (opts.parasitic_mS < Scalar(0)) {
    throw Error(ErrorKind::invalid_config, "parasitic conductance must be non-negative");
  }
  const Index n = sys.size();
  if (opts.mode == SynthesisMode::physical) {
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (sys.A(i, j) < Scalar(0)) {
          throw Error(ErrorKind::negative_coefficient,
                      "coefficient a_" + std::to_string(i + 1) + std::to_string(j + 1) +
                          " is negative and cannot be realized as a resistor");
        }
      }
    }
  }

  CircuitNetwork<Scalar> net;
  net.G.resize(n, n);
  for (Index i = 0; i < n; ++i) net.G.row(i) = sys.A.row(i) / s(i);
  net.bias = sys.b.cwiseQuotient(s.s);
  net.G_self.resize(n);
  for (Index i = 0; i < n; ++i) {
    // An exactly zero slack is an open circuit; otherwise take whatever the
    // weights leave over so the node conductance sums to one.
    const Scalar slack = s(i) - compensated_sum(sys.A.row(i));
    if (slack == Scalar(0)) {
      net.G_self(i) = Scalar(0);
    } else {
      net.G_self(i) = std::max(Scalar(0), Scalar(1) - compensated_sum(net.G.row(i)));
    }
  }
  net.C_p = VectorX<Scalar>::Constant(n, opts.capacitance_nF);
  net.g_p = VectorX<Scalar>::Constant(n, opts.parasitic_mS);
  return net;
}

/// Rows whose bias |b_i / s_i| exceeds the rail magnitude; such a network
/// cannot hold its non-inverting input.
template <typename Scalar>
std::vector<Index> bias_beyond_rails(const CircuitNetwork<Scalar>& net, Scalar v_m) {
  std::vector<Index> rows;
  for (Index i = 0; i < net.size(); ++i) {
    if (Eigen::numext::abs(net.bias(i)) > v_m) rows.push_back(i);
  }
  return rows;
}

struct NetlistOptions {
  std::string title;
  std::vector<std::string> labels;  ///< optional per-neuron labels
  double v_m = 15.0;
};

struct ComponentCount {
  int opamps = 0;
  int resistors = 0;
  int capacitors = 0;
  int sources = 0;
};

/// Deterministic line-oriented netlist, one element per line.
std::string export_netlist(const CircuitNetworkd& net, const NetlistOptions& opts = {});

/// Counts element lines of a netlist produced by export_netlist.
ComponentCount count_components(const std::string& netlist);

}  // namespace ahnn
