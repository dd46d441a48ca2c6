#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ahnn/dynamics.hpp"

namespace ahnn {

/// Random strictly row-dominant system with a planted solution.
///
/// Off-diagonals are uniform in [0, 10]; a_ii = Σ_{j≠i} a_ij + δ + U(0,1).
/// The planted V* is uniform in [−v_box, v_box]^n and b = A·V*, so the exact
/// solution sits inside the amplifier hypercube when v_box < v_m.
LinearSystemd random_dd_system(Index n, std::uint64_t seed, double dominance_margin,
                               double v_box, VectorX<double>* planted = nullptr);

/// Seed for one (size, trial) cell, derived from the master seed.
std::uint64_t trial_seed(std::uint64_t master, Index size, int trial);

struct BenchSpec {
  std::vector<Index> sizes;
  int trials = 1;
  std::uint64_t seed = 1;
  double dominance_margin = 1.0;
  double v_box = 10.0;
  SolveOptions<double> solve;
  unsigned threads = 1;
};

void validate(const BenchSpec& spec);

struct BenchRecord {
  Index size = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool certified = false;
  bool converged = false;
  SolveOutcome outcome = SolveOutcome::non_convergence;
  double rel_err = 0.0;   ///< ‖V − V_lu‖∞ / ‖V_lu‖∞
  double residual = 0.0;  ///< ‖A·V − b‖∞
  double gain_bound = 0.0;  ///< max_i s_i·|V_i| / G
  std::optional<double> t_converge;
  std::string failure;  ///< set when the trial raised an error
};

struct SizeSummary {
  Index size = 0;
  int trials = 0;
  int certified = 0;
  int converged = 0;
  double max_rel_err = 0.0;
  double mean_rel_err = 0.0;
};

struct BenchReport {
  std::vector<BenchRecord> records;  ///< (size, trial) order
  std::vector<SizeSummary> summaries;
};

/// Generate, certify, solve and compare against the LU oracle for every
/// (size, trial). Failures are recorded, never thrown.
BenchReport run_benchmark(const BenchSpec& spec);

/// `size,trial,certified,converged,rel_err,residual,t_converge`.
std::string bench_csv(const BenchReport& report);

struct MultiStartResult {
  std::vector<VectorX<double>> finals;
  std::vector<bool> converged;
  VectorX<double> mean;
  double max_pairwise_deviation = 0.0;  ///< relative, ∞-norm
  bool all_converged = false;
};

/// Runs the network k times from uniform noise initial conditions.
MultiStartResult multi_start(const LinearSystemd& sys, int k, double noise_amplitude,
                             std::uint64_t seed, const SolveOptions<double>& opts = {});

}  // namespace ahnn
