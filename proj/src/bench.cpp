#include "ahnn/bench.hpp"

#include <atomic>
#include <cstdio>
#include <random>
#include <thread>

namespace ahnn {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

BenchRecord run_trial(const BenchSpec& spec, Index size, int trial) {
  BenchRecord rec;
  rec.size = size;
  rec.trial = trial;
  rec.seed = trial_seed(spec.seed, size, trial);
  try {
    const auto sys = random_dd_system(size, rec.seed, spec.dominance_margin, spec.v_box);
    const VectorX<double> oracle = lu_solve(sys);
    SolveOptions<double> opts = spec.solve;
    opts.sim.sample_stride = 0;
    const auto result = solve(sys, opts);
    rec.certified = result.stability.verdict == Verdict::certified_stable;
    rec.outcome = result.outcome;
    if (result.trajectory) {
      rec.converged = result.trajectory->converged();
      rec.t_converge = result.trajectory->t_converge;
    }
    const double scale = oracle.cwiseAbs().maxCoeff();
    const double diff = (result.final_V - oracle).cwiseAbs().maxCoeff();
    rec.rel_err = scale > 0.0 ? diff / scale : diff;
    rec.residual = result.residual.norm_inf;
    rec.gain_bound =
        result.scaling.s.cwiseProduct(result.final_V.cwiseAbs()).maxCoeff() / spec.solve.amp.gain;
  } catch (const std::exception& e) {
    rec.failure = e.what();
  }
  return rec;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, Index size, int trial) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(size));
  return splitmix64(h ^ static_cast<std::uint64_t>(trial));
}

LinearSystemd random_dd_system(Index n, std::uint64_t seed, double dominance_margin,
                               double v_box, VectorX<double>* planted) {
  if (n < 1) throw Error(ErrorKind::dimension_zero, "system dimension must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LinearSystemd sys;
  sys.A.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    double off = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      sys.A(i, j) = 10.0 * unit(rng);
      off += sys.A(i, j);
    }
    sys.A(i, i) = off + dominance_margin + unit(rng);
  }
  VectorX<double> target(n);
  for (Index i = 0; i < n; ++i) target(i) = v_box * (2.0 * unit(rng) - 1.0);
  sys.b = sys.A * target;
  if (planted) *planted = target;
  return sys;
}

void validate(const BenchSpec& spec) {
  for (Index n : spec.sizes) {
    if (n < 1) throw Error(ErrorKind::invalid_config, "bench sizes must be ≥ 1");
  }
  if (spec.trials < 1) throw Error(ErrorKind::invalid_config, "bench trials must be ≥ 1");
  if (!(spec.v_box > 0.0) || !(spec.v_box < spec.solve.amp.v_m)) {
    throw Error(ErrorKind::invalid_config, "solution box must satisfy 0 < v_box < v_m");
  }
  if (spec.dominance_margin < 0.0) {
    throw Error(ErrorKind::invalid_config, "dominance margin must be non-negative");
  }
}

BenchReport run_benchmark(const BenchSpec& spec) {
  validate(spec);
  BenchReport report;
  const std::size_t per_size = static_cast<std::size_t>(spec.trials);
  report.records.resize(spec.sizes.size() * per_size);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < report.records.size(); k = next++) {
      report.records[k] = run_trial(spec, spec.sizes[k / per_size], static_cast<int>(k % per_size));
    }
  };
  const unsigned threads = std::max(1u, spec.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    SizeSummary sum;
    sum.size = spec.sizes[s];
    double total = 0.0;
    for (std::size_t k = s * per_size; k < (s + 1) * per_size; ++k) {
      const auto& r = report.records[k];
      ++sum.trials;
      sum.certified += r.certified;
      sum.converged += r.converged;
      sum.max_rel_err = std::max(sum.max_rel_err, r.rel_err);
      total += r.rel_err;
    }
    sum.mean_rel_err = sum.trials ? total / sum.trials : 0.0;
    report.summaries.push_back(sum);
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::string out = "size,trial,certified,converged,rel_err,residual,t_converge\n";
  for (const auto& r : report.records) {
    out += std::to_string(r.size) + "," + std::to_string(r.trial) + "," +
           (r.certified ? "1" : "0") + "," + (r.converged ? "1" : "0") + "," + num(r.rel_err) +
           "," + num(r.residual) + "," + (r.t_converge ? num(*r.t_converge) : "") + "\n";
  }
  return out;
}

MultiStartResult multi_start(const LinearSystemd& sys, int k, double noise_amplitude,
                             std::uint64_t seed, const SolveOptions<double>& opts) {
  if (k < 2) throw Error(ErrorKind::invalid_config, "multi-start needs at least two trials");
  if (noise_amplitude < 0.0) {
    throw Error(ErrorKind::invalid_config, "noise amplitude must be non-negative");
  }
  const auto s = choose_scaling(sys, opts.scaling);
  const auto net = synthesize(sys, s, opts.synthesis);
  MultiStartResult out;
  out.all_converged = true;
  out.mean = VectorX<double>::Zero(sys.size());
  for (int trial = 0; trial < k; ++trial) {
    SimConfig<double> cfg = opts.sim;
    cfg.sample_stride = 0;
    cfg.init = InitialCondition<double>::noise(noise_amplitude, trial_seed(seed, sys.size(), trial));
    const auto traj = integrate(net, opts.amp, cfg);
    out.finals.push_back(traj.final_V);
    out.converged.push_back(traj.converged());
    out.all_converged = out.all_converged && traj.converged();
    out.mean += traj.final_V;
  }
  out.mean /= static_cast<double>(k);
  for (std::size_t a = 0; a < out.finals.size(); ++a) {
    for (std::size_t b = a + 1; b < out.finals.size(); ++b) {
      const double scale =
          std::max(out.finals[a].cwiseAbs().maxCoeff(), out.finals[b].cwiseAbs().maxCoeff());
      const double diff = (out.finals[a] - out.finals[b]).cwiseAbs().maxCoeff();
      const double dev = scale > 0.0 ? diff / scale : diff;
      out.max_pairwise_deviation = std::max(out.max_pairwise_deviation, dev);
    }
  }
  return out;
}

}  // namespace ahnn
