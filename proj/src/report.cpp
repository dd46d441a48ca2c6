#include <cstdio>
#include <sstream>

#include "ahnn/dynamics.hpp"
#include "ahnn/stability.hpp"

namespace ahnn {
namespace {

std::string num(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

template <typename Derived>
std::string row_text(const Eigen::MatrixBase<Derived>& row) {
  std::string out;
  for (Index j = 0; j < row.size(); ++j) {
    if (j) out += ' ';
    out += num(row(j), 10);
  }
  return out;
}

}  // namespace

const char* to_string(HopfieldClass c) noexcept {
  switch (c) {
    case HopfieldClass::standard: return "standard";
    case HopfieldClass::symmetric: return "symmetric";
    case HopfieldClass::asymmetric: return "asymmetric";
  }
  return "unknown";
}

const char* to_string(Verdict v) noexcept {
  return v == Verdict::certified_stable ? "certified-stable" : "not-certified";
}

const char* to_string(TrajectoryStatus s) noexcept {
  switch (s) {
    case TrajectoryStatus::converged: return "converged";
    case TrajectoryStatus::not_converged: return "not-converged";
    case TrajectoryStatus::step_underflow: return "step-underflow";
  }
  return "unknown";
}

const char* to_string(SolveOutcome o) noexcept {
  switch (o) {
    case SolveOutcome::success: return "success";
    case SolveOutcome::not_certified: return "not-certified";
    case SolveOutcome::non_convergence: return "non-convergence";
    case SolveOutcome::saturated: return "saturated-solution";
  }
  return "unknown";
}

std::string format_report(const StabilityReportd& report) {
  std::ostringstream out;
  const Index n = report.t_matrix.size();
  out << "n: " << n << "\n";
  for (Index i = 0; i < n; ++i) {
    out << "t_row" << i + 1 << ": " << row_text(report.t_matrix.values.row(i)) << "\n";
  }
  out << "leading_minors: " << row_text(report.leading_minors.transpose()) << "\n";
  out << "is_m_matrix: " << (report.is_m_matrix ? "true" : "false") << "\n";
  out << "boundary: " << (report.boundary ? "true" : "false") << "\n";
  out << "dd_margins: " << row_text(report.dd_margins.transpose()) << "\n";
  out << "diagonally_dominant: " << (report.diagonally_dominant ? "true" : "false") << "\n";
  out << "hopfield_class: " << to_string(report.hopfield_class) << "\n";
  out << "verdict: " << to_string(report.verdict) << "\n";
  return out.str();
}

std::string minors_csv(const StabilityReportd& report) {
  std::string out = "index,minor\n";
  for (Index k = 0; k < report.leading_minors.size(); ++k) {
    out += std::to_string(k + 1) + "," + num(report.leading_minors(k), 17) + "\n";
  }
  return out;
}

std::string trajectory_csv(const Trajectory<double>& traj) {
  std::string out = "t";
  const Index n = traj.final_V.size();
  for (Index i = 0; i < n; ++i) out += ",u" + std::to_string(i + 1);
  for (Index i = 0; i < n; ++i) out += ",V" + std::to_string(i + 1);
  out += ",E\n";
  for (const auto& s : traj.samples) {
    out += num(s.t, 12);
    for (Index i = 0; i < n; ++i) out += "," + num(s.u(i), 12);
    for (Index i = 0; i < n; ++i) out += "," + num(s.V(i), 12);
    out += "," + num(s.E, 12) + "\n";
  }
  return out;
}

std::string surface_csv(const std::vector<SurfacePoint<double>>& points) {
  std::string out = "V1,V2,E\n";
  for (const auto& p : points) {
    out += num(p.V1, 12) + "," + num(p.V2, 12) + "," + num(p.E, 12) + "\n";
  }
  return out;
}

}  // namespace ahnn
