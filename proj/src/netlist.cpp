#include <cstdio>
#include <sstream>

#include "ahnn/synthesis.hpp"
#include "ahnn/version.hpp"

namespace ahnn {
namespace {

std::string format6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string export_netlist(const CircuitNetworkd& net, const NetlistOptions& opts) {
  const Index n = net.size();
  std::ostringstream out;
  out << "* ahnn netlist generator " << kVersion << "\n";
  if (!opts.title.empty()) out << "* " << opts.title << "\n";
  out << "* units: resistance kOhm, capacitance nF, voltage V\n";
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (k < opts.labels.size() && !opts.labels[k].empty()) {
      out << "* neuron " << i + 1 << ": " << opts.labels[k] << "\n";
    }
  }
  for (Index i = 0; i < n; ++i) {
    const auto row = std::to_string(i + 1);
    for (Index j = 0; j < n; ++j) {
      if (net.G(i, j) == 0.0) continue;
      out << "R" << row << "_" << j + 1 << " node_out" << j + 1 << " node_sum" << row << " "
          << format6(net.resistance(i, j)) << "\n";
    }
    if (net.G_self(i) != 0.0) {
      out << "RS" << row << " node_sum" << row << " 0 " << format6(net.self_resistance(i))
          << "\n";
    }
    if (net.g_p(i) != 0.0) {
      out << "RP" << row << " node_sum" << row << " 0 " << format6(1.0 / net.g_p(i)) << "\n";
    }
    out << "C" << row << " node_sum" << row << " 0 " << format6(net.C_p(i)) << "\n";
    out << "VB" << row << " node_bias" << row << " 0 " << format6(net.bias(i)) << "\n";
    out << "X" << row << " node_bias" << row << " node_sum" << row << " node_out" << row
        << " OPAMP\n";
  }
  out << "VPOS vpos 0 " << format6(opts.v_m) << "\n";
  out << "VNEG vneg 0 " << format6(-opts.v_m) << "\n";
  out << ".end\n";
  return out.str();
}

ComponentCount count_components(const std::string& netlist) {
  ComponentCount count;
  std::istringstream in(netlist);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    switch (line.front()) {
      case 'R': ++count.resistors; break;
      case 'C': ++count.capacitors; break;
      case 'V': ++count.sources; break;
      case 'X': ++count.opamps; break;
      default: break;
    }
  }
  return count;
}

}  // namespace ahnn
