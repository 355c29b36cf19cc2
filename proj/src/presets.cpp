#include "dicke/presets.hpp"

#include <cstdio>

namespace dicke {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

AxisSpec pump_axis(double stop, int points) { return {AxisName::pump, stop / points, stop, points}; }

// Curves given as (2δ/(Nγ), 2Δ/(Nγ)) pairs.
std::vector<FigureCurve> scaled_curves(int n, std::initializer_list<std::pair<double, double>> pairs) {
  std::vector<FigureCurve> curves;
  for (const auto& [d, det] : pairs) {
    SystemParams p;
    p.n_qubits = n;
    p.dipole_shift = d * n / 2.0;
    p.detuning = det * n / 2.0;
    curves.push_back({"2delta/N=" + fmt(d) + " 2Delta/N=" + fmt(det), p});
  }
  return curves;
}

}  // namespace

std::vector<std::string> figure_names() { return {"fig2", "fig3", "fig4", "fig5", "fig6"}; }

FigurePreset figure_preset(std::string_view name) {
  FigurePreset f;
  f.name = std::string(name);
  if (name == "fig2") {
    f.description = "N=2, Delta = -2 delta (tilde Delta + delta = 0), delta/gamma in {0,5,10,15}";
    for (double d : {0.0, 5.0, 10.0, 15.0}) {
      SystemParams p;
      p.n_qubits = 2;
      p.dipole_shift = d;
      p.detuning = -2.0 * d;
      f.curves.push_back({"delta=" + fmt(d), p});
    }
    f.axes = {pump_axis(3.0, 400)};
  } else if (name == "fig3") {
    f.description = "N=2, delta/gamma=5, map over rabi in (0,5] and detuning in [-20,5]";
    SystemParams p;
    p.n_qubits = 2;
    p.dipole_shift = 5.0;
    f.curves.push_back({"delta=5", p});
    f.axes = {{AxisName::rabi, 0.05, 5.0, 100}, {AxisName::detuning, -20.0, 5.0, 126}};
  } else if (name == "fig4") {
    f.description = "N=6, (2delta/N, 2Delta/N) in {(0,0),(1,-0.25),(1,-1.4),(1,-2)}";
    f.curves = scaled_curves(6, {{0.0, 0.0}, {1.0, -0.25}, {1.0, -1.4}, {1.0, -2.0}});
    f.axes = {pump_axis(3.0, 400)};
  } else if (name == "fig5") {
    f.description = "N=50, (2delta/N, 2Delta/N) in {(0,0),(0.1,-0.1),(0.2,-0.2),(0.3,-0.3)}";
    f.curves = scaled_curves(50, {{0.0, 0.0}, {0.1, -0.1}, {0.2, -0.2}, {0.3, -0.3}});
    f.axes = {pump_axis(8.0, 1600)};
  } else if (name == "fig6") {
    f.description = "N=74, (2delta/N, 2Delta/N) in {(0,0),(0.1,-0.1),(0.15,-0.15),(0.2,-0.2)}";
    f.curves = scaled_curves(74, {{0.0, 0.0}, {0.1, -0.1}, {0.15, -0.15}, {0.2, -0.2}});
    f.axes = {pump_axis(8.0, 1600)};
  } else {
    throw UnknownFigure("unknown figure '" + std::string(name) + "' (expected fig2..fig6)");
  }
  return f;
}

}  // namespace dicke
