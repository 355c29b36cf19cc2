#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dicke/params.hpp"
#include "dicke/sweep.hpp"

namespace dicke {

struct FigureCurve {
  std::string label;
  SystemParams params;  // rabi is overwritten by the sweep axis
};

/// Physics parameters and grid of one figure. One-axis presets sweep the
/// pump 2Ω/(Nγ) for every curve; fig3 is a single (Ω, Δ) map.
struct FigurePreset {
  std::string name;
  std::string description;
  std::vector<FigureCurve> curves;
  std::vector<AxisSpec> axes;
};

/// fig2 … fig6. Throws UnknownFigure.
FigurePreset figure_preset(std::string_view name);

std::vector<std::string> figure_names();

}  // namespace dicke
