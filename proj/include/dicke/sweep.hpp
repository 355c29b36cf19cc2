#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/pairwise.hpp"
#include "dicke/params.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

/// Full pipeline output at one parameter point.
struct PointRecord {
  SystemParams params;
  double concurrence = 0;
  double c_ref_1 = 0;
  double c_ref_2 = 0;
  double sz_per_n = 0;     // ⟨Sz⟩/N
  double spsm_per_n2 = 0;  // ⟨S+S−⟩/N²
  std::array<double, 4> lambdas{};
  TwoQubitDensityMatrix<double> rho;
};

/// expectation_set → two_qubit_rho → concurrence.
PointRecord evaluate_point(const SystemParams& params, Precision precision = Precision::standard);

enum class AxisName { rabi, detuning, dipole_shift, pump };

std::string_view to_string(AxisName name);
AxisName parse_axis_name(std::string_view text);

struct AxisSpec {
  AxisName name = AxisName::pump;
  double start = 0;
  double stop = 1;
  int points = 2;

  /// points ≥ 2 with start < stop, or the degenerate points == 1, start == stop.
  void validate() const;
  double coordinate(int i) const;
  std::vector<double> coordinates() const;

  /// "name:start:stop:points"
  static AxisSpec parse(std::string_view text);
};

/// Sets the axis quantity on `p`; pump sets Ω = pump·Nγ/2.
void apply_axis(SystemParams& p, AxisName name, double value);

struct SweepOptions {
  Precision precision = Precision::standard;
  int threads = 1;
};

/// Records are ordered with the first axis outermost.
struct SweepResult {
  std::vector<AxisSpec> axes;
  std::vector<std::vector<double>> grid;
  std::vector<PointRecord> records;

  const PointRecord& at(int i, int j = 0) const;
};

/// Evaluates the pipeline on the grid spanned by 1 or 2 distinct axes.
/// Output order does not depend on `threads`.
SweepResult sweep(const SystemParams& base, const std::vector<AxisSpec>& axes, const SweepOptions& options = {});

/// Golden-section maximization of a unimodal-on-[lo,hi] function; stops
/// when the bracket is narrower than `tol`.
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol);

struct Bounds2D {
  double x_lo, x_hi;
  double y_lo, y_hi;  // y_lo == y_hi fixes y
};

struct MaximizeOptions {
  int coarse_points = 48;
  double tol_x = 1e-4;
  double tol_y = 1e-4;
  int max_rounds = 50;
};

struct Maximum2D {
  double x = 0;
  double y = 0;
  double value = 0;
};

/// Coarse grid then alternating golden-section refinement per axis inside
/// the neighbouring grid cells of the coarse maximizer.
Maximum2D maximize_2d(const std::function<double(double, double)>& objective, const Bounds2D& bounds,
                      const MaximizeOptions& options = {});

struct MaxConcurrence {
  SystemParams argmax;
  double concurrence = 0;
};

/// Maximizes C over Ω ∈ [rabi_lo, rabi_hi] and Δ ∈ [detuning_lo, detuning_hi]
/// (fixed when equal). Refinement tolerance is 1e-4 in pump units.
MaxConcurrence find_max_concurrence(const SystemParams& base, double rabi_lo, double rabi_hi, double detuning_lo,
                                    double detuning_hi, Precision precision = Precision::standard);

enum class TransitionKind { second_order_candidate, first_order_candidate, none };

std::string_view to_string(TransitionKind kind);

struct TransitionReport {
  double critical_pump = 0;  // kink: max |d²(⟨Sz⟩/N)/dpump²|
  TransitionKind kind = TransitionKind::none;
  double sharpness = 0;      // max |d(⟨Sz⟩/N)/dpump|
  double steepest_pump = 0;  // where that maximum sits
  double curvature = 0;      // max |d²(⟨Sz⟩/N)/dpump²|
  bool sharp = false;        // curvature·critical_pump² above kSharpTransition
  double peak_pump = 0;      // argmax of C on the grid
  double peak_concurrence = 0;
  std::optional<double> collapse_pump;  // first pump past the peak with C < 0.01
  SweepResult sweep;
};

inline constexpr int kMinTransitionPoints = 200;
inline constexpr double kSharpTransition = 3.0;
inline constexpr double kCollapseThreshold = 0.01;

/// Finite-difference scan of ⟨Sz⟩/N along a pump axis. The critical pump
/// is where the slope changes most abruptly (the derivative discontinuity);
/// a jump in ⟨Sz⟩ itself shows up there too. The kind follows the
/// parameter regime: δ = Δ = 0 second order, both nonzero first order.
/// Throws GridTooCoarse below 200 points.
TransitionReport detect_transition(const SystemParams& base, const AxisSpec& pump_axis,
                                   const SweepOptions& options = {});

}  // namespace dicke
