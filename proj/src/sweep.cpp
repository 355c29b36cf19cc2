#include "dicke/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace dicke {

PointRecord evaluate_point(const SystemParams& params, Precision precision) {
  PointRecord rec;
  rec.params = params;
  ExpectationSet<double> moments;
  if (precision == Precision::extended) {
    const SteadyState<long double> state(params, true);
    const auto e = state.expectation_set();
    const auto rho = two_qubit_rho(e, params.n_qubits);
    const auto c = concurrence(rho);
    moments = e.cast<double>();
    rec.rho = rho.cast<double>();
    rec.concurrence = static_cast<double>(c.concurrence);
    rec.c_ref_1 = static_cast<double>(c.c_ref_1);
    rec.c_ref_2 = static_cast<double>(c.c_ref_2);
    for (int i = 0; i < 4; ++i) rec.lambdas[i] = static_cast<double>(c.lambdas[i]);
  } else {
    moments = SteadyState<double>(params).expectation_set();
    rec.rho = two_qubit_rho(moments, params.n_qubits);
    const auto c = concurrence(rec.rho);
    rec.concurrence = c.concurrence;
    rec.c_ref_1 = c.c_ref_1;
    rec.c_ref_2 = c.c_ref_2;
    rec.lambdas = c.lambdas;
  }
  const double n = params.n_qubits;
  rec.sz_per_n = moments.s_z / n;
  rec.spsm_per_n2 = moments.s_plus_s_minus / (n * n);
  return rec;
}

std::string_view to_string(AxisName name) {
  switch (name) {
    case AxisName::rabi: return "rabi";
    case AxisName::detuning: return "detuning";
    case AxisName::dipole_shift: return "dipole_shift";
    case AxisName::pump: return "pump";
  }
  return "?";
}

AxisName parse_axis_name(std::string_view text) {
  if (text == "rabi") return AxisName::rabi;
  if (text == "detuning") return AxisName::detuning;
  if (text == "dipole_shift" || text == "dipole") return AxisName::dipole_shift;
  if (text == "pump") return AxisName::pump;
  throw InvalidAxis("unknown axis name '" + std::string(text) + "'");
}

void AxisSpec::validate() const {
  if (!std::isfinite(start) || !std::isfinite(stop)) throw InvalidAxis("axis bounds must be finite");
  if (points == 1 && start == stop) return;
  if (points < 2) throw InvalidAxis("axis needs at least 2 points");
  if (!(start < stop)) throw InvalidAxis("axis start must be below stop");
}

double AxisSpec::coordinate(int i) const {
  if (points == 1) return start;
  if (i == points - 1) return stop;
  return start + (stop - start) * i / (points - 1);
}

std::vector<double> AxisSpec::coordinates() const {
  std::vector<double> c(points);
  for (int i = 0; i < points; ++i) c[i] = coordinate(i);
  return c;
}

namespace {

double parse_double(std::string_view s) {
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) throw InvalidAxis("bad number '" + tmp + "' in axis spec");
  return v;
}

}  // namespace

AxisSpec AxisSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 4) throw InvalidAxis("axis spec must be name:start:stop:points, got '" + std::string(text) + "'");
  AxisSpec a;
  a.name = parse_axis_name(parts[0]);
  a.start = parse_double(parts[1]);
  a.stop = parse_double(parts[2]);
  int pts = 0;
  const auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), pts);
  if (ec != std::errc() || ptr != parts[3].data() + parts[3].size())
    throw InvalidAxis("bad point count '" + std::string(parts[3]) + "'");
  a.points = pts;
  a.validate();
  return a;
}

void apply_axis(SystemParams& p, AxisName name, double value) {
  switch (name) {
    case AxisName::rabi: p.rabi = value; break;
    case AxisName::detuning: p.detuning = value; break;
    case AxisName::dipole_shift: p.dipole_shift = value; break;
    case AxisName::pump: p.rabi = value * p.n_qubits * p.decay / 2.0; break;
  }
}

const PointRecord& SweepResult::at(int i, int j) const {
  const int inner = axes.size() > 1 ? axes[1].points : 1;
  return records.at(static_cast<std::size_t>(i) * inner + j);
}

namespace {

bool drives_rabi(AxisName n) { return n == AxisName::rabi || n == AxisName::pump; }

}  // namespace

SweepResult sweep(const SystemParams& base, const std::vector<AxisSpec>& axes, const SweepOptions& options) {
  base.validate();
  if (axes.empty() || axes.size() > 2) throw InvalidAxis("sweep takes one or two axes");
  for (const auto& a : axes) a.validate();
  if (axes.size() == 2 &&
      (axes[0].name == axes[1].name || (drives_rabi(axes[0].name) && drives_rabi(axes[1].name))))
    throw InvalidAxis("sweep axes must be distinct");

  SweepResult result;
  result.axes = axes;
  std::size_t total = 1;
  for (const auto& a : axes) {
    result.grid.push_back(a.coordinates());
    total *= static_cast<std::size_t>(a.points);
  }
  if (total > 1'000'000) throw InvalidAxis("sweep grid exceeds 10^6 points");

  const std::size_t inner = axes.size() > 1 ? static_cast<std::size_t>(axes[1].points) : 1;
  const auto params_at = [&](std::size_t idx) {
    SystemParams p = base;
    apply_axis(p, axes[0].name, result.grid[0][idx / inner]);
    if (axes.size() > 1) apply_axis(p, axes[1].name, result.grid[1][idx % inner]);
    return p;
  };

  result.records.resize(total);
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(total)));
  if (threads == 1) {
    for (std::size_t i = 0; i < total; ++i) result.records[i] = evaluate_point(params_at(i), options.precision);
    return result;
  }

  // Strided partition; each worker remembers its lowest-index failure.
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> error_index(threads, std::numeric_limits<std::size_t>::max());
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < total; i += threads) {
          try {
            result.records[i] = evaluate_point(params_at(i), options.precision);
          } catch (...) {
            errors[t] = std::current_exception();
            error_index[t] = i;
            return;
          }
        }
      });
    }
  }
  const auto first = std::min_element(error_index.begin(), error_index.end());
  if (*first != std::numeric_limits<std::size_t>::max()) std::rethrow_exception(errors[first - error_index.begin()]);
  return result;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (hi < lo) std::swap(lo, hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Maximum2D maximize_2d(const std::function<double(double, double)>& objective, const Bounds2D& bounds,
                      const MaximizeOptions& options) {
  const int nx = std::max(2, options.coarse_points);
  const bool fixed_y = bounds.y_lo == bounds.y_hi;
  const int ny = fixed_y ? 1 : std::max(2, options.coarse_points);
  const auto xs = AxisSpec{AxisName::rabi, bounds.x_lo, bounds.x_hi, nx}.coordinates();
  const auto ys = fixed_y ? std::vector<double>{bounds.y_lo}
                          : AxisSpec{AxisName::detuning, bounds.y_lo, bounds.y_hi, ny}.coordinates();

  Maximum2D best{xs[0], ys[0], -std::numeric_limits<double>::infinity()};
  int bi = 0, bj = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      const double v = objective(xs[i], ys[j]);
      if (v > best.value) {
        best = {xs[i], ys[j], v};
        bi = i;
        bj = j;
      }
    }
  }

  const double x_lo = xs[std::max(0, bi - 1)], x_hi = xs[std::min(nx - 1, bi + 1)];
  const double y_lo = ys[std::max(0, bj - 1)], y_hi = ys[std::min(ny - 1, bj + 1)];
  double x = best.x, y = best.y;
  for (int round = 0; round < options.max_rounds; ++round) {
    const double nx_ = golden_section_maximize([&](double t) { return objective(t, y); }, x_lo, x_hi, options.tol_x);
    const double ny_ = fixed_y ? y
                               : golden_section_maximize([&](double t) { return objective(nx_, t); }, y_lo, y_hi,
                                                         options.tol_y);
    const bool done = std::abs(nx_ - x) < options.tol_x && std::abs(ny_ - y) < options.tol_y;
    x = nx_;
    y = ny_;
    if (done) break;
  }
  const double refined = objective(x, y);
  if (refined >= best.value) best = {x, y, refined};
  return best;
}

MaxConcurrence find_max_concurrence(const SystemParams& base, double rabi_lo, double rabi_hi, double detuning_lo,
                                    double detuning_hi, Precision precision) {
  base.validate();
  if (!(rabi_lo > 0)) throw ZeroDrive("maximization bounds must exclude zero drive");
  if (!(rabi_lo < rabi_hi) || detuning_hi < detuning_lo) throw InvalidAxis("invalid maximization bounds");
  const auto objective = [&](double rabi, double detuning) {
    SystemParams p = base;
    p.rabi = rabi;
    p.detuning = detuning;
    return evaluate_point(p, precision).concurrence;
  };
  MaximizeOptions opts;
  opts.tol_x = 1e-4 * base.n_qubits * base.decay / 2.0;
  opts.tol_y = opts.tol_x;
  const auto m = maximize_2d(objective, {rabi_lo, rabi_hi, detuning_lo, detuning_hi}, opts);
  MaxConcurrence out;
  out.argmax = base;
  out.argmax.rabi = m.x;
  out.argmax.detuning = m.y;
  out.concurrence = m.value;
  return out;
}

std::string_view to_string(TransitionKind kind) {
  switch (kind) {
    case TransitionKind::second_order_candidate: return "second_order_candidate";
    case TransitionKind::first_order_candidate: return "first_order_candidate";
    case TransitionKind::none: return "none";
  }
  return "?";
}

TransitionReport detect_transition(const SystemParams& base, const AxisSpec& pump_axis, const SweepOptions& options) {
  if (pump_axis.name != AxisName::pump) throw InvalidAxis("detect_transition needs a pump axis");
  if (pump_axis.points < kMinTransitionPoints)
    throw GridTooCoarse("transition detection needs at least " + std::to_string(kMinTransitionPoints) +
                        " pump points, got " + std::to_string(pump_axis.points));

  TransitionReport report;
  report.sweep = sweep(base, {pump_axis}, options);
  const auto& pumps = report.sweep.grid[0];
  const auto& recs = report.sweep.records;

  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const double slope = std::abs((recs[i + 1].sz_per_n - recs[i].sz_per_n) / (pumps[i + 1] - pumps[i]));
    if (slope > report.sharpness) {
      report.sharpness = slope;
      report.steepest_pump = 0.5 * (pumps[i] + pumps[i + 1]);
    }
  }
  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    const double h = 0.5 * (pumps[i + 1] - pumps[i - 1]);
    const double second =
        std::abs(recs[i + 1].sz_per_n - 2.0 * recs[i].sz_per_n + recs[i - 1].sz_per_n) / (h * h);
    if (second > report.curvature) {
      report.curvature = second;
      report.critical_pump = pumps[i];
    }
  }
  report.sharp = report.curvature * report.critical_pump * report.critical_pump > kSharpTransition;

  std::size_t peak = 0;
  for (std::size_t i = 1; i < recs.size(); ++i)
    if (recs[i].concurrence > recs[peak].concurrence) peak = i;
  report.peak_pump = pumps[peak];
  report.peak_concurrence = recs[peak].concurrence;
  for (std::size_t i = peak; i < recs.size(); ++i) {
    if (recs[i].concurrence < kCollapseThreshold) {
      report.collapse_pump = pumps[i];
      break;
    }
  }

  const bool has_shift = base.dipole_shift != 0.0;
  const bool has_detuning = base.detuning != 0.0;
  if (!has_shift && !has_detuning)
    report.kind = TransitionKind::second_order_candidate;
  else if (has_shift && has_detuning)
    report.kind = TransitionKind::first_order_candidate;
  else
    report.kind = TransitionKind::none;
  return report;
}

}  // namespace dicke
