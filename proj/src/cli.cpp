#include "dicke/cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dicke/csv.hpp"
#include "dicke/oracle.hpp"
#include "dicke/pairwise.hpp"
#include "dicke/presets.hpp"

namespace dicke::cli {

namespace {

struct RawFlags {
  int n = 2;
  double rabi = 1.0;
  double detuning = 0.0;
  double dipole = 0.0;
  std::optional<double> pump;
  std::vector<std::string> axes;
  std::string out;
  std::string precision = "standard";
  std::string figure;
  std::string moment;
  int threads = 1;
};

void add_common(CLI::App* sub, RawFlags& f) {
  sub->add_option("--n", f.n, "number of qubits N");
  sub->add_option("--rabi", f.rabi, "Rabi frequency Omega/gamma");
  sub->add_option("--detuning", f.detuning, "detuning Delta/gamma");
  sub->add_option("--dipole", f.dipole, "dipole-dipole shift delta/gamma");
  sub->add_option("--pump", f.pump, "pump 2 Omega/(N gamma); overrides --rabi");
  sub->add_option("--axis", f.axes, "sweep axis name:start:stop:points (repeatable, at most 2)");
  sub->add_option("--out", f.out, "output CSV path (default: stdout)");
  sub->add_option("--precision", f.precision, "standard|extended")->check(CLI::IsMember({"standard", "extended"}));
  sub->add_option("--threads", f.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
}

std::array<int, 3> parse_moment(const std::string& text) {
  std::array<int, 3> m{};
  char c1 = 0, c2 = 0;
  std::istringstream ss(text);
  if (!(ss >> m[0] >> c1 >> m[1] >> c2 >> m[2]) || c1 != ',' || c2 != ',' || !ss.eof())
    throw InvalidParams("--moment expects p,r,f");
  return m;
}

std::vector<std::string> record_columns() {
  return {"C", "C_ref1", "C_ref2", "sz_per_n", "spsm_per_n2", "lambda1", "lambda2", "lambda3", "lambda4"};
}

void append_record(std::vector<double>& row, const PointRecord& r) {
  row.insert(row.end(), {r.concurrence, r.c_ref_1, r.c_ref_2, r.sz_per_n, r.spsm_per_n2});
  row.insert(row.end(), r.lambdas.begin(), r.lambdas.end());
}

std::string curve_metadata(const FigureCurve& c) {
  const auto& p = c.params;
  return "curve \"" + c.label + "\": n_qubits=" + std::to_string(p.n_qubits) + " rabi=axis decay=" +
         format_number(p.decay) + " detuning=" + format_number(p.detuning) +
         " dipole_shift=" + format_number(p.dipole_shift);
}

void run_figure(const RunConfig& cfg, CsvWriter& csv) {
  const FigurePreset fig = figure_preset(cfg.figure);
  SystemParams first = fig.curves.front().params;
  write_metadata(csv, "figure " + fig.name, first, cfg.precision);
  csv.comment(fig.description);
  for (const auto& c : fig.curves) csv.comment(curve_metadata(c));
  for (const auto& a : fig.axes)
    csv.comment("axis " + std::string(to_string(a.name)) + ":" + format_number(a.start) + ":" +
                format_number(a.stop) + ":" + std::to_string(a.points));
  const SweepOptions opts{cfg.precision, cfg.threads};

  if (fig.axes.size() == 2) {
    const auto res = sweep(fig.curves.front().params, fig.axes, opts);
    csv.header({std::string(to_string(fig.axes[0].name)), std::string(to_string(fig.axes[1].name)), "C", "C_ref1",
                "C_ref2"});
    for (int i = 0; i < fig.axes[0].points; ++i)
      for (int j = 0; j < fig.axes[1].points; ++j) {
        const auto& r = res.at(i, j);
        const double row[] = {res.grid[0][i], res.grid[1][j], r.concurrence, r.c_ref_1, r.c_ref_2};
        csv.row(row);
      }
    return;
  }

  std::vector<SweepResult> curves;
  for (const auto& c : fig.curves) curves.push_back(sweep(c.params, fig.axes, opts));
  std::vector<std::string> cols{"pump"};
  for (std::size_t k = 1; k <= curves.size(); ++k) {
    cols.push_back("C_" + std::to_string(k));
    cols.push_back("C_ref1_" + std::to_string(k));
  }
  csv.header(cols);
  for (int i = 0; i < fig.axes[0].points; ++i) {
    std::vector<double> row{curves.front().grid[0][i]};
    for (const auto& c : curves) {
      row.push_back(c.records[i].concurrence);
      row.push_back(c.records[i].c_ref_1);
    }
    csv.row(row);
  }
}

// Fixed validation grid unless --n narrows the qubit numbers.
void run_oracle_check(const RunConfig& cfg, CsvWriter& csv) {
  const std::vector<int> ns = cfg.n_given ? std::vector<int>{cfg.params.n_qubits} : std::vector<int>{2, 3, 4, 6};
  write_metadata(csv, "oracle-check", cfg.params, cfg.precision);
  csv.comment("grid rabi in [0.2,5] x5, detuning in [-10,2] x5, dipole_shift in {0,2,5}");
  csv.header({"n_qubits", "rabi", "detuning", "dipole_shift", "max_moment_err", "max_rho_err", "C", "C_oracle"});
  const auto rabis = AxisSpec{AxisName::rabi, 0.2, 5.0, 5}.coordinates();
  const auto dets = AxisSpec{AxisName::detuning, -10.0, 2.0, 5}.coordinates();
  double worst = 0;
  for (int n : ns) {
    for (double rabi : rabis)
      for (double det : dets)
        for (double dip : {0.0, 2.0, 5.0}) {
          const SystemParams p{n, rabi, cfg.params.decay, det, dip};
          const auto a = expectation_set(p, cfg.precision);
          const auto o = oracle::expectation_set(oracle::steady_state(p), n);
          const double moment_err = std::max({std::abs(a.s_plus - o.s_plus), std::abs(a.s_z - o.s_z),
                                              std::abs(a.s_z2 - o.s_z2), std::abs(a.s_plus_sz - o.s_plus_sz),
                                              std::abs(a.s_plus2 - o.s_plus2),
                                              std::abs(a.s_plus_s_minus - o.s_plus_s_minus)});
          const auto ra = two_qubit_rho(a, n);
          const auto ro = two_qubit_rho(o, n);
          const double rho_err = (ra.entries - ro.entries).cwiseAbs().maxCoeff();
          worst = std::max({worst, moment_err, rho_err});
          const double row[] = {double(n), rabi, det, dip, moment_err, rho_err, concurrence(ra).concurrence,
                                concurrence(ro).concurrence};
          csv.row(row);
        }
  }
  csv.comment("max_abs_error=" + format_number(worst));
  if (worst > 1e-8) throw NumericalFailure("oracle mismatch " + format_number(worst) + " exceeds 1e-8");
}

void run_maximize(const RunConfig& cfg, CsvWriter& csv) {
  const double scale = cfg.params.n_qubits * cfg.params.decay / 2.0;
  double rabi_lo = 0.01 * scale, rabi_hi = 3.0 * scale;
  double det_lo = cfg.params.detuning, det_hi = cfg.params.detuning;
  for (const auto& a : cfg.axes) {
    if (a.name == AxisName::rabi) {
      rabi_lo = a.start;
      rabi_hi = a.stop;
    } else if (a.name == AxisName::pump) {
      rabi_lo = a.start * scale;
      rabi_hi = a.stop * scale;
    } else if (a.name == AxisName::detuning) {
      det_lo = a.start;
      det_hi = a.stop;
    } else {
      throw InvalidAxis("maximize accepts rabi, pump or detuning axes");
    }
  }
  write_metadata(csv, "maximize", cfg.params, cfg.precision);
  csv.comment("bounds rabi=[" + format_number(rabi_lo) + "," + format_number(rabi_hi) + "] detuning=[" +
              format_number(det_lo) + "," + format_number(det_hi) + "]");
  const auto m = find_max_concurrence(cfg.params, rabi_lo, rabi_hi, det_lo, det_hi, cfg.precision);
  const auto r = evaluate_point(m.argmax, cfg.precision);
  csv.header({"n_qubits", "rabi", "pump", "detuning", "dipole_shift", "C", "C_ref1", "C_ref2"});
  const double row[] = {double(m.argmax.n_qubits), m.argmax.rabi, m.argmax.pump(), m.argmax.detuning,
                        m.argmax.dipole_shift, r.concurrence, r.c_ref_1, r.c_ref_2};
  csv.row(row);
}

const char* command_name(Command c) {
  switch (c) {
    case Command::expect: return "expect";
    case Command::rho: return "rho";
    case Command::concurrence: return "concurrence";
    case Command::sweep: return "sweep";
    case Command::figure: return "figure";
    case Command::oracle_check: return "oracle-check";
    case Command::maximize: return "maximize";
  }
  return "?";
}

void run_to(const RunConfig& cfg, std::ostream& out) {
  CsvWriter csv(out);
  const SystemParams& p = cfg.params;
  switch (cfg.command) {
    case Command::expect: {
      write_metadata(csv, "expect", p, cfg.precision);
      if (cfg.moment) {
        const auto [mp, mr, mf] = *cfg.moment;
        const auto v = cfg.precision == Precision::extended
                           ? std::complex<double>(SteadyState<long double>(p, true).expectation(mp, mr, mf))
                           : SteadyState<double>(p).expectation(mp, mr, mf);
        csv.comment("moment p=" + std::to_string(mp) + " r=" + std::to_string(mr) + " f=" + std::to_string(mf));
        csv.header({"value_re", "value_im"});
        const double row[] = {v.real(), v.imag()};
        csv.row(row);
        return;
      }
      const auto e = expectation_set(p, cfg.precision);
      csv.header({"s_plus_re", "s_plus_im", "s_z", "s_z2", "s_plus_sz_re", "s_plus_sz_im", "s_plus2_re",
                  "s_plus2_im", "s_plus_s_minus"});
      const double row[] = {e.s_plus.real(),    e.s_plus.imag(),  e.s_z,           e.s_z2,          e.s_plus_sz.real(),
                            e.s_plus_sz.imag(), e.s_plus2.real(), e.s_plus2.imag(), e.s_plus_s_minus};
      csv.row(row);
      return;
    }
    case Command::rho: {
      write_metadata(csv, "rho", p, cfg.precision);
      csv.comment("basis ee,eg,ge,gg; row-major (re,im) pairs");
      const auto rho = two_qubit_rho(expectation_set(p, cfg.precision), p.n_qubits);
      std::vector<std::string> cols;
      std::vector<double> row;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          const std::string tag = "rho" + std::to_string(i + 1) + std::to_string(j + 1);
          cols.push_back(tag + "_re");
          cols.push_back(tag + "_im");
          row.push_back(rho.entries(i, j).real());
          row.push_back(rho.entries(i, j).imag());
        }
      csv.header(cols);
      csv.row(row);
      return;
    }
    case Command::concurrence: {
      write_metadata(csv, "concurrence", p, cfg.precision);
      const auto r = evaluate_point(p, cfg.precision);
      std::vector<std::string> cols{"n_qubits", "rabi", "pump", "detuning", "dipole_shift"};
      const auto rc = record_columns();
      cols.insert(cols.end(), rc.begin(), rc.end());
      csv.header(cols);
      std::vector<double> row{double(p.n_qubits), p.rabi, p.pump(), p.detuning, p.dipole_shift};
      append_record(row, r);
      csv.row(row);
      return;
    }
    case Command::sweep: {
      if (cfg.axes.empty()) throw InvalidAxis("sweep needs at least one --axis");
      write_metadata(csv, "sweep", p, cfg.precision);
      for (const auto& a : cfg.axes)
        csv.comment("axis " + std::string(to_string(a.name)) + ":" + format_number(a.start) + ":" +
                    format_number(a.stop) + ":" + std::to_string(a.points));
      const auto res = sweep(p, cfg.axes, {cfg.precision, cfg.threads});
      std::vector<std::string> cols;
      for (const auto& a : cfg.axes) cols.emplace_back(to_string(a.name));
      const auto rc = record_columns();
      cols.insert(cols.end(), rc.begin(), rc.end());
      csv.header(cols);
      const int inner = cfg.axes.size() > 1 ? cfg.axes[1].points : 1;
      for (std::size_t k = 0; k < res.records.size(); ++k) {
        std::vector<double> row{res.grid[0][k / inner]};
        if (cfg.axes.size() > 1) row.push_back(res.grid[1][k % inner]);
        append_record(row, res.records[k]);
        csv.row(row);
      }
      return;
    }
    case Command::figure: run_figure(cfg, csv); return;
    case Command::oracle_check: run_oracle_check(cfg, csv); return;
    case Command::maximize: run_maximize(cfg, csv); return;
  }
}

}  // namespace

std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Steady-state pairwise entanglement of a driven, collectively damped qubit ensemble"};
  app.require_subcommand(1);
  RawFlags flags;

  const std::pair<Command, const char*> commands[] = {
      {Command::expect, "collective moments of the steady state"},
      {Command::rho, "two-qubit reduced density matrix"},
      {Command::concurrence, "concurrence at one parameter point"},
      {Command::sweep, "grid sweep over one or two axes"},
      {Command::figure, "figure reproduction preset"},
      {Command::oracle_check, "compare against the Liouvillian null-space oracle"},
      {Command::maximize, "maximize concurrence over drive and detuning"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(cmd), help);
    add_common(sub, flags);
    if (cmd == Command::figure) {
      sub->add_option("name", flags.figure, "fig2|fig3|fig4|fig5|fig6");
      sub->add_option("--figure", flags.figure, "fig2|fig3|fig4|fig5|fig6");
    }
    if (cmd == Command::expect) sub->add_option("--moment", flags.moment, "single moment p,r,f");
    subs.emplace_back(cmd, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InvalidParams(e.what());
  }

  RunConfig cfg;
  for (const auto& [cmd, sub] : subs) {
    if (!sub->parsed()) continue;
    cfg.command = cmd;
    cfg.n_given = sub->count("--n") > 0;
    if (sub->count("--rabi") > 0 && sub->count("--pump") > 0)
      throw InvalidParams("--rabi and --pump are mutually exclusive");
  }
  cfg.params.n_qubits = flags.n;
  cfg.params.rabi = flags.rabi;
  cfg.params.detuning = flags.detuning;
  cfg.params.dipole_shift = flags.dipole;
  cfg.params.validate();
  if (flags.pump) {
    cfg.pump = flags.pump;
    cfg.params.rabi = *flags.pump * cfg.params.n_qubits * cfg.params.decay / 2.0;
    cfg.params.validate();
  }
  if (flags.axes.size() > 2) throw InvalidAxis("at most two --axis options");
  for (const auto& a : flags.axes) cfg.axes.push_back(AxisSpec::parse(a));
  cfg.output_path = flags.out;
  cfg.precision = parse_precision(flags.precision);
  cfg.figure = flags.figure;
  cfg.threads = flags.threads;
  if (!flags.moment.empty()) cfg.moment = parse_moment(flags.moment);
  if (cfg.command == Command::figure && cfg.figure.empty()) throw InvalidParams("figure needs a preset name");
  return cfg;
}

void run(const RunConfig& config, std::ostream& out) {
  if (config.output_path.empty()) {
    run_to(config, out);
    return;
  }
  // Render fully before touching the file so errors leave no partial output.
  std::ostringstream buffer;
  run_to(config, buffer);
  std::ofstream file(config.output_path);
  if (!file) throw InvalidParams("cannot open output file '" + config.output_path + "'");
  file << buffer.str();
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse(argc, argv, out);
    if (!cfg) return kExitOk;
    run(*cfg, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return e.is_usage() ? kExitUsage : kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: NumericalFailure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace dicke::cli
