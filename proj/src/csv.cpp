#include "dicke/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#ifndef DICKE_VERSION
#define DICKE_VERSION "dev"
#endif

namespace dicke {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void CsvWriter::comment(std::string_view line) { out_ << "# " << line << '\n'; }

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n';
}

std::string_view to_string(Precision p) { return p == Precision::extended ? "extended" : "standard"; }

Precision parse_precision(std::string_view text) {
  if (text == "standard") return Precision::standard;
  if (text == "extended") return Precision::extended;
  throw InvalidParams("precision must be 'standard' or 'extended'");
}

void write_metadata(CsvWriter& csv, std::string_view command, const SystemParams& p, Precision precision) {
  csv.comment(std::string("dicke_ent version=") + DICKE_VERSION);
  csv.comment("command=" + std::string(command));
  csv.comment("n_qubits=" + std::to_string(p.n_qubits));
  csv.comment("rabi=" + format_number(p.rabi));
  csv.comment("decay=" + format_number(p.decay));
  csv.comment("detuning=" + format_number(p.detuning));
  csv.comment("dipole_shift=" + format_number(p.dipole_shift));
  csv.comment("precision=" + std::string(to_string(precision)));
}

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.metadata.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (t.columns.empty()) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace dicke
