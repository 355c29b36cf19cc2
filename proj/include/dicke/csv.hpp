#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/params.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

/// 17 significant digits; parses back to the identical double.
std::string format_number(double x);

/// Plain CSV with `#`-prefixed metadata lines before the header.
class CsvWriter {
public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view line);
  void header(const std::vector<std::string>& columns);
  void row(std::span<const double> values);

private:
  std::ostream& out_;
};

/// `# key=value` lines for every SystemParams field, the precision mode and
/// the artifact version.
void write_metadata(CsvWriter& csv, std::string_view command, const SystemParams& params, Precision precision);

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

struct CsvTable {
  std::vector<std::string> metadata;  // comment lines without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);

}  // namespace dicke
