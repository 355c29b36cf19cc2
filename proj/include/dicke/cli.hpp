#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dicke/params.hpp"
#include "dicke/steady_state.hpp"
#include "dicke/sweep.hpp"

namespace dicke::cli {

enum class Command { expect, rho, concurrence, sweep, figure, oracle_check, maximize };

struct RunConfig {
  Command command = Command::concurrence;
  SystemParams params;
  bool n_given = false;
  std::optional<double> pump;  // overrides rabi when set
  std::vector<AxisSpec> axes;
  std::string output_path;     // empty: standard output
  Precision precision = Precision::standard;
  std::string figure;
  std::optional<std::array<int, 3>> moment;  // expect --moment p,r,f
  int threads = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Throws InvalidParams (usage) on malformed command lines. Returns nullopt
/// when help was requested and printed to `out`.
std::optional<RunConfig> parse(int argc, const char* const* argv, std::ostream& out);

/// Executes a parsed command. Library errors propagate.
void run(const RunConfig& config, std::ostream& out);

/// parse + run with exit-code mapping: 0 ok, 2 usage, 3 numerical. The
/// diagnostic line names the originating error.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dicke::cli
