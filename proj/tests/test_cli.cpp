#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "dicke/cli.hpp"
#include "dicke/csv.hpp"

using namespace dicke;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "dicke_ent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

bool has_meta(const CsvTable& t, const std::string& line) {
  for (const auto& m : t.metadata)
    if (m == line) return true;
  return false;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 0.39298572252713157}) {
    const std::string s = format_number(x);
    CHECK(std::stod(s) == x);
  }
}

TEST_CASE("concurrence command") {
  const auto r = invoke({"concurrence", "--n", "2", "--rabi", "1.8", "--detuning", "-12", "--dipole", "5"});
  REQUIRE(r.code == cli::kExitOk);
  const auto t = parse(r.out);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][t.column("C")] == doctest::Approx(0.40).epsilon(0.03 / 0.40));
  for (const char* key : {"n_qubits=2", "rabi=1.8", "decay=1", "detuning=-12", "dipole_shift=5", "precision=standard"})
    CHECK(has_meta(t, key));
  bool version = false;
  for (const auto& m : t.metadata) version |= m.rfind("version=", 0) == 0 || m.find("version=") != std::string::npos;
  CHECK(version);
}

TEST_CASE("pump flag sets the drive") {
  const auto r = invoke({"concurrence", "--n", "10", "--pump", "0.5"});
  REQUIRE(r.code == 0);
  const auto t = parse(r.out);
  CHECK(t.rows[0][t.column("rabi")] == doctest::Approx(2.5));
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"bogus"}).code == cli::kExitUsage);
  CHECK(invoke({"concurrence", "--n", "two"}).code == cli::kExitUsage);
  CHECK(invoke({"concurrence", "--rabi", "1", "--pump", "1"}).code == cli::kExitUsage);
  CHECK(invoke({"sweep", "--axis", "pump:0:1"}).code == cli::kExitUsage);
  CHECK(invoke({"figure", "fig9"}).code == cli::kExitUsage);
  CHECK(invoke({"concurrence", "--precision", "quad"}).code == cli::kExitUsage);
  const auto r = invoke({"figure", "fig9"});
  CHECK(r.err.find("UnknownFigure") != std::string::npos);
}

TEST_CASE("numerical errors exit 3 with the error name") {
  auto r = invoke({"concurrence", "--n", "2", "--rabi", "0"});
  CHECK(r.code == cli::kExitNumerical);
  CHECK(r.err.find("ZeroDrive") != std::string::npos);

  r = invoke({"concurrence", "--n", "1", "--rabi", "1"});
  CHECK(r.code == cli::kExitNumerical);
  CHECK(r.err.find("PairUndefined") != std::string::npos);

  r = invoke({"expect", "--n", "2", "--moment", "0,3,0"});
  CHECK(r.code == cli::kExitNumerical);
  CHECK(r.err.find("IndexRange") != std::string::npos);
}

TEST_CASE("expect and rho commands") {
  auto r = invoke({"expect", "--n", "3", "--rabi", "1", "--moment", "0,0,0"});
  REQUIRE(r.code == 0);
  auto t = parse(r.out);
  CHECK(t.rows[0][t.column("value_re")] == doctest::Approx(1.0));

  r = invoke({"rho", "--n", "2", "--rabi", "1e-4"});
  REQUIRE(r.code == 0);
  t = parse(r.out);
  REQUIRE(t.rows.size() == 1);
  REQUIRE(t.rows[0].size() == 32);
  // ground-state limit: all weight on |gg⟩, the last diagonal entry
  CHECK(t.rows[0][30] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sweep output is bit-identical across runs and thread counts") {
  const std::vector<std::string> base{"sweep", "--n", "4", "--dipole", "1", "--axis", "pump:0.05:2:25", "--axis",
                                      "detuning:-2:0:3"};
  const auto a = invoke(base);
  const auto b = invoke(base);
  auto threaded = base;
  threaded.insert(threaded.end(), {"--threads", "4"});
  const auto c = invoke(threaded);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto ta = parse(a.out), tc = parse(c.out);
  CHECK(ta.rows == tc.rows);
  CHECK(ta.rows.size() == 75);
}

TEST_CASE("CSV round trip recovers every value") {
  const auto r = invoke({"sweep", "--n", "3", "--axis", "rabi:0.1:3:17"});
  REQUIRE(r.code == 0);
  const auto t = parse(r.out);
  std::ostringstream again;
  CsvWriter w(again);
  w.header(t.columns);
  for (const auto& row : t.rows) w.row(row);
  const auto t2 = parse(again.str());
  CHECK(t2.rows == t.rows);
  CHECK(t2.columns == t.columns);
}

TEST_CASE("figure fig2 columns") {
  const auto r = invoke({"figure", "fig2", "--threads", "4"});
  REQUIRE(r.code == 0);
  const auto t = parse(r.out);
  CHECK(t.rows.size() == 400);
  CHECK(t.columns.front() == "pump");
  for (int k = 1; k <= 4; ++k) {
    CHECK(t.column("C_" + std::to_string(k)) >= 0);
    CHECK(t.column("C_ref1_" + std::to_string(k)) >= 0);
  }
  CHECK(t.rows.back()[0] == doctest::Approx(3.0));
  CHECK(t.rows.front()[0] > 0);
  CHECK(has_meta(t, "n_qubits=2"));
}

TEST_CASE("--out writes the file only on success") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "dicke_cli_test_good.csv";
  const auto bad = dir / "dicke_cli_test_bad.csv";
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
  auto r = invoke({"concurrence", "--n", "2", "--rabi", "1", "--out", good.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(good);
  const auto t = read_csv(in);
  CHECK(t.rows.size() == 1);
  r = invoke({"concurrence", "--n", "2", "--rabi", "0", "--out", bad.string()});
  CHECK(r.code == cli::kExitNumerical);
  CHECK(!std::filesystem::exists(bad));
  std::filesystem::remove(good);
}

TEST_CASE("maximize command") {
  const auto r = invoke({"maximize", "--n", "2", "--dipole", "5", "--detuning", "-10"});
  REQUIRE(r.code == 0);
  const auto t = parse(r.out);
  CHECK(t.rows[0][t.column("C")] == doctest::Approx(0.336).epsilon(0.01));
}

TEST_CASE("help exits cleanly") { CHECK(invoke({"--help"}).code == 0); }
