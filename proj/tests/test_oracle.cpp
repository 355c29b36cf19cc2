#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"

#include "dicke/oracle.hpp"
#include "dicke/pairwise.hpp"
#include "dicke/steady_state.hpp"

using namespace dicke;
using namespace dicke::oracle;
using cd = std::complex<double>;

namespace {

SystemParams make(int n, double rabi, double detuning, double dipole) {
  SystemParams p;
  p.n_qubits = n;
  p.rabi = rabi;
  p.detuning = detuning;
  p.dipole_shift = dipole;
  return p;
}

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m) { return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()); }

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int d) { return Eigen::Map<const Eigen::MatrixXcd>(v.data(), d, d); }

Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = cd(g(rng), g(rng));
  return a + a.adjoint();
}

}  // namespace

TEST_CASE("su(2) algebra on the Dicke sector") {
  for (int n = 1; n <= kMaxQubits; ++n) {
    const DickeBasisOperators ops(n);
    const auto& sp = ops.s_plus;
    const auto& sm = ops.s_minus;
    const auto& sz = ops.s_z;
    CHECK(ops.dimension == n + 1);
    CHECK((sz * sp - sp * sz - sp).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((sz * sm - sm * sz + sm).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((sp * sm - sm * sp - 2 * sz).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((sm - sp.transpose()).cwiseAbs().maxCoeff() == 0);
    // Casimir s(s+1) with s = N/2
    const Eigen::MatrixXd casimir = sz * sz + 0.5 * (sp * sm + sm * sp);
    const double s = n / 2.0;
    CHECK((casimir - s * (s + 1) * Eigen::MatrixXd::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("Liouvillian preserves trace and Hermiticity") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 4, 7}) {
    const auto p = make(n, 1.3, -0.7, 0.9);
    const auto l = build_liouvillian(p);
    const int d = n + 1;
    // trace functional annihilates every column
    Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(d * d);
    for (int k = 0; k < d; ++k) tr(k * d + k) = 1;
    CHECK((tr * l).cwiseAbs().maxCoeff() < 1e-12);
    for (int t = 0; t < 3; ++t) {
      const Eigen::MatrixXcd rho = random_hermitian(rng, d);
      const Eigen::MatrixXcd drho = unvec(l * vec(rho), d);
      CHECK(std::abs(drho.trace()) < 1e-12 * std::max(1.0, rho.norm()));
      CHECK((drho - drho.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, rho.norm()));
    }
  }
}

TEST_CASE("single undriven qubit decays to the ground state") {
  const auto p = make(1, 0, 0, 0);
  const auto l = build_liouvillian(p);
  const auto rho = steady_state_null_space(l);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
  g(0, 0) = 1;
  CHECK((rho.entries - g).norm() < 1e-12);
  CHECK((l * vec(g)).norm() < 1e-14);

  DickeDensityMatrix excited{Eigen::MatrixXcd::Zero(2, 2)};
  excited.entries(1, 1) = 1;
  const auto t = evolve_to_steady(p, 40, 0.01, &excited);
  CHECK((t.entries - g).norm() < 1e-10);
}

TEST_CASE("N=2 spectrum has a single zero eigenvalue") {
  const auto l = build_liouvillian(make(2, 1.1, -0.6, 0.4));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(l);
  int zeros = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const cd ev = es.eigenvalues()(i);
    if (std::abs(ev) < 1e-10)
      ++zeros;
    else
      CHECK(ev.real() < 0);
  }
  CHECK(zeros == 1);
}

TEST_CASE("size guard and degenerate null space") {
  CHECK_THROWS_AS(build_liouvillian(make(17, 1, 0, 0)), SizeExceeded);
  CHECK_NOTHROW(build_liouvillian(make(16, 1, 0, 0)));
  // a zero generator has every state stationary
  CHECK_THROWS_AS(steady_state_null_space(Eigen::MatrixXcd::Zero(9, 9)), DegenerateNullSpace);
}

TEST_CASE("steady states are density matrices") {
  for (int n : {1, 2, 3, 6, 10})
    for (double rabi : {0.2, 1.0, 4.0}) {
      const auto rho = steady_state(make(n, rabi * n / 2, -0.5, 0.8));
      CHECK(std::abs(rho.entries.trace() - cd(1)) < 1e-12);
      CHECK((rho.entries - rho.entries.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries);
      CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
}

TEST_CASE("N=2 resonant moments match the analytic solution") {
  const auto p = make(2, 1, 0, 0);
  const auto rho = steady_state(p);
  const DickeBasisOperators ops(2);
  const SteadyState<double> s(p);
  for (int a = 0; a <= 2; ++a)
    for (int r = 0; r <= 2; ++r)
      for (int b = 0; b <= 2; ++b) CHECK(std::abs(moment(rho, ops, a, r, b) - s.expectation(a, r, b)) < 1e-8);
}

TEST_CASE("time evolution") {
  SUBCASE("converges to the null-space state at N=2") {
    const auto p = make(2, 1.4, -1, 0.5);
    const auto ref = steady_state(p);
    const auto t = evolve_to_steady(p, 50, 0.01);
    CHECK((t.entries - ref.entries).norm() < 1e-6);
  }
  SUBCASE("trace is conserved at every step") {
    double worst = 0;
    int steps = 0;
    evolve_to_steady(make(3, 2, 0.5, 1), 30, 0.01, nullptr, [&](double, const DickeDensityMatrix& r) {
      worst = std::max(worst, std::abs(r.entries.trace() - cd(1)));
      ++steps;
    });
    CHECK(steps > 100);
    CHECK(worst < 1e-10);
  }
  SUBCASE("halving the step changes nothing at convergence") {
    const auto p = make(2, 0.9, 0.3, -0.4);
    const auto a = evolve_to_steady(p, 40, 0.02);
    const auto b = evolve_to_steady(p, 40, 0.01);
    CHECK((a.entries - b.entries).norm() < 1e-7);
  }
  SUBCASE("too short a horizon is reported") {
    CHECK_THROWS_AS(evolve_to_steady(make(2, 1, 0, 0), 0.5, 0.01), NotConverged);
  }
  SUBCASE("ten random points for N in {2, 4}") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> rabi(0.2, 3), det(-3, 3), dip(0, 2);
    for (int i = 0; i < 10; ++i) {
      const int n = i % 2 == 0 ? 2 : 4;
      const auto p = make(n, rabi(rng), det(rng), dip(rng));
      CAPTURE(i);
      const auto t = evolve_to_steady(p, 80, 0.01);
      CHECK((t.entries - steady_state(p).entries).norm() < 1e-6);
    }
  }
}

TEST_CASE("pair density") {
  const auto g = oracle_pair_density(ground_state(5), 5);
  Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
  expect(3, 3) = 1;
  CHECK((g.entries - expect).norm() < 1e-14);

  const auto p = make(4, 1.7, -0.9, 1.2);
  const auto rho = steady_state(p);
  const auto a = oracle_pair_density(rho, 4);
  const auto b = two_qubit_rho(expectation_set(p), 4);
  CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() < 1e-8);
  const auto d = diagnose(a);
  CHECK(d.hermiticity_error < 1e-12);
  CHECK(d.trace_error < 1e-12);

  CHECK_THROWS_AS(oracle_pair_density(ground_state(1), 1), PairUndefined);
}
