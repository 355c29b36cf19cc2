#include "dicke/oracle.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace dicke::oracle {

namespace {

void check_size(int n_qubits) {
  if (n_qubits < 1) throw InvalidParams("n_qubits must be >= 1");
  if (n_qubits > kMaxQubits)
    throw SizeExceeded("oracle supports at most " + std::to_string(kMaxQubits) + " qubits, got " +
                       std::to_string(n_qubits));
}

Eigen::MatrixXd power(const Eigen::MatrixXd& m, int k) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace

DickeBasisOperators::DickeBasisOperators(int n_qubits) : dimension(n_qubits + 1) {
  s_plus = Eigen::MatrixXd::Zero(dimension, dimension);
  s_z = Eigen::MatrixXd::Zero(dimension, dimension);
  for (int k = 0; k < dimension; ++k) {
    s_z(k, k) = k - n_qubits / 2.0;
    if (k < n_qubits) s_plus(k + 1, k) = std::sqrt(double(n_qubits - k) * (k + 1));
  }
  s_minus = s_plus.transpose();
}

MatrixXc hamiltonian(const SystemParams& p, const DickeBasisOperators& ops) {
  const Eigen::MatrixXd h = p.tilde_detuning() * ops.s_z + p.dipole_shift * ops.s_plus * ops.s_minus +
                            p.rabi * (ops.s_plus + ops.s_minus);
  return h.cast<std::complex<double>>();
}

MatrixXc build_liouvillian(const SystemParams& params) {
  params.validate();
  check_size(params.n_qubits);
  const DickeBasisOperators ops(params.n_qubits);
  const int d = ops.dimension;
  const MatrixXc id = MatrixXc::Identity(d, d);
  const MatrixXc h = hamiltonian(params, ops);
  const MatrixXc pm = (ops.s_plus * ops.s_minus).cast<std::complex<double>>();
  const MatrixXc sp = ops.s_plus.cast<std::complex<double>>();
  const MatrixXc sm = ops.s_minus.cast<std::complex<double>>();
  const std::complex<double> i(0, 1);

  // vec(A X B) = (Bᵀ ⊗ A) vec(X)
  MatrixXc l = -i * (Eigen::kroneckerProduct(id, h) - Eigen::kroneckerProduct(h.transpose(), id)).eval();
  l -= params.decay * (Eigen::kroneckerProduct(id, pm) + Eigen::kroneckerProduct(pm.transpose(), id) -
                       2.0 * Eigen::kroneckerProduct(sp.transpose(), sm))
                          .eval();
  return l;
}

DickeDensityMatrix steady_state_null_space(const MatrixXc& liouvillian) {
  const Eigen::Index size = liouvillian.rows();
  const int d = static_cast<int>(std::lround(std::sqrt(double(size))));
  if (liouvillian.cols() != size || d * d != size) throw InvalidParams("Liouvillian must be square of size d^2");

  const Eigen::VectorXd sv = Eigen::BDCSVD<MatrixXc>(liouvillian).singularValues();
  if (sv.size() >= 2 && sv(sv.size() - 2) < 1e-10)
    throw DegenerateNullSpace("Liouvillian has more than one (near-)zero singular value");

  // Replace one row by the trace functional.
  MatrixXc a = liouvillian;
  a.row(0).setZero();
  for (int k = 0; k < d; ++k) a(0, k * d + k) = 1.0;
  VectorXc b = VectorXc::Zero(size);
  b(0) = 1.0;
  const VectorXc x = a.fullPivLu().solve(b);

  DickeDensityMatrix rho{Eigen::Map<const MatrixXc>(x.data(), d, d)};
  rho.entries = (rho.entries + rho.entries.adjoint()).eval() / 2.0;
  rho.entries /= rho.entries.trace().real();
  return rho;
}

DickeDensityMatrix steady_state(const SystemParams& params) {
  return steady_state_null_space(build_liouvillian(params));
}

DickeDensityMatrix ground_state(int n_qubits) {
  check_size(n_qubits);
  DickeDensityMatrix g{MatrixXc::Zero(n_qubits + 1, n_qubits + 1)};
  g.entries(0, 0) = 1.0;
  return g;
}

DickeDensityMatrix evolve_to_steady(const SystemParams& params, double t_max, double dt,
                                    const DickeDensityMatrix* initial, const EvolutionObserver& observer) {
  if (!(dt > 0) || !(t_max >= 0)) throw InvalidParams("evolve_to_steady needs dt > 0 and t_max >= 0");
  const MatrixXc l = build_liouvillian(params);
  const int d = params.n_qubits + 1;
  const DickeDensityMatrix start = initial ? *initial : ground_state(params.n_qubits);
  if (start.entries.rows() != d || start.entries.cols() != d)
    throw InvalidParams("initial state has wrong dimension");

  VectorXc v = Eigen::Map<const VectorXc>(start.entries.data(), d * d);
  const auto as_matrix = [d](const VectorXc& x) { return DickeDensityMatrix{Eigen::Map<const MatrixXc>(x.data(), d, d)}; };

  const long steps = std::lround(std::ceil(t_max / dt));
  const double h = steps > 0 ? t_max / steps : 0.0;
  for (long s = 0; s < steps; ++s) {
    const VectorXc k1 = l * v;
    const VectorXc k2 = l * (v + 0.5 * h * k1);
    const VectorXc k3 = l * (v + 0.5 * h * k2);
    const VectorXc k4 = l * (v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observer) observer((s + 1) * h, as_matrix(v));
  }

  const double residual = (l * v).norm();
  if (residual > 1e-6)
    throw NotConverged("master equation not stationary at t_max: |drho/dt| = " + std::to_string(residual));
  return as_matrix(v);
}

std::complex<double> moment(const DickeDensityMatrix& rho, const DickeBasisOperators& ops, int p, int r,
                            int f) {
  const int n = ops.dimension - 1;
  if (p < 0 || r < 0 || f < 0 || p > n || r > n || f > n) throw IndexRange("oracle moment index out of range");
  const Eigen::MatrixXd op = power(ops.s_plus, p) * power(ops.s_z, r) * power(ops.s_minus, f);
  return (rho.entries * op.cast<std::complex<double>>()).trace();
}

ExpectationSet<double> expectation_set(const DickeDensityMatrix& rho, int n_qubits) {
  if (n_qubits < 2) throw PairUndefined("expectation_set requires at least two qubits");
  const DickeBasisOperators ops(n_qubits);
  ExpectationSet<double> e;
  e.s_plus = moment(rho, ops, 1, 0, 0);
  e.s_z = moment(rho, ops, 0, 1, 0).real();
  e.s_z2 = moment(rho, ops, 0, 2, 0).real();
  e.s_plus_sz = moment(rho, ops, 1, 1, 0);
  e.s_plus2 = moment(rho, ops, 2, 0, 0);
  e.s_plus_s_minus = moment(rho, ops, 1, 0, 1).real();
  return e;
}

TwoQubitDensityMatrix<double> oracle_pair_density(const DickeDensityMatrix& rho, int n_qubits) {
  return two_qubit_rho(expectation_set(rho, n_qubits), n_qubits);
}

}  // namespace dicke::oracle
