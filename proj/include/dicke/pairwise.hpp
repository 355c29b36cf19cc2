#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

template <typename Scalar>
using Matrix4c = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

/// Two-qubit state in the basis {|ee⟩, |eg⟩, |ge⟩, |gg⟩}.
template <typename Scalar>
struct TwoQubitDensityMatrix {
  Matrix4c<Scalar> entries = Matrix4c<Scalar>::Zero();

  template <typename Other>
  TwoQubitDensityMatrix<Other> cast() const {
    return {entries.template cast<std::complex<Other>>()};
  }
};

/// Deviations from the density-matrix axioms, for validation and reporting.
template <typename Scalar>
struct DensityDiagnostics {
  Scalar hermiticity_error;  // max |ρ − ρ†|
  Scalar trace_error;        // |Tr ρ − 1|
  Scalar min_eigenvalue;
  bool swap_symmetric;       // ρ12=ρ13, ρ22=ρ33, ρ24=ρ34 exactly

  bool valid(Scalar tol_herm = Scalar(1e-10), Scalar tol_psd = Scalar(1e-9)) const {
    return hermiticity_error <= tol_herm && trace_error <= tol_herm && min_eigenvalue >= -tol_psd;
  }
};

template <typename Scalar>
DensityDiagnostics<Scalar> diagnose(const TwoQubitDensityMatrix<Scalar>& rho) {
  const auto& m = rho.entries;
  DensityDiagnostics<Scalar> d;
  d.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
  d.trace_error = std::abs(m.trace() - std::complex<Scalar>(1));
  const Matrix4c<Scalar> herm = (m + m.adjoint()) / Scalar(2);
  d.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix4c<Scalar>>(herm, Eigen::EigenvaluesOnly)
                         .eigenvalues()
                         .minCoeff();
  d.swap_symmetric = m(0, 1) == m(0, 2) && m(1, 1) == m(2, 2) && m(1, 3) == m(2, 3);
  return d;
}

/// Reduced state of any qubit pair of a permutation-symmetric N-qubit
/// state, assembled from its collective moments.
template <typename Scalar>
TwoQubitDensityMatrix<Scalar> two_qubit_rho(const ExpectationSet<Scalar>& e, int n_qubits) {
  if (n_qubits < 2) throw PairUndefined("two-qubit reduced state needs at least two qubits");
  using C = std::complex<Scalar>;
  const Scalar n = n_qubits;
  const Scalar norm = n * (n - 1);

  const Scalar r11 = (n * n - 2 * n + 4 * e.s_z2 + 4 * (n - 1) * e.s_z) / (4 * norm);
  const C r12 = (n * e.s_plus + Scalar(2) * e.s_plus_sz) / (2 * norm);
  const C r14 = e.s_plus2 / norm;
  const Scalar r22 = (n * n - 4 * e.s_z2) / (4 * norm);
  const C r24 = (e.s_plus * (n - 2) - Scalar(2) * e.s_plus_sz) / (2 * norm);
  const Scalar r44 = (n * n - 2 * n + 4 * e.s_z2 - 4 * (n - 1) * e.s_z) / (4 * norm);

  TwoQubitDensityMatrix<Scalar> rho;
  auto& m = rho.entries;
  // clang-format off
  m << r11,            r12,            r12,            r14,
       std::conj(r12), r22,            r22,            r24,
       std::conj(r12), r22,            r22,            r24,
       std::conj(r14), std::conj(r24), std::conj(r24), r44;
  // clang-format on
  return rho;
}

template <typename Scalar>
struct ConcurrenceResult {
  Scalar concurrence = 0;
  std::array<Scalar, 4> lambdas{};  // descending
  Scalar c_ref_1 = 0;
  Scalar c_ref_2 = 0;
};

/// Analytic X-state references (C_ref^(1), C_ref^(2)).
template <typename Scalar>
std::pair<Scalar, Scalar> concurrence_ref(const TwoQubitDensityMatrix<Scalar>& rho) {
  const auto& m = rho.entries;
  const auto re = [&](int i, int j) { return m(i, j).real(); };
  const Scalar c1 = 2 * (std::abs(m(0, 3)) - std::sqrt(std::max(Scalar(0), re(1, 1) * re(2, 2))));
  const Scalar c2 = 2 * (std::abs(m(1, 2)) - std::sqrt(std::max(Scalar(0), re(0, 0) * re(3, 3))));
  return {c1, c2};
}

/// σy⊗σy
template <typename Scalar>
Matrix4c<Scalar> spin_flip() {
  Matrix4c<Scalar> y = Matrix4c<Scalar>::Zero();
  y(0, 3) = y(3, 0) = Scalar(-1);
  y(1, 2) = y(2, 1) = Scalar(1);
  return y;
}

inline constexpr double kImagTolerance = 1e-9;
inline constexpr double kNegativeTolerance = 1e-9;

/// Eigenvalues of R = ρ(σy⊗σy)ρ*(σy⊗σy) by a QR-type dense solve. R is
/// similar to a positive semidefinite matrix, so the spectrum is real up to
/// round-off; this is the cross-check path for the singular-value route.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 1> r_matrix_eigenvalues(const TwoQubitDensityMatrix<Scalar>& rho) {
  const Matrix4c<Scalar> y = spin_flip<Scalar>();
  const Matrix4c<Scalar> r = rho.entries * y * rho.entries.conjugate() * y;
  Eigen::ComplexEigenSolver<Matrix4c<Scalar>> ces(r, false);
  if (ces.info() != Eigen::Success) throw NumericalFailure("eigenvalue iteration on R did not converge");
  return ces.eigenvalues();
}

/// Positive square root of a Hermitian matrix. Eigenvalues in [−1e-9, 0)
/// are treated as round-off and clamped; anything below raises.
template <typename Scalar>
Matrix4c<Scalar> psd_sqrt(const Matrix4c<Scalar>& m) {
  const Matrix4c<Scalar> herm = (m + m.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<Matrix4c<Scalar>> es(herm);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigen-decomposition of rho failed");
  const auto& w = es.eigenvalues();
  if (w.minCoeff() < -Scalar(kNegativeTolerance))
    throw NumericalFailure("density matrix is not positive semidefinite (eigenvalue " +
                           std::to_string(static_cast<double>(w.minCoeff())) + ")");
  const Eigen::Matrix<std::complex<Scalar>, 4, 1> root =
      w.cwiseMax(Scalar(0)).cwiseSqrt().template cast<std::complex<Scalar>>();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

/// Wootters concurrence C = max{0, λ1−λ2−λ3−λ4}, λ the descending square
/// roots of the eigenvalues of R = ρ(σy⊗σy)ρ*(σy⊗σy). ρ is renormalized to
/// unit trace first.
///
/// The λ are obtained directly as the singular values of √ρ(σy⊗σy)√ρ*,
/// whose Gram matrix √ρ ρ̃ √ρ shares R's spectrum. Squaring into R and
/// taking roots afterwards would turn eigenvalue round-off ε into √ε
/// errors in λ, which swamps the small concurrences of weakly driven
/// ensembles.
template <typename Scalar>
ConcurrenceResult<Scalar> concurrence(const TwoQubitDensityMatrix<Scalar>& input) {
  const std::complex<Scalar> tr = input.entries.trace();
  if (!(std::abs(tr) > 0)) throw NumericalFailure("density matrix has zero trace");
  const Matrix4c<Scalar> rho = input.entries / tr.real();

  const Matrix4c<Scalar> root = psd_sqrt(rho);
  const Matrix4c<Scalar> m = root * spin_flip<Scalar>() * root.conjugate();
  const Eigen::JacobiSVD<Matrix4c<Scalar>> svd(m);
  const auto& sv = svd.singularValues();  // descending

  ConcurrenceResult<Scalar> out;
  for (int i = 0; i < 4; ++i) out.lambdas[i] = sv(i);
  std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
  out.concurrence = std::clamp(out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3], Scalar(0), Scalar(1));

  const auto [c1, c2] = concurrence_ref(TwoQubitDensityMatrix<Scalar>{rho});
  out.c_ref_1 = c1;
  out.c_ref_2 = c2;
  return out;
}

}  // namespace dicke
