#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace test_oracle {

using cd = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;

using cld = std::complex<long double>;
using Mat4l = Eigen::Matrix<cld, 4, 4>;

// Coefficients c0..c4 of det(xI − A) = x⁴ + c3 x³ + ... + c0 by the
// Faddeev–LeVerrier recursion.
inline std::array<cld, 5> characteristic_polynomial(const Mat4l& a) {
  std::array<cld, 5> c{};
  c[4] = 1.0L;
  Mat4l m = Mat4l::Zero();
  for (int k = 1; k <= 4; ++k) {
    m = a * m + c[4 - k + 1] * Mat4l::Identity();
    c[4 - k] = -(a * m).trace() / static_cast<long double>(k);
  }
  return c;
}

// All four roots of a monic quartic by Durand–Kerner iteration. Meant for
// polynomials with a real spectrum: a k-fold root splits into a ~eps^(1/k)
// star with complex members, so when complex roots appear, roots closer than
// `cluster` (relative to the root bound) are merged. A single cluster takes
// its value from the trace (Vieta), which does not suffer from the
// multiplicity.
inline std::array<cld, 4> quartic_roots(const std::array<cld, 5>& c, long double cluster = 1e-6L) {
  const auto p = [&](cld x) { return (((x + c[3]) * x + c[2]) * x + c[1]) * x + c[0]; };
  long double bound = 1;
  for (int i = 0; i < 4; ++i) bound = std::max(bound, 1 + std::abs(c[i]));
  std::array<cld, 4> z;
  const cld seed(0.4L, 0.9L);
  for (int i = 0; i < 4; ++i) z[i] = bound * std::pow(seed, i);
  for (int iter = 0; iter < 2000; ++iter) {
    long double change = 0;
    for (int i = 0; i < 4; ++i) {
      cld denom = 1;
      for (int j = 0; j < 4; ++j)
        if (j != i) denom *= z[i] - z[j];
      if (denom == cld(0)) denom = 1e-30L;
      const cld step = p(z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-20L * bound) break;
  }
  bool split = false;
  for (const auto& r : z) split |= std::abs(r.imag()) > 1e-10L * bound;
  if (!split) return z;

  std::array<int, 4> group{0, 1, 2, 3};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(z[i] - z[j]) < cluster * bound) {
        const int from = group[j], to = group[i];
        for (auto& g : group)
          if (g == from) g = to;
      }
  std::array<int, 4> size{};
  for (int g : group) ++size[g];
  int clusters = 0;
  for (int n : size) clusters += n > 1;

  std::array<cld, 4> out;
  for (int i = 0; i < 4; ++i) {
    const int k = size[group[i]];
    if (k == 1) {
      out[i] = z[i];
      continue;
    }
    cld sum = 0;
    if (clusters == 1) {
      sum = -c[3];
      for (int j = 0; j < 4; ++j)
        if (group[j] != group[i]) sum -= z[j];
    } else {
      for (int j = 0; j < 4; ++j)
        if (group[j] == group[i]) sum += z[j];
    }
    out[i] = sum / static_cast<long double>(k);
  }
  return out;
}

inline Mat4 spin_flip() {
  Mat4 y = Mat4::Zero();
  y(0, 3) = y(3, 0) = -1;
  y(1, 2) = y(2, 1) = 1;
  return y;
}

// Concurrence from the characteristic-polynomial roots of R = ρ ỹ ρ* ỹ.
inline double brute_force_concurrence(const Mat4& rho_in) {
  const Mat4l rho = rho_in.cast<cld>() / static_cast<long double>(rho_in.trace().real());
  const Mat4l y = spin_flip().cast<cld>();
  const Mat4l r = rho * y * rho.conjugate() * y;
  auto coeffs = characteristic_polynomial(r);
  // det R = |det ρ|² since det(σy⊗σy) = 1. Taken from the LU factorization of
  // ρ: the recursion forms it by cancellation and would leave a ~1e-17 root,
  // i.e. a 1e-8 error in λ, wherever ρ is singular.
  const cld det = rho.partialPivLu().determinant();
  coeffs[0] = std::norm(det);
  const auto roots = quartic_roots(coeffs);
  std::array<long double, 4> lam;
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0L, roots[i].real()));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return static_cast<double>(std::max(0.0L, lam[0] - lam[1] - lam[2] - lam[3]));
}

// Random density matrix, symmetric under qubit exchange: a mixture of three
// to six random pure states drawn from the triplet subspace (generically
// full rank there), plus an optional singlet admixture.
inline Mat4 random_symmetric_density(std::mt19937_64& rng, double singlet_weight = 0) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0, 1);
  const int terms = 3 + static_cast<int>(u(rng) * 4);
  Mat4 rho = Mat4::Zero();
  double total = 0;
  for (int t = 0; t < terms; ++t) {
    const cd a(g(rng), g(rng)), b(g(rng), g(rng)), d(g(rng), g(rng));
    Eigen::Vector4cd v(a, b, b, d);
    v.normalize();
    const double w = u(rng);
    rho += w * v * v.adjoint();
    total += w;
  }
  rho /= total;
  if (singlet_weight > 0) {
    Eigen::Vector4cd s(0, 1, -1, 0);
    s /= std::sqrt(2.0);
    rho = (1 - singlet_weight) * rho + singlet_weight * s * s.adjoint();
  }
  return rho;
}

inline Mat4 bell_phi_plus() {
  Eigen::Vector4cd v(1, 0, 0, 1);
  v /= std::sqrt(2.0);
  return v * v.adjoint();
}

inline Mat4 werner(double p) { return p * bell_phi_plus() + (1 - p) / 4 * Mat4::Identity(); }

inline double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace test_oracle
