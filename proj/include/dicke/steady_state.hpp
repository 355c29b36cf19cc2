#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/log_complex.hpp"
#include "dicke/params.hpp"

namespace dicke {

enum class Precision { standard, extended };

/// The six collective moments the two-qubit reduced state depends on.
template <typename Scalar>
struct ExpectationSet {
  std::complex<Scalar> s_plus;     // ⟨S+⟩
  Scalar s_z = 0;                  // ⟨Sz⟩
  Scalar s_z2 = 0;                 // ⟨Sz²⟩
  std::complex<Scalar> s_plus_sz;  // ⟨S+ Sz⟩
  std::complex<Scalar> s_plus2;    // ⟨(S+)²⟩
  Scalar s_plus_s_minus = 0;       // ⟨S+ S−⟩

  template <typename Other>
  ExpectationSet<Other> cast() const {
    using C = std::complex<Other>;
    return {C(s_plus), Other(s_z), Other(s_z2), C(s_plus_sz), C(s_plus2), Other(s_plus_s_minus)};
  }
};

/// Γ(1+n+β)/Γ(1+β) = ∏_{k=1..n} (k+β), in log form.
template <typename Scalar>
LogComplex<Scalar> pochhammer_ratio(int n, std::complex<Scalar> beta) {
  if (n < 0) throw IndexRange("pochhammer_ratio: n must be >= 0");
  Scalar log_mag = 0;
  Scalar phase = 0;
  for (int k = 1; k <= n; ++k) {
    const std::complex<Scalar> f = Scalar(k) + beta;
    if (f == std::complex<Scalar>(0)) return LogComplex<Scalar>::zero();
    log_mag += std::log(std::abs(f));
    phase += std::arg(f);
  }
  return {log_mag, phase};
}

template <typename Scalar>
Scalar log_factorial(int k) {
  return std::lgamma(static_cast<Scalar>(k) + 1);
}

/// a_nm = Γ(1+n+β)Γ(1+m+β*) / (n! m! Γ(1+β)Γ(1+β*))
template <typename Scalar>
LogComplex<Scalar> coefficient_a(int n, int m, std::complex<Scalar> beta) {
  if (n < 0 || m < 0) throw IndexRange("coefficient_a: indices must be >= 0");
  LogComplex<Scalar> a = pochhammer_ratio(n, beta) * pochhammer_ratio(m, beta).conj();
  a.log_mag -= log_factorial<Scalar>(n) + log_factorial<Scalar>(m);
  return a;
}

/// C_nm = (−1)^{n+m} α^{−n} (α*)^{−m} a_nm
template <typename Scalar>
LogComplex<Scalar> coefficient_c(int n, int m, const DerivedParams<Scalar>& derived) {
  if (derived.alpha == std::complex<Scalar>(0))
    throw ZeroDrive("coefficient_c: drive amplitude is zero, alpha^-n undefined");
  const Scalar log_alpha = std::log(std::abs(derived.alpha));
  const Scalar arg_alpha = std::arg(derived.alpha);
  const LogComplex<Scalar> prefactor(-(n + m) * log_alpha,
                                     std::numbers::pi_v<Scalar> * ((n + m) % 2) - n * arg_alpha +
                                         m * arg_alpha);
  return prefactor * coefficient_a(n, m, derived.beta);
}

/// Exact steady state of the collectively damped, driven ensemble in the
/// symmetric Dicke sector. Construction builds the log-factorial table and
/// the (N+1)×(N+1) coefficient table C_nm once; every moment evaluation
/// afterwards is a read-only pass over them.
template <typename Scalar>
class SteadyState {
public:
  using Complex = std::complex<Scalar>;

  explicit SteadyState(const SystemParams& params, bool force_compensated = false)
      : params_(params), derived_(derive_params<Scalar>(params)), force_compensated_(force_compensated) {
    if (params.rabi == 0.0)
      throw ZeroDrive("steady state undefined at zero drive; the limit is the ground state (use rabi ~ 1e-4)");
    const int n = params.n_qubits;
    log_fact_.resize(2 * n + 3);
    for (int k = 0; k < static_cast<int>(log_fact_.size()); ++k) log_fact_[k] = log_factorial<Scalar>(k);

    std::vector<LogComplex<Scalar>> poch(n + 1);
    for (int k = 0; k <= n; ++k) poch[k] = pochhammer_ratio(k, derived_.beta);

    const Scalar log_alpha = std::log(std::abs(derived_.alpha));
    const Scalar arg_alpha = std::arg(derived_.alpha);
    dim_ = n + 1;
    coeff_.resize(dim_ * dim_);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        LogComplex<Scalar> c = poch[i] * poch[j].conj();
        c.log_mag -= log_fact_[i] + log_fact_[j] + (i + j) * log_alpha;
        c.phase = wrap_phase(c.phase + std::numbers::pi_v<Scalar> * ((i + j) % 2) - i * arg_alpha +
                             j * arg_alpha);
        coeff_[i * dim_ + j] = c;
      }
    }

    std::vector<LogComplex<Scalar>> z_terms(n + 1);
    for (int k = 0; k <= n; ++k) {
      z_terms[k] = LogComplex<Scalar>(coeff_[k * dim_ + k].log_mag + log_fact_[n + k + 1] + 2 * log_fact_[k] -
                                          log_fact_[n - k] - log_fact_[2 * k + 1],
                                      Scalar(0));
    }
    log_z_ = log_sum<Scalar>(z_terms, force_compensated_).value;
  }

  const SystemParams& params() const { return params_; }
  const DerivedParams<Scalar>& derived() const { return derived_; }
  int n_qubits() const { return params_.n_qubits; }

  /// C_nm from the cached table.
  const LogComplex<Scalar>& coefficient(int n, int m) const {
    check_index(n, "n");
    check_index(m, "m");
    return coeff_[n * dim_ + m];
  }

  /// Normalization Z, closed form summed over the diagonal coefficients.
  const LogComplex<Scalar>& partition() const { return log_z_; }

  struct Moment {
    Complex value;
    bool compensated = false;
  };

  /// ⟨(S+)^p (Sz)^r (S−)^f⟩ together with whether the cancellation guard fired.
  Moment moment(int p, int r, int f) const {
    check_index(r, "r");
    const Scalar half_n = Scalar(params_.n_qubits) / 2;
    return weighted_moment(p, f, [&](int k) { return std::pow(Scalar(k) - half_n, r); });
  }

  /// ⟨(S+)^p K^r (S−)^f⟩ with K = Sz + N/2 the excitation number. Every
  /// inner weight is non-negative, so moments of a weakly excited ensemble
  /// keep their relative accuracy instead of emerging from cancellation
  /// against N/2.
  Moment excitation_moment(int p, int r, int f) const {
    check_index(r, "r");
    return weighted_moment(p, f, [&](int k) { return std::pow(Scalar(k), r); });
  }

  Complex expectation(int p, int r, int f) const { return moment(p, r, f).value; }

  ExpectationSet<Scalar> expectation_set() const {
    if (params_.n_qubits < 2) throw PairUndefined("expectation_set requires at least two qubits");
    const Scalar half_n = Scalar(params_.n_qubits) / 2;
    const auto k = [&](int p, int r, int f) { return excitation_moment(p, r, f).value; };
    const Scalar k1 = k(0, 1, 0).real();
    const Scalar k2 = k(0, 2, 0).real();
    ExpectationSet<Scalar> e;
    e.s_plus = k(1, 0, 0);
    e.s_z = k1 - half_n;
    e.s_z2 = k2 - 2 * half_n * k1 + half_n * half_n;
    e.s_plus_sz = k(1, 1, 0) - half_n * e.s_plus;
    e.s_plus2 = k(2, 0, 0);
    e.s_plus_s_minus = k(1, 0, 1).real();
    return e;
  }

private:
  // Σ_n C_{n−f,n−p} Σ_m (N−m)!(m+n)!/((N−m−n)! m!) w(N−m−n), with w a
  // function of the excitation number of the Dicke state.
  template <typename Weight>
  Moment weighted_moment(int p, int f, Weight&& weight) const {
    check_index(p, "p");
    check_index(f, "f");
    const int n_q = params_.n_qubits;

    std::vector<LogComplex<Scalar>> outer;
    outer.reserve(n_q + 1);
    std::vector<LogComplex<Scalar>> inner;
    bool compensated = false;
    for (int n = std::max(f, p); n <= n_q; ++n) {
      inner.clear();
      for (int m = 0; m <= n_q - n; ++m) {
        LogComplex<Scalar> w(log_fact_[n_q - m] + log_fact_[m + n] - log_fact_[n_q - m - n] - log_fact_[m],
                             Scalar(0));
        w *= LogComplex<Scalar>::from_real(weight(n_q - m - n));
        inner.push_back(w);
      }
      const auto inner_sum = log_sum<Scalar>(inner, force_compensated_);
      compensated |= inner_sum.compensated;
      outer.push_back(coeff_[(n - f) * dim_ + (n - p)] * inner_sum.value);
    }
    const auto total = log_sum<Scalar>(outer, force_compensated_);
    compensated |= total.compensated;
    return {(total.value / log_z_).to_complex(), compensated};
  }

  void check_index(int k, const char* what) const {
    if (k < 0 || k > params_.n_qubits)
      throw IndexRange(std::string("index ") + what + "=" + std::to_string(k) + " outside [0, " +
                       std::to_string(params_.n_qubits) + "]");
  }

  SystemParams params_;
  DerivedParams<Scalar> derived_;
  bool force_compensated_;
  std::vector<Scalar> log_fact_;
  int dim_ = 0;
  std::vector<LogComplex<Scalar>> coeff_;  // row-major (N+1)×(N+1)
  LogComplex<Scalar> log_z_;
};

/// Z as a LogComplex with zero phase.
template <typename Scalar = double>
LogComplex<Scalar> partition_z(const SystemParams& params) {
  return SteadyState<Scalar>(params).partition();
}

template <typename Scalar = double>
std::complex<Scalar> expectation(const SystemParams& params, int p, int r, int f) {
  return SteadyState<Scalar>(params).expectation(p, r, f);
}

template <typename Scalar = double>
ExpectationSet<Scalar> expectation_set(const SystemParams& params) {
  return SteadyState<Scalar>(params).expectation_set();
}

/// Standard: double with the cancellation guard. Extended: long double
/// throughout with compensated accumulation on every sum. Result in double.
ExpectationSet<double> expectation_set(const SystemParams& params, Precision precision);

}  // namespace dicke
