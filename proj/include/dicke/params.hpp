#pragma once

#include <complex>

#include "dicke/errors.hpp"

namespace dicke {

/// Physical inputs of the driven, collectively damped ensemble. All rates
/// are expressed in units of the single-qubit decay rate.
struct SystemParams {
  int n_qubits = 2;
  double rabi = 1.0;          // Ω
  double decay = 1.0;         // γ
  double detuning = 0.0;      // Δ = ω0 − ωL
  double dipole_shift = 0.0;  // δ

  /// Throws InvalidParams unless N ≥ 1, γ > 0, Ω ≥ 0 and all fields finite.
  void validate() const;

  /// Δ̃ = Δ + δ
  double tilde_detuning() const { return detuning + dipole_shift; }

  /// Scaled drive 2Ω/(Nγ).
  double pump() const { return 2.0 * rabi / (n_qubits * decay); }

  static SystemParams from_pump(int n, double pump, double detuning = 0.0,
                                double dipole_shift = 0.0, double decay = 1.0);
};

template <typename Scalar>
struct DerivedParams {
  std::complex<Scalar> alpha;  // iΩ/(γ+iδ)
  std::complex<Scalar> beta;   // iΔ̃/(γ+iδ)
  Scalar tilde_detuning;
};

template <typename Scalar = double>
DerivedParams<Scalar> derive_params(const SystemParams& p) {
  p.validate();
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const C denom(static_cast<Scalar>(p.decay), static_cast<Scalar>(p.dipole_shift));
  const Scalar tilde = static_cast<Scalar>(p.detuning) + static_cast<Scalar>(p.dipole_shift);
  return {i * static_cast<Scalar>(p.rabi) / denom, i * tilde / denom, tilde};
}

}  // namespace dicke
