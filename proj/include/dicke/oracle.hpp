#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "dicke/pairwise.hpp"
#include "dicke/params.hpp"
#include "dicke/steady_state.hpp"

namespace dicke::oracle {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Largest ensemble the dense Liouvillian solve accepts.
inline constexpr int kMaxQubits = 16;

/// Collective operators on the symmetric Dicke sector s = N/2. Basis index
/// k = 0..N counts excitations, i.e. |s, l = k − N/2⟩.
struct DickeBasisOperators {
  int dimension = 0;
  Eigen::MatrixXd s_plus;
  Eigen::MatrixXd s_minus;
  Eigen::MatrixXd s_z;

  explicit DickeBasisOperators(int n_qubits);
};

/// (N+1)×(N+1) density matrix on the symmetric sector.
struct DickeDensityMatrix {
  MatrixXc entries;
};

/// H = Δ̃ Sz + δ S+S− + Ω (S+ + S−).
MatrixXc hamiltonian(const SystemParams& params, const DickeBasisOperators& ops);

/// L with vec(dρ/dt) = L vec(ρ), column-major vec. Ω = 0 is allowed.
/// Throws SizeExceeded for N > 16.
MatrixXc build_liouvillian(const SystemParams& params);

/// Unique trace-one solution of L vec(ρ) = 0. Throws DegenerateNullSpace
/// when two singular values of L fall below 1e-10.
DickeDensityMatrix steady_state_null_space(const MatrixXc& liouvillian);

/// Convenience: build_liouvillian followed by steady_state_null_space.
DickeDensityMatrix steady_state(const SystemParams& params);

using EvolutionObserver = std::function<void(double t, const DickeDensityMatrix&)>;

/// RK4 integration of the master equation from `initial` (ground state when
/// empty) to t_max. Throws NotConverged when ‖dρ/dt‖_F > 1e-6 at t_max.
DickeDensityMatrix evolve_to_steady(const SystemParams& params, double t_max, double dt,
                                    const DickeDensityMatrix* initial = nullptr,
                                    const EvolutionObserver& observer = {});

/// Tr(ρ (S+)^p Sz^r (S−)^f)
std::complex<double> moment(const DickeDensityMatrix& rho, const DickeBasisOperators& ops, int p, int r,
                            int f);

ExpectationSet<double> expectation_set(const DickeDensityMatrix& rho, int n_qubits);

TwoQubitDensityMatrix<double> oracle_pair_density(const DickeDensityMatrix& rho, int n_qubits);

DickeDensityMatrix ground_state(int n_qubits);

}  // namespace dicke::oracle
