#include "dicke/params.hpp"

#include <cmath>
#include <string>

namespace dicke {

void SystemParams::validate() const {
  if (n_qubits < 1) throw InvalidParams("n_qubits must be >= 1, got " + std::to_string(n_qubits));
  if (!std::isfinite(decay) || decay <= 0.0) throw InvalidParams("decay rate must be > 0");
  if (!std::isfinite(rabi) || rabi < 0.0) throw InvalidParams("rabi frequency must be finite and >= 0");
  if (!std::isfinite(detuning) || !std::isfinite(dipole_shift))
    throw InvalidParams("detuning and dipole shift must be finite");
}

SystemParams SystemParams::from_pump(int n, double pump, double detuning, double dipole_shift,
                                     double decay) {
  SystemParams p;
  p.n_qubits = n;
  p.decay = decay;
  p.rabi = pump * n * decay / 2.0;
  p.detuning = detuning;
  p.dipole_shift = dipole_shift;
  return p;
}

}  // namespace dicke
