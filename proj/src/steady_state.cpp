#include "dicke/steady_state.hpp"

namespace dicke {

ExpectationSet<double> expectation_set(const SystemParams& params, Precision precision) {
  if (precision == Precision::extended) return SteadyState<long double>(params, true).expectation_set().cast<double>();
  return SteadyState<double>(params).expectation_set();
}

}  // namespace dicke
