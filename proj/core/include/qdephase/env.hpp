#pragma once

namespace qdephase {

/// Environment wiring: each qubit driven by its own noise realization, or
/// both qubits driven by one shared realization.
enum class EnvTopology { Independent, Common };

/// The constant A entering the dephasing exponent 4*A*lambda^2*beta(t) and
/// the beta-space bounds: A = 1 for independent environments, A = 2 for a
/// common environment.
constexpr int bound_constant(EnvTopology env) {
  return env == EnvTopology::Common ? 2 : 1;
}

}  // namespace qdephase
