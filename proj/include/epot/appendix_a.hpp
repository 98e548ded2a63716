// appendix_a.hpp: entropic entanglement potential of a pure state versus its mixedness under
// photon loss at gamma t = ln 2
//
// Splitting |psi> on a 50:50 beam splitter with vacuum leaves mode a in exactly the state that
// photon loss produces at transmissivity 1/2, so the two entropies agree for every pure input.

#pragma once

#include "epot/fockspace.hpp"

namespace epot::appendix_a {

// Tolerance on the trace distance between the two reduced states.
inline constexpr double kIdentityTolerance = 1e-10;

// S(tr_b U_BS (|psi><psi| (x) |0><0|) U_BS^dagger), in bits.
double entropic_ep(const FockVector& psi);

// S(loss_{ln 2}(|psi><psi|)), in bits.
double mixedness_at_ln2(const FockVector& psi);

struct Equivalence {
  double lhs = 0.0;  // entropic_ep
  double rhs = 0.0;  // mixedness_at_ln2
  double gap = 0.0;  // |lhs - rhs|
  double trace_distance = 0.0;
};

// Compares the states first and throws IdentityViolation if they differ by more than
// kIdentityTolerance in trace distance. loss_time_offset shifts the loss time away from ln 2;
// it exists so tests can check that the comparison actually detects a perturbed channel.
Equivalence equivalence_check(const FockVector& psi, double loss_time_offset = 0.0);

}  // namespace epot::appendix_a
