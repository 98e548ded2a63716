// measures.hpp: entanglement and nonclassicality functionals

#pragma once

#include "epot/fockspace.hpp"
#include "epot/optics.hpp"

namespace epot {

// Log-negativities below this are eigenvalue noise of a unit-trace matrix and read as 0.
inline constexpr double kNegativityNoiseFloor = 1e-12;
// Concurrence requires the state to sit in {|0>,|1>} x {|0>,|1>} up to this population.
inline constexpr double kQubitSubspaceTolerance = 1e-10;
// entanglement_potential drops trailing levels holding less than this much population.
inline constexpr double kCompactionTailMass = 1e-28;

struct QuadratureResult {
  double sigma2 = 1.0;   // min_phi Var(x_phi) / (1/4); 1 for a coherent state
  double phi_min = 0.0;  // a minimizing phase in [0, pi); phi_min + pi is equivalent
};

// log2 || rho^Gamma ||_1 from the Hermitian spectrum of the partial transpose. Decoupled blocks
// of rho^Gamma are diagonalized separately.
double log_negativity(const TwoModeDensity& rho);

// Log-negativity of U_BS (rho_a (x) |0><0|) U_BS^dagger.
double entanglement_potential(const SingleModeDensity& rho_a);

// Pure-state route: 2 log2 (sum of Schmidt coefficients of the beam-splitter output).
double entanglement_potential(const FockVector& psi);

// Wootters concurrence of the {0,1} x {0,1} block, renormalized by its trace.
double concurrence_two_qubit(const TwoModeDensity& rho);

// -sum p log2 p over the spectrum; eigenvalues in [-1e-10, 0) count as 0.
double von_neumann_entropy(const SingleModeDensity& rho);

QuadratureResult min_quadrature_variance(const SingleModeDensity& rho);

double trace_distance(const SingleModeDensity& a, const SingleModeDensity& b);

}  // namespace epot
