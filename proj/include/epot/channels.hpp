// channels.hpp: photon-loss and dephasing evolution of single-mode states
//
// Time enters only as the dimensionless product gamma*t. The exact evolutions are closed on the
// truncated space: loss never raises photon number and dephasing never touches populations.

#pragma once

#include "epot/fockspace.hpp"

namespace epot {

enum class ChannelKind { loss, dephasing };

struct ChannelParams {
  ChannelKind kind = ChannelKind::loss;
  double scaled_time = 0.0;  // gamma_1 t or gamma_2 t

  void validate() const;
};

// Kraus-sum solution of d(rho)/dt = (gamma/2)(2 a rho a^dagger - a^dagger a rho - rho a^dagger a).
SingleModeDensity photon_loss_evolve(const SingleModeDensity& rho, double gamma_t);

// rho_jl -> rho_jl exp(-gamma_t (j-l)^2 / 2).
SingleModeDensity dephasing_evolve(const SingleModeDensity& rho, double gamma_t);

// The gamma_t -> infinity limit of dephasing: the diagonal of rho.
SingleModeDensity dephasing_stationary(const SingleModeDensity& rho);

SingleModeDensity evolve(const SingleModeDensity& rho, const ChannelParams& params);

// Fixed-step classical RK4 on the master equation. Only used as an oracle for the exact
// evolutions. The local error of the first step is estimated by step doubling; if it exceeds
// kIntegratorLocalTolerance a NumericError reports the estimate.
inline constexpr double kIntegratorLocalTolerance = 1e-10;

SingleModeDensity lindblad_integrate(const SingleModeDensity& rho, const ChannelParams& params,
                                     int steps);

// Step-doubling estimate of the RK4 local error for the given step count.
double lindblad_local_error(const SingleModeDensity& rho, const ChannelParams& params, int steps);

// A step count keeping h * (fastest generator rate) <= 0.02 for this cutoff.
int lindblad_recommended_steps(const SingleModeDensity& rho, const ChannelParams& params);

}  // namespace epot
