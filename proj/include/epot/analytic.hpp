// analytic.hpp: closed-form entanglement potentials and their long-time laws
//
// Exact results for the loss-evolved single-photon-added coherent state (SPACS) and its
// mixture with the seed coherent state, the Fock-state curve, the minimal quadrature variances
// of every state family, and the regime-specific asymptotic decay laws. These serve as the
// oracle layer for the numeric pipeline in measures.hpp.

#pragma once

#include "epot/optics.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace epot::analytic {

// c3 x^3 + c2 x^2 + c1 x + c0
struct CubicCoefficients {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
};

// All three roots from the closed-form (Cardano / trigonometric) solution.
std::array<Complex, 3> cubic_roots(const CubicCoefficients& c);

// The unique root in (-inf, 0), refined to machine precision by safeguarded Newton iteration.
// Throws DomainError (listing the three roots) when there is no unique negative root.
double cubic_negative_root(const CubicCoefficients& c);

// 8x^3 + (4 - 8e^{gt}(1+|a|^2)) x^2 - (6 + 4e^{gt}(|a|^2-1)) x + 1
CubicCoefficients spacs_loss_cubic(double alpha_abs, double gamma_t);

// 8x^3 - (4 + 8mu) x^2 - (2 - 4mu + 16nu) x + 1,
// mu = e^{gt}(1+|a|^2)/p - 1, nu = |a|^2 e^{gt}/2
CubicCoefficients mixed_loss_cubic(double alpha_abs, double p, double gamma_t);

// Exact EP of the loss-evolved pure SPACS: log2(1 - 2 chi e^{-gt} / (1+|a|^2)).
double ep_spacs_loss(double alpha_abs, double gamma_t);

// Same closed form without the gamma_t >= 0 guard. The expression is analytic in gamma_t, so
// this is what centered differences at gamma_t = 0 use.
double ep_spacs_loss_continued(double alpha_abs, double gamma_t);

// log2(e^{-gt} + sqrt(1 - 2e^{-gt} + 2e^{-2gt})), the single-photon Fock state.
double ep_fock(double gamma_t);

// Trigonometric form of the |alpha| = 1 curve; the angle uses atan2 so the branch is
// continuous in gamma_t and agrees with ep_spacs_loss(1, .).
double ep_spacs_alpha1(double gamma_t);

// Evaluates ep_spacs_alpha1 on a grid and throws BranchError if any adjacent increment departs
// from the ep_spacs_loss(1, .) increment by more than 1e-6.
std::vector<double> ep_spacs_alpha1_curve(const std::vector<double>& gamma_ts);

// Exact EP of the loss-evolved mixture; p = 0 is exactly 0.
double ep_mixed_loss(double alpha_abs, double p, double gamma_t);

double sigma2_spacs(double alpha_abs);
double sigma2_mixed(double alpha_abs, double p);
double sigma2_cat(double alpha_abs, double phi);

// The beam-splitter output of the loss-evolved mixture with the local displacements removed:
// supported on {|00>, |01>, |10>} and normalized. p = 1 is the pure SPACS.
TwoModeDensity loss_reduced_state(double alpha_abs, double p, double gamma_t);

struct InitialSlope {
  double value = 0.0;  // EP at gamma_t = 0
  double slope = 0.0;  // d EP / d(gamma_t) at 0
};

InitialSlope ep_initial_slope_spacs(double alpha_abs);

enum class StateFamily { spacs, mixed_spacs, cat };

std::string_view to_string(StateFamily family);

struct StateParams {
  double alpha_abs = 0.0;
  double p = 1.0;    // mixed_spacs only
  double phi = 0.0;  // cat only
};

enum class AsymptoticRegime { squeezed_e1, boundary_e32, nonsqueezed_e2, cat_intermediate };

std::string_view to_string(AsymptoticRegime regime);

struct AsymptoticLaw {
  AsymptoticRegime regime = AsymptoticRegime::squeezed_e1;
  double exponent = 1.0;         // EP ~ exp(-exponent * gamma_t)
  std::optional<double> value;   // empty where no closed-form prefactor exists
  double window_lo = 0.0;        // validity window in gamma_t
  double window_hi = 0.0;
};

// Minimal normalized quadrature variance of the initial state of a family.
double initial_sigma2(StateFamily family, const StateParams& params);

// Asymptotic EP and its regime. Throws WindowError outside the law's validity window.
AsymptoticLaw asymptotic_ep(StateFamily family, const StateParams& params, double gamma_t);

// Critical |alpha| (SPACS, mixed) or critical phase phi_c in [0, pi] (cat).
double transition_boundary(StateFamily family, const StateParams& params);

}  // namespace epot::analytic
