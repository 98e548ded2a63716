// analysis.hpp: decay-rate fits, transition scans, dephasing extremum and parameter sweeps

#pragma once

#include "epot/analytic.hpp"
#include "epot/channels.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epot::analysis {

using analytic::StateFamily;
using analytic::StateParams;

// Fitted samples must sit above this; below it log-negativity is eigenvalue noise.
inline constexpr double kFitNoiseFloor = 1e-11;
inline constexpr int kMinFitSamples = 8;

struct FitWindow {
  double lo = 8.0;
  double hi = 12.0;

  void validate() const;
};

struct Sample {
  double gamma_t = 0.0;
  double value = 0.0;
};

struct DecayFit {
  double exponent = 0.0;   // -slope of ln(value) against gamma_t
  double intercept = 0.0;  // ln(value) extrapolated to gamma_t = 0
  double window_lo = 0.0;
  double window_hi = 0.0;
  double max_residual = 0.0;
  int samples = 0;
};

// Least-squares line through (gamma_t, ln value) for the samples inside the window.
DecayFit decay_rate_fit(const std::vector<Sample>& series, const FitWindow& window = {});

enum class MeasureKind { log_negativity, concurrence, entropy };

std::string_view to_string(MeasureKind measure);
std::string_view to_string(ChannelKind channel);

struct SweepSpec {
  StateFamily family = StateFamily::spacs;
  std::vector<double> alphas;
  std::vector<double> ps{1.0};   // read for mixed_spacs only
  std::vector<double> phis{0.0};  // read for cat only
  std::vector<double> times;
  ChannelKind channel = ChannelKind::loss;
  MeasureKind measure = MeasureKind::log_negativity;
  std::optional<int> cutoff;
  std::size_t memory_budget = kDefaultMemoryBudget;

  // Throws ValidationError naming the offending field.
  void validate() const;
};

struct SweepRecord {
  StateFamily family = StateFamily::spacs;
  double alpha_abs = 0.0;
  std::optional<double> p;
  std::optional<double> phi;
  ChannelKind channel = ChannelKind::loss;
  double gamma_t = 0.0;
  MeasureKind measure = MeasureKind::log_negativity;
  double ep = 0.0;
  double sigma2 = 1.0;  // minimal quadrature variance of the evolved state
  std::optional<double> analytic_ep;
  int cutoff = 0;
  double tail_mass = 0.0;
};

// One record per (alpha, p, phi, gamma_t) in that nesting order, times innermost. Grid points
// run on up to `threads` workers; the output order does not depend on the thread count.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned threads = 1);

struct Step {
  std::size_t index = 0;  // the jump sits between index and index + 1
  double location = 0.0;  // midpoint of the two abscissae
  double jump = 0.0;      // |y[index + 1] - y[index]|
};

// Largest adjacent jump of ys. Needs at least two points.
Step steepest_step(const std::vector<double>& xs, const std::vector<double>& ys);

struct TransitionPoint {
  double parameter = 0.0;
  DecayFit fit;
};

struct TransitionScan {
  std::string parameter;  // "alpha", "p" or "phi"
  std::vector<TransitionPoint> points;
  double boundary_estimate = 0.0;
  double max_jump = 0.0;
};

// Decay exponent against the single swept grid of the spec. Log-negativity series of the loss
// channel use the closed forms where they exist; everything else goes through the numeric
// pipeline.
TransitionScan transition_scan(const SweepSpec& spec, const FitWindow& window = {},
                               unsigned threads = 1);

struct DephasingRow {
  double alpha_abs = 0.0;
  double ep_initial = 0.0;
  double ep_stationary = 0.0;
  double delta = 0.0;
};

struct DephasingAnalysis {
  std::vector<DephasingRow> rows;
  double argmax_alpha = 0.0;
  double max_delta = 0.0;
};

// E_p(0) - E_p(inf) for the pure SPACS under dephasing, with E_p(inf) taken from the
// stationary diagonal state.
DephasingAnalysis dephasing_analysis(const std::vector<double>& alpha_grid,
                                     std::optional<int> cutoff = std::nullopt);

}  // namespace epot::analysis
