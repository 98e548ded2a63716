#include "epot/analysis.hpp"

#include "epot/errors.hpp"
#include "epot/measures.hpp"
#include "epot/optics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace epot::analysis {

namespace {

// Grid abscissae closer than this to a window edge count as inside it.
constexpr double kWindowSlack = 1e-12;

void require_grid(const std::vector<double>& grid, const char* field, bool non_negative) {
  if (grid.empty()) throw ValidationError(std::string("field '") + field + "': grid is empty");
  for (double v : grid) {
    if (!std::isfinite(v)) throw ValidationError(std::string("field '") + field + "': non-finite value");
    if (non_negative && v < 0.0) {
      std::ostringstream os;
      os << "field '" << field << "': value " << v << " is negative";
      throw ValidationError(os.str());
    }
  }
}

struct GridPoint {
  double alpha = 0.0;
  std::optional<double> p;
  std::optional<double> phi;
};

std::string describe(StateFamily family, const GridPoint& g) {
  std::ostringstream os;
  os.precision(17);
  os << analytic::to_string(family) << " alpha=" << g.alpha;
  if (g.p) os << " p=" << *g.p;
  if (g.phi) os << " phi=" << *g.phi;
  return os.str();
}

std::vector<GridPoint> grid_points(const SweepSpec& spec) {
  const std::vector<double> none{0.0};
  const bool use_p = spec.family == StateFamily::mixed_spacs;
  const bool use_phi = spec.family == StateFamily::cat;
  std::vector<GridPoint> points;
  for (double a : spec.alphas)
    for (double p : use_p ? spec.ps : none)
      for (double phi : use_phi ? spec.phis : none) {
        GridPoint g{a, std::nullopt, std::nullopt};
        if (use_p) g.p = p;
        if (use_phi) g.phi = phi;
        points.push_back(g);
      }
  return points;
}

struct Initial {
  SingleModeDensity rho;
  std::optional<FockVector> psi;
};

Initial initial_state(const SweepSpec& spec, const GridPoint& g) {
  const Complex alpha(g.alpha, 0.0);
  switch (spec.family) {
    case StateFamily::spacs: {
      FockVector psi = spec.cutoff ? pacs_state(alpha, 1, *spec.cutoff) : pacs_state(alpha, 1);
      return {SingleModeDensity::pure(psi), psi};
    }
    case StateFamily::cat: {
      FockVector psi = spec.cutoff ? cat_state(alpha, *g.phi, *spec.cutoff) : cat_state(alpha, *g.phi);
      return {SingleModeDensity::pure(psi), psi};
    }
    case StateFamily::mixed_spacs:
      return {spec.cutoff ? mixed_spacs(alpha, *g.p, *spec.cutoff) : mixed_spacs(alpha, *g.p),
              std::nullopt};
  }
  throw ValidationError("unknown state family");
}

bool has_loss_closed_form(const SweepSpec& spec) {
  return spec.channel == ChannelKind::loss && spec.family != StateFamily::cat;
}

std::optional<double> closed_form_ep(const SweepSpec& spec, const GridPoint& g, double t) {
  if (spec.measure != MeasureKind::log_negativity || !has_loss_closed_form(spec)) return std::nullopt;
  if (spec.family == StateFamily::spacs) return analytic::ep_spacs_loss(g.alpha, t);
  return analytic::ep_mixed_loss(g.alpha, *g.p, t);
}

double measure_value(const SweepSpec& spec, const GridPoint& g, const Initial& init,
                     const SingleModeDensity& evolved, double t) {
  switch (spec.measure) {
    case MeasureKind::log_negativity:
      if (t == 0.0 && init.psi) return entanglement_potential(*init.psi);
      return entanglement_potential(evolved);
    case MeasureKind::concurrence:
      // The loss-evolved SPACS family is a displaced qubit state; local displacements leave
      // the concurrence unchanged.
      if (has_loss_closed_form(spec))
        return concurrence_two_qubit(analytic::loss_reduced_state(g.alpha, g.p.value_or(1.0), t));
      return concurrence_two_qubit(
          beam_splitter_output(evolved.compacted(kCompactionTailMass), spec.memory_budget));
    case MeasureKind::entropy:
      return von_neumann_entropy(partial_trace_b(
          beam_splitter_output(evolved.compacted(kCompactionTailMass), spec.memory_budget)));
  }
  return 0.0;
}

std::vector<SweepRecord> sweep_point(const SweepSpec& spec, const GridPoint& g) {
  const Initial init = initial_state(spec, g);
  std::vector<SweepRecord> out;
  out.reserve(spec.times.size());
  for (double t : spec.times) {
    const SingleModeDensity evolved = evolve(init.rho, ChannelParams{spec.channel, t});
    SweepRecord r;
    r.family = spec.family;
    r.alpha_abs = g.alpha;
    r.p = g.p;
    r.phi = g.phi;
    r.channel = spec.channel;
    r.gamma_t = t;
    r.measure = spec.measure;
    r.ep = measure_value(spec, g, init, evolved, t);
    r.sigma2 = min_quadrature_variance(evolved).sigma2;
    r.analytic_ep = closed_form_ep(spec, g, t);
    r.cutoff = init.rho.cutoff();
    r.tail_mass = init.rho.truncation().tail_mass;
    out.push_back(std::move(r));
  }
  return out;
}

// Runs job(i) for i in [0, n) on up to `threads` workers and rethrows the failure with the
// lowest index, so the reported error does not depend on scheduling.
template <class Job, class Describe>
void parallel_for(std::size_t n, unsigned threads, Job&& job, Describe&& describe_point) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(count);
    for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ResourceError& e) {
      throw ResourceError(describe_point(i) + ": " + e.what());
    }
  }
}

}  // namespace

void FitWindow::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream os;
    os << "field 'window': need finite lo < hi, got [" << lo << ", " << hi << "]";
    throw ValidationError(os.str());
  }
}

DecayFit decay_rate_fit(const std::vector<Sample>& series, const FitWindow& window) {
  window.validate();
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    if (s.gamma_t < window.lo - kWindowSlack || s.gamma_t > window.hi + kWindowSlack) continue;
    if (!(s.value > kFitNoiseFloor)) continue;
    xs.push_back(s.gamma_t);
    ys.push_back(std::log(s.value));
  }
  const int n = static_cast<int>(xs.size());
  if (n < kMinFitSamples) {
    std::ostringstream os;
    os << "decay_rate_fit: only " << n << " samples in [" << window.lo << ", " << window.hi
       << "] lie above the noise floor " << kFitNoiseFloor << "; need " << kMinFitSamples;
    throw InsufficientData(os.str());
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw InsufficientData("decay_rate_fit: all samples share one gamma_t");
  const double slope = sxy / sxx;
  DecayFit fit;
  fit.exponent = -slope;
  fit.intercept = my - slope * mx;
  fit.window_lo = window.lo;
  fit.window_hi = window.hi;
  fit.samples = n;
  for (int i = 0; i < n; ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - (fit.intercept + slope * xs[i])));
  return fit;
}

std::string_view to_string(MeasureKind measure) {
  switch (measure) {
    case MeasureKind::log_negativity: return "logneg";
    case MeasureKind::concurrence: return "concurrence";
    case MeasureKind::entropy: return "entropy";
  }
  return "?";
}

std::string_view to_string(ChannelKind channel) {
  return channel == ChannelKind::loss ? "loss" : "dephasing";
}

void SweepSpec::validate() const {
  require_grid(alphas, "alpha", true);
  require_grid(times, "gamma_t", true);
  if (!std::is_sorted(times.begin(), times.end()))
    throw ValidationError("field 'gamma_t': time grid must be sorted ascending");
  if (family == StateFamily::mixed_spacs) {
    require_grid(ps, "p", true);
    for (double p : ps)
      if (p > 1.0) throw ValidationError("field 'p': values must lie in [0, 1]");
  }
  if (family == StateFamily::cat) require_grid(phis, "phi", false);
  if (cutoff && *cutoff < 1) throw ValidationError("field 'cutoff': must be a positive integer");
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const auto points = grid_points(spec);
  std::vector<std::vector<SweepRecord>> results(points.size());
  parallel_for(
      points.size(), threads, [&](std::size_t i) { results[i] = sweep_point(spec, points[i]); },
      [&](std::size_t i) { return describe(spec.family, points[i]); });
  std::vector<SweepRecord> flat;
  flat.reserve(points.size() * spec.times.size());
  for (auto& block : results)
    for (auto& r : block) flat.push_back(std::move(r));
  return flat;
}

Step steepest_step(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ValidationError("steepest_step: need at least two (x, y) pairs of equal length");
  Step best;
  best.jump = -1.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double jump = std::abs(ys[i + 1] - ys[i]);
    if (jump > best.jump) {
      best.index = i;
      best.jump = jump;
      best.location = 0.5 * (xs[i] + xs[i + 1]);
    }
  }
  return best;
}

TransitionScan transition_scan(const SweepSpec& spec, const FitWindow& window, unsigned threads) {
  spec.validate();
  window.validate();
  const bool use_p = spec.family == StateFamily::mixed_spacs;
  const bool use_phi = spec.family == StateFamily::cat;
  const int swept = (spec.alphas.size() > 1) + (use_p && spec.ps.size() > 1) +
                    (use_phi && spec.phis.size() > 1);
  if (swept > 1)
    throw ValidationError("transition_scan: exactly one of alpha, p, phi may hold several values");

  TransitionScan scan;
  scan.parameter = "alpha";
  if (use_p && spec.ps.size() > 1) scan.parameter = "p";
  if (use_phi && spec.phis.size() > 1) scan.parameter = "phi";

  const auto points = grid_points(spec);
  auto parameter_of = [&](const GridPoint& g) {
    if (scan.parameter == "p") return *g.p;
    if (scan.parameter == "phi") return *g.phi;
    return g.alpha;
  };

  std::vector<std::vector<Sample>> series(points.size());
  const bool closed_form = spec.measure == MeasureKind::log_negativity && has_loss_closed_form(spec);
  if (closed_form) {
    for (std::size_t i = 0; i < points.size(); ++i)
      for (double t : spec.times) series[i].push_back({t, *closed_form_ep(spec, points[i], t)});
  } else {
    const auto records = run_sweep(spec, threads);
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t k = 0; k < spec.times.size(); ++k) {
        const auto& r = records[i * spec.times.size() + k];
        series[i].push_back({r.gamma_t, r.ep});
      }
  }

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < points.size(); ++i) {
    DecayFit fit;
    try {
      fit = decay_rate_fit(series[i], window);
    } catch (const InsufficientData& e) {
      throw InsufficientData(describe(spec.family, points[i]) + ": " + e.what());
    }
    scan.points.push_back({parameter_of(points[i]), fit});
    xs.push_back(parameter_of(points[i]));
    ys.push_back(fit.exponent);
  }
  if (xs.size() >= 2) {
    const Step step = steepest_step(xs, ys);
    scan.boundary_estimate = step.location;
    scan.max_jump = step.jump;
  } else {
    scan.boundary_estimate = xs.front();
  }
  return scan;
}

DephasingAnalysis dephasing_analysis(const std::vector<double>& alpha_grid, std::optional<int> cutoff) {
  require_grid(alpha_grid, "alpha", true);
  DephasingAnalysis out;
  out.max_delta = -1.0;
  for (double a : alpha_grid) {
    const Complex alpha(a, 0.0);
    const FockVector psi = cutoff ? pacs_state(alpha, 1, *cutoff) : pacs_state(alpha, 1);
    DephasingRow row;
    row.alpha_abs = a;
    row.ep_initial = entanglement_potential(psi);
    row.ep_stationary = entanglement_potential(dephasing_stationary(SingleModeDensity::pure(psi)));
    row.delta = row.ep_initial - row.ep_stationary;
    if (row.delta > out.max_delta) {
      out.max_delta = row.delta;
      out.argmax_alpha = a;
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace epot::analysis
