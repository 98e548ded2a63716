// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include "epot/analysis.hpp"
#include "epot/analytic.hpp"
#include "epot/appendix_a.hpp"
#include "epot/channels.hpp"
#include "epot/errors.hpp"
#include "epot/fockspace.hpp"
#include "epot/measures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace epot;
using analysis::FitWindow;
using analysis::MeasureKind;
using analysis::StateFamily;
using analysis::SweepSpec;

namespace {

struct Outcome {
  bool passed = false;
  double metric = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i <= n; ++i) out.push_back(lo + i * step);
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Outcome trichotomy() {
  SweepSpec spec;
  spec.alphas = {0.5, 1.0, 2.0};
  spec.times = grid(8.0, 12.0, 0.25);
  const auto scan = analysis::transition_scan(spec, FitWindow{8.0, 12.0});
  const double expected[] = {2.0, 1.5, 1.0};
  Outcome o{true, 0.0, 0.05, ""};
  for (std::size_t i = 0; i < 3; ++i) {
    const double e = scan.points[i].fit.exponent;
    o.metric = std::max(o.metric, std::abs(e - expected[i]));
    o.detail += "alpha=" + fmt(spec.alphas[i]) + " -> " + fmt(e) + (i < 2 ? ", " : "");
  }
  o.passed = o.metric <= o.tolerance;
  return o;
}

Outcome mixed_boundary() {
  SweepSpec spec;
  spec.family = StateFamily::mixed_spacs;
  spec.alphas = grid(0.5, 2.5, 0.05);
  spec.ps = {0.8};
  spec.times = grid(8.0, 12.0, 0.25);
  const auto scan = analysis::transition_scan(spec);
  Outcome o{false, std::abs(scan.boundary_estimate - 1.291), 0.05, ""};
  o.detail = "step at alpha=" + fmt(scan.boundary_estimate) + " jump=" + fmt(scan.max_jump);
  o.passed = o.metric <= o.tolerance;
  return o;
}

Outcome cat_boundary() {
  SweepSpec spec;
  spec.family = StateFamily::cat;
  spec.alphas = {1.0};
  spec.phis = grid(1.40, 2.00, 0.02);
  spec.times = {10.0};
  spec.cutoff = 30;
  const auto records = analysis::run_sweep(spec);
  std::vector<double> ln_ep;
  for (const auto& r : records) ln_ep.push_back(std::log(std::max(r.ep, 1e-300)));
  // The steepest decline of ln EP along phi.
  std::size_t at = 0;
  double drop = 0.0;
  for (std::size_t i = 0; i + 1 < ln_ep.size(); ++i)
    if (ln_ep[i] - ln_ep[i + 1] > drop) {
      drop = ln_ep[i] - ln_ep[i + 1];
      at = i;
    }
  const double location = 0.5 * (spec.phis[at] + spec.phis[at + 1]);
  Outcome o{false, std::abs(location - 1.71), 0.05, ""};
  o.detail = "drop of ln EP by " + fmt(drop) + " between phi=" + fmt(spec.phis[at]) + " and " +
             fmt(spec.phis[at + 1]);
  o.passed = o.metric <= o.tolerance;
  return o;
}

Outcome squeezed_prefactor() {
  struct Case {
    std::string name;
    StateFamily family;
    analytic::StateParams params;
  };
  const std::vector<Case> cases{{"spacs(2)", StateFamily::spacs, {2.0, 1.0, 0.0}},
                                {"mixed(0.8,2)", StateFamily::mixed_spacs, {2.0, 0.8, 0.0}},
                                {"cat(1,0)", StateFamily::cat, {1.0, 1.0, 0.0}}};
  Outcome o{true, 0.0, 0.10, ""};
  for (const auto& c : cases) {
    SweepSpec spec;
    spec.family = c.family;
    spec.alphas = {c.params.alpha_abs};
    spec.ps = {c.params.p};
    spec.phis = {c.params.phi};
    spec.times = {6.0};
    const double numeric = analysis::run_sweep(spec).at(0).ep;
    const double sigma2 = analytic::initial_sigma2(c.family, c.params);
    const double law = (1.0 - sigma2) / (2.0 * std::log(2.0)) * std::exp(-6.0);
    const double rel = std::abs(numeric - law) / law;
    o.metric = std::max(o.metric, rel);
    o.detail += c.name + " rel=" + fmt(rel) + " ";
  }
  o.passed = o.metric <= o.tolerance;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o{true, 0.0, 1e-8, ""};
  auto track = [&](const analysis::SweepRecord& r, const std::string& label) {
    const double d = std::abs(r.ep - *r.analytic_ep);
    if (d >= o.metric) {
      o.metric = d;
      o.detail = "worst " + label + " alpha=" + fmt(r.alpha_abs) + " gamma_t=" + fmt(r.gamma_t);
    }
  };
  SweepSpec pure;
  pure.alphas = {0.0, 0.5, 1.0, 2.0};
  pure.times = {0.0, 0.5, 1.0, 2.0, 4.0, 6.0};
  for (const auto& r : analysis::run_sweep(pure)) track(r, "spacs");

  SweepSpec mixed;
  mixed.family = StateFamily::mixed_spacs;
  mixed.alphas = {0.5, 1.0, 1.5};
  mixed.ps = {0.2, 0.5, 0.8};
  mixed.times = {0.5, 2.0, 6.0};
  for (const auto& r : analysis::run_sweep(mixed)) track(r, "mixed p=" + fmt(*r.p));
  o.passed = o.metric < o.tolerance;
  return o;
}

Outcome appendix_identity() {
  Outcome o{true, 0.0, appendix_a::kIdentityTolerance, ""};
  for (std::uint64_t seed = 7; seed < 57; ++seed) {
    const auto psi = random_pure_state(20, seed);
    try {
      const auto eq = appendix_a::equivalence_check(psi);
      const double worst = std::max(eq.gap, eq.trace_distance);
      if (worst >= o.metric) {
        o.metric = worst;
        o.detail = "worst seed " + std::to_string(seed);
      }
    } catch (const IdentityViolation& e) {
      return {false, INFINITY, o.tolerance, e.what()};
    }
  }
  o.passed = o.metric < o.tolerance;
  return o;
}

Outcome dephasing_extremum() {
  const auto result = analysis::dephasing_analysis(grid(0.05, 2.0, 0.05));
  Outcome o{false, std::abs(result.argmax_alpha - 0.65), 0.05, ""};
  o.detail = "argmax alpha=" + fmt(result.argmax_alpha) + " max delta=" + fmt(result.max_delta);

  // Curve shape on a representative family of amplitudes.
  SweepSpec spec;
  spec.channel = ChannelKind::dephasing;
  spec.alphas = {0.25, 0.5, 0.65, 1.0, 1.5, 2.0};
  spec.times = {0.0, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
  const auto records = analysis::run_sweep(spec);
  const std::size_t nt = spec.times.size();
  double worst_rise = 0.0, worst_gap = 0.0;
  for (std::size_t a = 0; a < spec.alphas.size(); ++a) {
    for (std::size_t k = 0; k + 1 < nt; ++k)
      worst_rise = std::max(worst_rise, records[a * nt + k + 1].ep - records[a * nt + k].ep);
    const auto psi = pacs_state({spec.alphas[a], 0.0}, 1);
    const double stationary =
        entanglement_potential(dephasing_stationary(SingleModeDensity::pure(psi)));
    worst_gap = std::max(worst_gap, std::abs(records[a * nt + nt - 1].ep - stationary));
  }
  const bool monotone = worst_rise <= 1e-10;
  const bool converged = worst_gap < 1e-6;
  o.detail += " max rise=" + fmt(worst_rise) + " (tol 1e-10) gap at 50=" + fmt(worst_gap) +
              " (tol 1e-6)";
  o.passed = o.metric <= o.tolerance && monotone && converged;
  return o;
}

Outcome concurrence_null() {
  SweepSpec spec;
  spec.alphas = grid(0.2, 2.0, 0.1);
  spec.times = grid(6.0, 10.0, 0.25);
  const FitWindow window{6.0, 10.0};
  spec.measure = MeasureKind::concurrence;
  const auto conc = analysis::transition_scan(spec, window);
  spec.measure = MeasureKind::log_negativity;
  const auto logneg = analysis::transition_scan(spec, window);
  Outcome o{false, conc.max_jump, 0.2, ""};
  o.detail = "concurrence jump=" + fmt(conc.max_jump) + ", log-negativity jump=" +
             fmt(logneg.max_jump) + " (needs > 0.4)";
  o.passed = conc.max_jump < 0.2 && logneg.max_jump > 0.4;
  return o;
}

Outcome initial_slopes() {
  Outcome o{true, 0.0, 1e-4, ""};
  const double h = 1e-4;
  for (double a : {0.0, 1.0, 2.0}) {
    const double fd = (analytic::ep_spacs_loss_continued(a, h) -
                       analytic::ep_spacs_loss_continued(a, -h)) / (2.0 * h);
    const double expected = -(4.0 + a * a) / std::pow(2.0 + a * a, 2) / std::log(2.0);
    const double d = std::abs(fd - expected);
    if (d >= o.metric) {
      o.metric = d;
      o.detail = "worst alpha=" + fmt(a) + " fd=" + fmt(fd);
    }
  }
  o.passed = o.metric < o.tolerance;
  return o;
}

Outcome channel_oracle() {
  Outcome o{true, 0.0, 1e-8, ""};
  const std::vector<std::pair<std::string, SingleModeDensity>> states{
      {"spacs(1)", SingleModeDensity::pure(pacs_state({1.0, 0.0}, 1, 20))},
      {"cat(1,0)", SingleModeDensity::pure(cat_state({1.0, 0.0}, 0.0, 20))},
      {"mixed(1,0.8)", mixed_spacs({1.0, 0.0}, 0.8, 20)},
      {"coherent(1.2)", SingleModeDensity::pure(coherent_state({1.2, 0.0}, 20))},
  };
  for (const auto& [name, rho] : states)
    for (ChannelKind kind : {ChannelKind::loss, ChannelKind::dephasing})
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const ChannelParams params{kind, t};
        const auto rk4 = lindblad_integrate(rho, params, lindblad_recommended_steps(rho, params));
        const double d = trace_distance(evolve(rho, params), rk4);
        if (d >= o.metric) {
          o.metric = d;
          o.detail = "worst " + name + " " + std::string(analysis::to_string(kind)) +
                     " gamma_t=" + fmt(t);
        }
      }
  o.passed = o.metric < o.tolerance;
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "decay-rate trichotomy", 1.0, trichotomy},
      {2, "mixed-state boundary", 10.0, mixed_boundary},
      {3, "cat-state boundary", 120.0, cat_boundary},
      {4, "squeezed-regime prefactor", 60.0, squeezed_prefactor},
      {5, "analytic/numeric equivalence", 120.0, oracle_equivalence},
      {6, "beam-splitter/loss identity", 60.0, appendix_identity},
      {7, "dephasing extremum", 300.0, dephasing_extremum},
      {8, "concurrence null result", 300.0, concurrence_null},
      {9, "initial slopes", 1.0, initial_slopes},
      {10, "channel oracle", 60.0, channel_oracle},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, INFINITY, 0.0, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool ok = o.passed && in_time;
    if (!ok) ++failures;
    std::printf("[%s] AC%d %s: metric=%.6g tolerance=%.6g runtime=%.2fs/%.0fs (%s)%s\n",
                ok ? "PASS" : "FAIL", c.id, c.name.c_str(), o.metric, o.tolerance, secs,
                c.budget_s, o.detail.c_str(), in_time ? "" : " over time budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
