#include "commands.hpp"

#include "epot/appendix_a.hpp"
#include "epot/errors.hpp"
#include "epot/measures.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace epot::cli {

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int i = 0; i <= n; ++i) out.push_back(lo + i * step);
  return out;
}

SuiteResult channels_suite() {
  // Exact evolutions against RK4 on the master equation, cutoff 20.
  SuiteResult r{"channels", true, 0.0, 1e-8, ""};
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
        const auto exact = evolve(rho, params);
        const auto rk4 = lindblad_integrate(rho, params, lindblad_recommended_steps(rho, params));
        const double d = trace_distance(exact, rk4);
        if (d > r.metric) {
          r.metric = d;
          std::ostringstream os;
          os << "worst " << name << " " << analysis::to_string(kind) << " gamma_t=" << t;
          r.detail = os.str();
        }
      }
  r.passed = r.metric < r.tolerance;
  return r;
}

SuiteResult analytic_suite() {
  SuiteResult r{"analytic", true, 0.0, 1e-8, ""};
  auto record = [&](double d, const std::string& what) {
    if (d > r.metric) {
      r.metric = d;
      r.detail = "worst " + what;
    }
  };
  for (double a : {0.0, 0.5, 1.0, 2.0})
    for (double t : {0.0, 1.0, 4.0}) {
      const auto rho = photon_loss_evolve(SingleModeDensity::pure(pacs_state({a, 0.0}, 1)), t);
      std::ostringstream os;
      os << "spacs alpha=" << a << " gamma_t=" << t;
      record(std::abs(entanglement_potential(rho) - analytic::ep_spacs_loss(a, t)), os.str());
    }
  for (double p : {0.5, 0.8})
    for (double a : {0.5, 1.5})
      for (double t : {0.5, 3.0}) {
        const auto rho = photon_loss_evolve(mixed_spacs({a, 0.0}, p), t);
        std::ostringstream os;
        os << "mixed p=" << p << " alpha=" << a << " gamma_t=" << t;
        record(std::abs(entanglement_potential(rho) - analytic::ep_mixed_loss(a, p, t)), os.str());
      }
  for (double t : grid(0.0, 5.0, 0.25))
    record(std::abs(analytic::ep_spacs_alpha1(t) - analytic::ep_spacs_loss(1.0, t)),
           "alpha=1 trigonometric form");
  r.passed = r.metric < r.tolerance;

  // Initial slopes are compared at their own (finite-difference) tolerance.
  constexpr double h = 1e-4;
  double slope_err = 0.0;
  for (double a : {0.0, 1.0, 2.0}) {
    const double fd = (analytic::ep_spacs_loss_continued(a, h) -
                       analytic::ep_spacs_loss_continued(a, -h)) / (2.0 * h);
    slope_err = std::max(slope_err, std::abs(fd - analytic::ep_initial_slope_spacs(a).slope));
  }
  if (slope_err >= 1e-4) {
    r.passed = false;
    r.detail += "; initial slope off by " + format_number(slope_err);
  }
  return r;
}

SuiteResult appendix_suite(const RunConfig& cfg) {
  SuiteResult r{"appendix", true, 0.0, appendix_a::kIdentityTolerance, ""};
  std::vector<std::pair<std::string, FockVector>> states;
  for (int i = 0; i < 50; ++i)
    states.emplace_back("random seed " + std::to_string(cfg.seed + i),
                        random_pure_state(20, cfg.seed + static_cast<std::uint64_t>(i)));
  states.emplace_back("cat(1,0)", cat_state({1.0, 0.0}, 0.0));
  states.emplace_back("|2>", pacs_state({0.0, 0.0}, 2));
  states.emplace_back("spacs(1)", pacs_state({1.0, 0.0}, 1));
  for (const auto& [name, psi] : states) {
    try {
      const auto eq = appendix_a::equivalence_check(psi, cfg.perturbation);
      const double worst = std::max(eq.gap, eq.trace_distance);
      if (worst > r.metric) {
        r.metric = worst;
        r.detail = "worst " + name;
      }
    } catch (const IdentityViolation& e) {
      r.passed = false;
      r.metric = std::numeric_limits<double>::infinity();
      r.detail = name + ": " + e.what();
      return r;
    }
  }
  r.passed = r.metric < r.tolerance;
  return r;
}

SuiteResult trichotomy_suite(const RunConfig& cfg) {
  SuiteResult r{"trichotomy", true, 0.0, 0.05, ""};
  const auto times = grid(cfg.window.lo, cfg.window.hi, (cfg.window.hi - cfg.window.lo) / 16.0);
  std::ostringstream os;
  for (auto [a, expected] : {std::pair{0.5, 2.0}, {1.0, 1.5}, {2.0, 1.0}}) {
    std::vector<analysis::Sample> series;
    for (double t : times) series.push_back({t, analytic::ep_spacs_loss(a, t)});
    const auto fit = analysis::decay_rate_fit(series, cfg.window);
    r.metric = std::max(r.metric, std::abs(fit.exponent - expected));
    os << (a == 0.5 ? "" : ", ") << "alpha=" << a << " -> " << format_number(fit.exponent);
  }
  r.detail = os.str();
  r.passed = r.metric <= r.tolerance;
  return r;
}

}  // namespace

std::string format_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_sweep_csv(const std::vector<analysis::SweepRecord>& records, std::ostream& out) {
  out << kSweepHeader << '\n';
  for (const auto& r : records) {
    out << analytic::to_string(r.family) << ',' << format_number(r.alpha_abs) << ',' << opt(r.p)
        << ',' << opt(r.phi) << ',' << analysis::to_string(r.channel) << ','
        << format_number(r.gamma_t) << ',' << analysis::to_string(r.measure) << ','
        << format_number(r.ep) << ',' << format_number(r.sigma2) << ',' << opt(r.analytic_ep)
        << ',' << r.cutoff << ',' << format_number(r.tail_mass) << '\n';
  }
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  write_sweep_csv(analysis::run_sweep(cfg.sweep_spec(), cfg.threads), out);
  return kExitOk;
}

int cmd_transition(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto spec = cfg.sweep_spec();
  if (cfg.times.size() == 1) {
    // Heatmap of ln EP over the parameter grid at one time.
    out << "family,alpha_abs,p,phi,channel,gamma_t,measure,ep,analytic_ep,ln_ep\n";
    for (const auto& r : analysis::run_sweep(spec, cfg.threads)) {
      const double best = r.analytic_ep.value_or(r.ep);
      out << analytic::to_string(r.family) << ',' << format_number(r.alpha_abs) << ',' << opt(r.p)
          << ',' << opt(r.phi) << ',' << analysis::to_string(r.channel) << ','
          << format_number(r.gamma_t) << ',' << analysis::to_string(r.measure) << ','
          << format_number(r.ep) << ',' << opt(r.analytic_ep) << ','
          << (best > 0.0 ? format_number(std::log(best)) : std::string()) << '\n';
    }
    return kExitOk;
  }
  const auto scan = analysis::transition_scan(spec, cfg.window, cfg.threads);
  out << "parameter,value,exponent,intercept,max_residual,samples,window_lo,window_hi\n";
  for (const auto& pt : scan.points)
    out << scan.parameter << ',' << format_number(pt.parameter) << ','
        << format_number(pt.fit.exponent) << ',' << format_number(pt.fit.intercept) << ','
        << format_number(pt.fit.max_residual) << ',' << pt.fit.samples << ','
        << format_number(pt.fit.window_lo) << ',' << format_number(pt.fit.window_hi) << '\n';
  log << "boundary_estimate=" << format_number(scan.boundary_estimate)
      << " max_jump=" << format_number(scan.max_jump) << '\n';
  return kExitOk;
}

int cmd_dephase(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto result = analysis::dephasing_analysis(cfg.alphas, cfg.cutoff);
  out << "alpha_abs,ep_initial,ep_stationary,delta_ep\n";
  for (const auto& row : result.rows)
    out << format_number(row.alpha_abs) << ',' << format_number(row.ep_initial) << ','
        << format_number(row.ep_stationary) << ',' << format_number(row.delta) << '\n';
  log << "argmax_alpha=" << format_number(result.argmax_alpha)
      << " max_delta=" << format_number(result.max_delta) << '\n';
  return kExitOk;
}

std::vector<SuiteResult> run_suites(const RunConfig& cfg, std::ostream&) {
  auto wanted = [&](const std::string& name) {
    return cfg.suites.empty() ||
           std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end();
  };
  std::vector<SuiteResult> results;
  for (const auto& name : kSuites) {
    if (!wanted(name)) continue;
    SuiteResult r;
    try {
      if (name == "channels") r = channels_suite();
      else if (name == "analytic") r = analytic_suite();
      else if (name == "appendix") r = appendix_suite(cfg);
      else r = trichotomy_suite(cfg);
    } catch (const Error& e) {
      r = SuiteResult{name, false, std::numeric_limits<double>::infinity(), 0.0, e.what()};
    }
    results.push_back(std::move(r));
  }
  return results;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log, std::ostream* json) {
  const auto results = run_suites(cfg, log);
  bool all = true;
  nlohmann::ordered_json summary;
  summary["suites"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    log << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": metric=" << format_number(r.metric)
        << " tolerance=" << format_number(r.tolerance) << " (" << r.detail << ")\n";
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["metric"] = std::isfinite(r.metric) ? nlohmann::ordered_json(r.metric) : nlohmann::ordered_json();
    j["tolerance"] = r.tolerance;
    j["detail"] = r.detail;
    summary["suites"].push_back(j);
  }
  summary["passed"] = all;
  if (json) *json << summary.dump(2) << '\n';
  return all ? kExitOk : kExitAcceptance;
}

int dispatch(const RunConfig& cfg) {
  std::ofstream file;
  if (cfg.out) {
    file.open(*cfg.out);
    if (!file) throw ValidationError("field 'out': cannot open '" + *cfg.out + "' for writing");
  }
  std::ostream& out = cfg.out ? static_cast<std::ostream&>(file) : std::cout;
  switch (cfg.subcommand) {
    case Subcommand::sweep: return cmd_sweep(cfg, out, std::cerr);
    case Subcommand::transition: return cmd_transition(cfg, out, std::cerr);
    case Subcommand::dephase: return cmd_dephase(cfg, out, std::cerr);
    case Subcommand::verify: return cmd_verify(cfg, std::cout, cfg.out ? &file : nullptr);
  }
  return kExitValidation;
}

}  // namespace epot::cli
