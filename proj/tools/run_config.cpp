#include "run_config.hpp"

#include "epot/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace epot::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ValidationError("'" + text + "' is not a finite number");
  return v;
}

template <class Int>
Int parse_integer(const std::string& text) {
  Int v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw ValidationError("'" + text + "' is not an integer in range");
  return v;
}

analysis::FitWindow parse_window(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ValidationError("expected LO:HI, got '" + text + "'");
  analysis::FitWindow w{parse_double(parts[0]), parse_double(parts[1])};
  if (!(w.lo < w.hi)) throw ValidationError("window needs LO < HI, got '" + text + "'");
  return w;
}

analysis::MeasureKind parse_measure(const std::string& text) {
  if (text == "logneg") return analysis::MeasureKind::log_negativity;
  if (text == "concurrence") return analysis::MeasureKind::concurrence;
  if (text == "entropy") return analysis::MeasureKind::entropy;
  throw ValidationError("unknown measure '" + text + "' (logneg, concurrence, entropy)");
}

analysis::StateFamily parse_family(const std::string& text) {
  if (text == "spacs") return analysis::StateFamily::spacs;
  if (text == "mixed" || text == "mixed_spacs") return analysis::StateFamily::mixed_spacs;
  if (text == "cat") return analysis::StateFamily::cat;
  throw ValidationError("unknown family '" + text + "' (spacs, mixed, cat)");
}

ChannelKind parse_channel(const std::string& text) {
  if (text == "loss") return ChannelKind::loss;
  if (text == "dephasing") return ChannelKind::dephasing;
  throw ValidationError("unknown channel '" + text + "' (loss, dephasing)");
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

std::string at_line(int line, const std::string& field) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << "field '" << field << "': ";
  return os.str();
}

std::string join(const std::vector<std::string>& lines) {
  std::string s;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) s += '\n';
    s += lines[i];
  }
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : ValidationError(join(messages)), messages_(std::move(messages)) {}

std::vector<double> expand_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ValidationError("expected LO:HI:STEP, got '" + text + "'");
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  const double step = parse_double(parts[2]);
  if (!(step > 0.0)) throw ValidationError("range step must be positive");
  if (hi < lo) throw ValidationError("range is empty (HI < LO)");
  const double span = (hi - lo) / step;
  if (span > 1e6) throw ValidationError("range has more than a million points");
  const auto n = static_cast<long>(std::floor(span + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    out.push_back(std::abs(v - hi) <= 1e-9 * step ? hi : v);  // land exactly on HI
  }
  return out;
}

analysis::SweepSpec RunConfig::sweep_spec() const {
  analysis::SweepSpec s;
  s.family = family;
  s.alphas = alphas;
  if (family == analysis::StateFamily::mixed_spacs) s.ps = ps;
  if (family == analysis::StateFamily::cat) s.phis = phis;
  s.times = times;
  s.channel = channel;
  s.measure = measure;
  s.cutoff = cutoff;
  return s;
}

RunConfig parse_config(Subcommand sub, std::istream& in, const Overrides& overrides) {
  RunConfig cfg;
  cfg.subcommand = sub;
  std::vector<std::string> errors;
  std::map<std::string, int> first_line;
  std::map<std::string, int> scalar_seen;

  auto note = [&](const std::string& field, int line) { first_line.emplace(field, line); };
  auto grid_field = [](const std::string& key) {
    const auto pos = key.find("_range");
    return pos == std::string::npos ? key : key.substr(0, pos);
  };

  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "line " << line << ": expected key = value";
      errors.push_back(os.str());
      continue;
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    try {
      if (value.empty()) throw ValidationError("empty value");
      const bool scalar = key == "family" || key == "channel" || key == "measure" ||
                          key == "window" || key == "cutoff" || key == "threads" ||
                          key == "seed" || key == "out";
      if (scalar && scalar_seen.count(key)) {
        std::ostringstream os;
        os << "given twice (first on line " << scalar_seen[key] << ")";
        throw ValidationError(os.str());
      }
      if (scalar) scalar_seen[key] = line;

      if (key == "family") cfg.family = parse_family(value);
      else if (key == "alpha") { auto v = parse_values(value); cfg.alphas.insert(cfg.alphas.end(), v.begin(), v.end()); }
      else if (key == "alpha_range") { auto v = expand_range(value); cfg.alphas.insert(cfg.alphas.end(), v.begin(), v.end()); }
      else if (key == "p") { auto v = parse_values(value); cfg.ps.insert(cfg.ps.end(), v.begin(), v.end()); }
      else if (key == "p_range") { auto v = expand_range(value); cfg.ps.insert(cfg.ps.end(), v.begin(), v.end()); }
      else if (key == "phi") { auto v = parse_values(value); cfg.phis.insert(cfg.phis.end(), v.begin(), v.end()); }
      else if (key == "phi_range") { auto v = expand_range(value); cfg.phis.insert(cfg.phis.end(), v.begin(), v.end()); }
      else if (key == "gamma_t") { auto v = parse_values(value); cfg.times.insert(cfg.times.end(), v.begin(), v.end()); }
      else if (key == "gamma_range") { auto v = expand_range(value); cfg.times.insert(cfg.times.end(), v.begin(), v.end()); }
      else if (key == "channel") cfg.channel = parse_channel(value);
      else if (key == "measure") cfg.measure = parse_measure(value);
      else if (key == "window") cfg.window = parse_window(value);
      else if (key == "cutoff") cfg.cutoff = parse_integer<int>(value);
      else if (key == "threads") cfg.threads = parse_integer<unsigned>(value);
      else if (key == "seed") cfg.seed = parse_integer<std::uint64_t>(value);
      else if (key == "out") cfg.out = value;
      else if (key == "suite") cfg.suites.push_back(value);
      else {
        std::ostringstream os;
        os << "line " << line << ": unknown field '" << key << "'";
        errors.push_back(os.str());
        continue;
      }
      note(grid_field(key), line);
    } catch (const ValidationError& e) {
      errors.push_back(at_line(line, key) + e.what());
    }
  }

  auto flag_error = [&](const std::string& flag, const std::string& what) {
    errors.push_back("flag --" + flag + ": " + what);
  };
  if (overrides.out) cfg.out = overrides.out;
  if (overrides.cutoff) cfg.cutoff = overrides.cutoff;
  if (overrides.threads) cfg.threads = *overrides.threads;
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (!overrides.suites.empty()) cfg.suites = overrides.suites;
  cfg.perturbation = overrides.perturbation;
  if (overrides.window) {
    try {
      cfg.window = parse_window(*overrides.window);
      first_line["window"] = 0;
    } catch (const ValidationError& e) {
      flag_error("window", e.what());
    }
  }
  if (overrides.measure) {
    try {
      cfg.measure = parse_measure(*overrides.measure);
    } catch (const ValidationError& e) {
      flag_error("measure", e.what());
    }
  }

  auto line_of = [&](const std::string& field) {
    const auto it = first_line.find(field);
    return it == first_line.end() ? 0 : it->second;
  };
  auto field_error = [&](const std::string& field, const std::string& what) {
    errors.push_back(at_line(line_of(field), field) + what);
  };

  if (cfg.cutoff && *cfg.cutoff < 1) field_error("cutoff", "must be a positive integer");
  if (cfg.threads < 1) field_error("threads", "must be at least 1");

  const bool grids = sub == Subcommand::sweep || sub == Subcommand::transition;
  if (grids || sub == Subcommand::dephase) {
    if (cfg.alphas.empty()) field_error("alpha", "grid is empty");
    for (double a : cfg.alphas)
      if (a < 0.0) { field_error("alpha", "values must be non-negative"); break; }
  }
  if (grids) {
    if (cfg.times.empty()) field_error("gamma_t", "grid is empty");
    for (double t : cfg.times)
      if (t < 0.0) { field_error("gamma_t", "values must be non-negative"); break; }
    if (!std::is_sorted(cfg.times.begin(), cfg.times.end()))
      field_error("gamma_t", "grid must be sorted ascending");

    const bool mixed = cfg.family == analysis::StateFamily::mixed_spacs;
    const bool cat = cfg.family == analysis::StateFamily::cat;
    if (mixed && cfg.ps.empty()) field_error("p", "grid is empty (required for family = mixed)");
    if (!mixed && !cfg.ps.empty()) field_error("p", "only used with family = mixed");
    for (double p : cfg.ps)
      if (p < 0.0 || p > 1.0) { field_error("p", "values must lie in [0, 1]"); break; }
    if (cat && cfg.phis.empty()) field_error("phi", "grid is empty (required for family = cat)");
    if (!cat && !cfg.phis.empty()) field_error("phi", "only used with family = cat");
  }
  if (sub == Subcommand::transition && cfg.times.size() > 1) {
    const bool one_axis = (cfg.alphas.size() > 1) + (cfg.ps.size() > 1) + (cfg.phis.size() > 1) <= 1;
    if (!one_axis)
      field_error("gamma_t", "a decay-rate scan sweeps one parameter; use a single gamma_t for a heatmap");
    const auto inside = std::count_if(cfg.times.begin(), cfg.times.end(), [&](double t) {
      return t >= cfg.window.lo - 1e-12 && t <= cfg.window.hi + 1e-12;
    });
    if (inside < analysis::kMinFitSamples) {
      std::ostringstream os;
      os << "only " << inside << " gamma_t values fall inside [" << cfg.window.lo << ", "
         << cfg.window.hi << "]; a fit needs " << analysis::kMinFitSamples;
      field_error("window", os.str());
    }
  }
  if (sub == Subcommand::verify)
    for (const auto& s : cfg.suites)
      if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
        field_error("suite", "unknown suite '" + s + "' (channels, analytic, appendix, trichotomy)");

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

RunConfig load_config(Subcommand sub, const std::optional<std::string>& path,
                      const Overrides& overrides) {
  if (!path) {
    std::istringstream empty;
    return parse_config(sub, empty, overrides);
  }
  std::ifstream in(*path);
  if (!in) throw ConfigError({"cannot open config file '" + *path + "'"});
  return parse_config(sub, in, overrides);
}

}  // namespace epot::cli
