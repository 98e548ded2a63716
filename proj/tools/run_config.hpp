// run_config.hpp: the key=value run configuration shared by every subcommand
//
//   # comment
//   family = mixed            spacs | mixed | cat
//   alpha = 0.5               repeat the key (or use commas) to build a grid
//   alpha_range = 0.2:2:0.1   lo:hi:step, inclusive of hi when it lands on the grid
//   p = 0.8                   also p_range; mixed only
//   phi = 1.0                 also phi_range; cat only
//   channel = loss            loss | dephasing
//   measure = logneg          logneg | concurrence | entropy
//   gamma_t = 0               also gamma_range
//   window = 8:12             fit window for transition scans
//   cutoff = 30
//   threads = 1
//   seed = 7
//   out = result.csv
//   suite = appendix          verify only; repeatable

#pragma once

#include "epot/analysis.hpp"
#include "epot/errors.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace epot::cli {

enum class Subcommand { sweep, transition, dephase, verify };

inline const std::vector<std::string> kSuites{"channels", "analytic", "appendix", "trichotomy"};

struct RunConfig {
  Subcommand subcommand = Subcommand::sweep;
  analysis::StateFamily family = analysis::StateFamily::spacs;
  std::vector<double> alphas;
  std::vector<double> ps;
  std::vector<double> phis;
  std::vector<double> times;
  ChannelKind channel = ChannelKind::loss;
  analysis::MeasureKind measure = analysis::MeasureKind::log_negativity;
  analysis::FitWindow window;
  std::optional<std::string> out;
  std::optional<int> cutoff;
  unsigned threads = 1;
  std::uint64_t seed = 7;
  std::vector<std::string> suites;  // empty: all
  double perturbation = 0.0;        // test hook, shifts the loss time in the appendix suite

  analysis::SweepSpec sweep_spec() const;
};

// Command-line values; each one replaces the config-file value.
struct Overrides {
  std::optional<std::string> out;
  std::optional<int> cutoff;
  std::optional<std::string> window;
  std::optional<std::string> measure;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> suites;
  double perturbation = 0.0;
};

// Carries every problem found in a configuration, one per line.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  std::vector<std::string> messages_;
};

// Parses and validates completely; throws ConfigError listing all problems at once.
RunConfig parse_config(Subcommand sub, std::istream& in, const Overrides& overrides);
RunConfig load_config(Subcommand sub, const std::optional<std::string>& path,
                      const Overrides& overrides);

// "lo:hi:step" -> lo, lo + step, ... <= hi. Throws ValidationError.
std::vector<double> expand_range(const std::string& text);

}  // namespace epot::cli
