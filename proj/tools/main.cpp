#include "commands.hpp"
#include "run_config.hpp"

#include "epot/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

namespace {

struct Flags {
  std::string config;
  std::string out;
  int cutoff = 0;
  std::string window;
  std::string measure;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> suites;
  double perturbation = 0.0;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace epot::cli;
  CLI::App app{"Entanglement potential of nonclassical light under loss and dephasing"};
  app.require_subcommand(1);

  Flags flags;
  std::map<CLI::App*, Subcommand> kinds;
  std::map<std::string, CLI::Option*> opts;
  auto add = [&](const char* name, const char* help, Subcommand kind) {
    CLI::App* sub = app.add_subcommand(name, help);
    kinds[sub] = kind;
    sub->add_option("--config", flags.config, "key=value run configuration");
    opts[std::string(name) + "out"] = sub->add_option("--out", flags.out, "output path (default stdout)");
    opts[std::string(name) + "cutoff"] = sub->add_option("--cutoff", flags.cutoff, "Fock cutoff override");
    opts[std::string(name) + "window"] = sub->add_option("--window", flags.window, "fit window LO:HI");
    opts[std::string(name) + "measure"] =
        sub->add_option("--measure", flags.measure, "logneg | concurrence | entropy");
    opts[std::string(name) + "threads"] = sub->add_option("--threads", flags.threads, "worker threads");
    opts[std::string(name) + "seed"] = sub->add_option("--seed", flags.seed, "seed for random test states");
    return sub;
  };
  add("sweep", "EP(t) curves over a parameter grid, as CSV", Subcommand::sweep);
  add("transition", "decay-exponent scan or ln EP heatmap, as CSV", Subcommand::transition);
  add("dephase", "E_p(0) - E_p(inf) under dephasing, as CSV", Subcommand::dephase);
  CLI::App* verify = add("verify", "run the verification suites", Subcommand::verify);
  verify->add_option("--suite", flags.suites, "channels | analytic | appendix | trichotomy");
  verify->add_option("--inject-perturbation", flags.perturbation)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  auto given = [&](const char* key) { return opts[name + key]->count() > 0; };

  Overrides ov;
  if (given("out")) ov.out = flags.out;
  if (given("cutoff")) ov.cutoff = flags.cutoff;
  if (given("window")) ov.window = flags.window;
  if (given("measure")) ov.measure = flags.measure;
  if (given("threads")) ov.threads = flags.threads;
  if (given("seed")) ov.seed = flags.seed;
  ov.suites = flags.suites;
  ov.perturbation = flags.perturbation;

  RunConfig cfg;
  try {
    const std::optional<std::string> path =
        flags.config.empty() ? std::nullopt : std::optional<std::string>(flags.config);
    cfg = load_config(kinds[chosen], path, ov);
  } catch (const ConfigError& e) {
    for (const auto& m : e.messages()) std::cerr << "epot: " << m << '\n';
    return kExitValidation;
  }

  try {
    return dispatch(cfg);
  } catch (const epot::ValidationError& e) {
    std::cerr << "epot: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "epot: " << e.what() << '\n';
    return kExitNumeric;
  }
}
