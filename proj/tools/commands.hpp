// commands.hpp: the four subcommands and their output formats

#pragma once

#include "run_config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace epot::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitNumeric = 2, kExitAcceptance = 3 };

inline constexpr const char* kSweepHeader =
    "family,alpha_abs,p,phi,channel,gamma_t,measure,ep,sigma2,analytic_ep,cutoff,tail_mass";

// 17 significant digits, so every value round-trips.
std::string format_number(double v);

void write_sweep_csv(const std::vector<analysis::SweepRecord>& records, std::ostream& out);

// Each writes CSV to `out` and a one-line summary (if any) to `log`.
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_transition(const RunConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_dephase(const RunConfig& cfg, std::ostream& out, std::ostream& log);

struct SuiteResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;  // worst observed deviation
  double tolerance = 0.0;
  std::string detail;
};

std::vector<SuiteResult> run_suites(const RunConfig& cfg, std::ostream& log);

// Text lines to `log`; JSON summary to `json` when given. Exit 3 on any failure.
int cmd_verify(const RunConfig& cfg, std::ostream& log, std::ostream* json);

// Opens cfg.out (or uses stdout) and runs the subcommand.
int dispatch(const RunConfig& cfg);

}  // namespace epot::cli
