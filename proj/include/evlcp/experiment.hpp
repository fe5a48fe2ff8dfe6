#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evlcp/bounds.hpp"
#include "evlcp/probgen.hpp"
#include "evlcp/solver.hpp"

namespace evlcp {

// One perturb-and-solve trial. Bounds that do not apply (route not certified,
// or eta >= 1) stay unset and serialize as "nan" with the flag letter absent.
struct ExperimentRecord {
  std::string problem;
  std::size_t n = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;  // per-trial substream seed
  std::size_t trial = 0;
  double r = 0.0;
  std::optional<double> tau_bar;  // gamma route when certified, else delta
  std::optional<double> tau;
  std::optional<double> nu;
  std::optional<double> upsilon;
  std::optional<double> eta_gamma;
  std::optional<double> eta_delta;
  double wall_time = 0.0;  // seconds; not serialized

  // "g", "d", "gd" or "" depending on which routes were certified.
  std::string flags() const;
};

// Quantities that are the same for every trial at one eps: the perturbation
// recipe pins every norm entering the bound formulas.
struct SummaryRow {
  double eps = 0.0;
  std::optional<double> eta_gamma;
  std::optional<double> tau;
  std::optional<double> nu;
  std::optional<double> tau_bar_gamma;
  std::optional<double> eta_delta;
  std::optional<double> upsilon;
  std::optional<double> tau_bar_delta;
};

struct ExperimentConfig {
  std::string problem = "ex51";  // ex51 | ex52 | hjb
  std::size_t hjb_n = 16;        // hjb order; must be a perfect square
  std::vector<double> eps_list = {0.01};
  std::size_t trials = 1;
  std::uint64_t seed = 1;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;  // ordered by (eps, trial)
  std::vector<SummaryRow> summary;        // one row per eps
};

EvlcpProblem make_named_problem(const std::string& name, std::size_t hjb_n);

// Runs the perturbation protocol: per (eps, trial) draw a perturbation,
// re-check the base problem's certificates on the perturbed data
// (CertificateLost otherwise), solve both problems, and assert the realized
// relative error against every applicable bound (BoundViolation otherwise).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string records_to_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> records_from_csv(const std::string& csv);

// Deterministic 800x600 log-log chart of r / tau / upsilon / nu against eps.
// Identical records produce identical bytes.
std::string render_plot_svg(const std::vector<ExperimentRecord>& records);

std::string summary_table(const ExperimentResult& result);

}  // namespace evlcp
