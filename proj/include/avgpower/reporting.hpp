#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "avgpower/baseline_cp.hpp"
#include "avgpower/decision_core.hpp"
#include "avgpower/mc_engine.hpp"
#include "avgpower/power_analysis.hpp"

namespace avgpower {

struct RunConfig {
  int n = 100;
  double level = 0.05;
  double prior_a = 0.5;
  double prior_b = 0.5;
  std::size_t grid_points = 499;
  double grid_min = 0.002;
  double grid_max = 0.998;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = ".";

  ParameterGrid grid() const { return ParameterGrid::uniform(grid_points, grid_min, grid_max); }
  TestConfig test_config() const;
};

struct Table1Options {
  BetaPrior informative{100.0, 100.0};
  BetaPrior non_informative{0.5, 0.5};
  Quadrature quadrature = Quadrature::kPiecewiseConstant;
};

struct McOptions {
  std::size_t n_params = 1000;
  std::size_t n_data_per_param = 100;
  double min_agreement = 0.95;
  double ess_floor = 100.0;
};

// CSV writers. Numbers use '.' decimals and LF line endings.
void write_decision_csv(std::ostream& out, const DecisionMatrix& matrix);
void write_row_summary_csv(std::ostream& out, const DecisionMatrix& matrix);
void write_regions_csv(std::ostream& out, const std::vector<ConfidenceRegion>& regions);
void write_power_curves_csv(std::ostream& out, const std::vector<PowerCurve>& curves);
void write_mixed_power_csv(std::ostream& out, const DecisionMatrix& matrix);
void write_avg_power_csv(std::ostream& out, const DecisionMatrix& matrix);
void write_table1_csv(std::ostream& out, const Table1& table);
void write_compare_cp_csv(std::ostream& out, const LengthComparison& comparison);
void write_mc_validate_csv(std::ostream& out, const DecisionMatrix& exact,
                           const mc::McValidationReport& report);

/// Rebuilds a matrix from `eta,x,included,threshold` lines. The eta column must
/// match `config.grid` to printed precision; coverage is recomputed.
DecisionMatrix read_decision_csv(std::istream& in, const TestConfig& config);

// Subcommands. Each writes its files under cfg.output_dir, prints a short
// summary to `log` and returns the process exit status.
int cmd_construct(const RunConfig& cfg, std::ostream& log);
int cmd_ci(const RunConfig& cfg, const std::vector<int>& xs, std::ostream& log);
int cmd_power(const RunConfig& cfg, const std::vector<double>& thetas, std::ostream& log);
int cmd_table1(const RunConfig& cfg, const Table1Options& opts, std::ostream& log);
int cmd_compare_cp(const RunConfig& cfg, std::ostream& log);
int cmd_mc_validate(const RunConfig& cfg, const McOptions& opts, std::ostream& log);

}  // namespace avgpower
