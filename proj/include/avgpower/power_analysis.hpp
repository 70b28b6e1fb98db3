#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "avgpower/decision_core.hpp"

namespace avgpower {

/// How prior-weighted integrals over the parameter grid are approximated.
enum class Quadrature {
  /// Weights proportional to beta_pdf(eta_i) * width_i, renormalized to sum to one.
  /// Mixed powers use the closed-form beta-binomial mixture.
  kNormalized,
  /// Plain piecewise-constant rule: weights beta_pdf(eta_i) * width_i without
  /// renormalization, applied to both the eta and the theta integral. Prior mass
  /// outside the grid cells is dropped. This is the convention behind the
  /// published average-power table.
  kPiecewiseConstant,
};

struct PowerCurve {
  double theta = 0.0;
  std::vector<double> eta;
  std::vector<double> values;
};

struct AveragePowerReport {
  std::vector<double> per_theta;  // G(theta_j, d) averaged over eta
  std::vector<double> per_eta;    // G'(eta_i, d) averaged over theta
  double overall = 0.0;
};

/// G(theta, eta_i, d) = 1 - coverage.
double power(const DecisionMatrix& matrix, double theta, std::size_t eta_index);

PowerCurve power_curve(const DecisionMatrix& matrix, double theta);

/// Grid weights for averaging under `prior`.
std::vector<double> prior_weights(const ParameterGrid& grid, const BetaPrior& prior,
                                  Quadrature quadrature);

/// Average power over null hypotheses for a fixed data-generating theta, weighted
/// by the matrix's construction prior.
double avg_power_given_theta(const DecisionMatrix& matrix, double theta,
                             Quadrature quadrature = Quadrature::kNormalized);

/// Power against the beta-binomial mixture: 1 - sum_{x included} BetaBinom(x).
double mixed_power_given_eta(const DecisionMatrix& matrix, std::size_t eta_index);
double mixed_power_given_eta(const DecisionMatrix& matrix, std::size_t eta_index,
                             const BetaPrior& averaging_prior);

/// Overall average power with nulls and data-generating parameters both drawn
/// from `averaging_prior`, which may differ from the construction prior.
double overall_avg_power(const DecisionMatrix& matrix, const BetaPrior& averaging_prior,
                         Quadrature quadrature = Quadrature::kPiecewiseConstant);

/// Full double-integral breakdown on the grid (theta on the same grid as eta).
AveragePowerReport average_power_report(const DecisionMatrix& matrix,
                                        const BetaPrior& averaging_prior,
                                        Quadrature quadrature = Quadrature::kPiecewiseConstant);

/// Average power for the two-by-two cross of tests and averaging distributions.
struct Table1 {
  // cells[r][c]: r = averaging distribution (0 informative, 1 non-informative),
  //              c = test construction prior (0 informative, 1 non-informative).
  std::array<std::array<double, 2>, 2> cells{};
};

Table1 compute_table1(const TestConfig& base, const BetaPrior& informative,
                      const BetaPrior& non_informative,
                      Quadrature quadrature = Quadrature::kPiecewiseConstant);

}  // namespace avgpower
