#pragma once

#include <cstddef>
#include <vector>

#include "avgpower/special_functions.hpp"

namespace avgpower {

/// Ordered evaluation points for the null parameter eta, with quadrature data.
///
/// `cell_widths` are the piecewise-constant integration widths around each point
/// and `weights` the same widths normalized to sum to one.
class ParameterGrid {
 public:
  /// `count` equally spaced points from `min` to `max` inclusive.
  static ParameterGrid uniform(std::size_t count, double min, double max);

  /// 499 points, 0.002 + 0.002 i.
  static ParameterGrid standard() { return uniform(499, 0.002, 0.998); }

  /// Arbitrary strictly increasing points in (0, 1); cell widths are midpoint spans.
  static ParameterGrid from_points(std::vector<double> points);

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& cell_widths() const { return widths_; }

  /// Index of the point nearest to `value`.
  std::size_t nearest_index(double value) const;

  friend bool operator==(const ParameterGrid&, const ParameterGrid&) = default;

 private:
  ParameterGrid(std::vector<double> points, std::vector<double> widths);

  std::vector<double> points_;
  std::vector<double> widths_;
  std::vector<double> weights_;
};

struct TestConfig {
  TestConfig(double level, BinomialModel model, BetaPrior prior,
             ParameterGrid grid = ParameterGrid::standard());

  double level;  // type I error bound
  BinomialModel model;
  BetaPrior prior;
  ParameterGrid grid;
};

/// Acceptance set d(eta, .) of the test for a single null value.
struct DecisionRow {
  double eta = 0.0;
  std::vector<bool> included;
  double threshold = 0.0;  // posterior density of the last admitted tie-group
  double achieved_coverage = 0.0;

  std::size_t count() const;
  friend bool operator==(const DecisionRow&, const DecisionRow&) = default;
};

class DecisionMatrix {
 public:
  DecisionMatrix(TestConfig config, std::vector<DecisionRow> rows);

  const TestConfig& config() const { return config_; }
  const std::vector<DecisionRow>& rows() const { return rows_; }
  const DecisionRow& row(std::size_t eta_index) const;
  const ParameterGrid& grid() const { return config_.grid; }
  int n() const { return config_.model.n(); }
  bool included(std::size_t eta_index, int x) const;

 private:
  TestConfig config_;
  std::vector<DecisionRow> rows_;
};

struct ConfidenceRegion {
  int x_observed = 0;
  std::vector<double> accepted;
  double lower;  // NaN when empty
  double upper;  // NaN when empty
  bool contiguous = true;

  bool empty() const { return accepted.empty(); }
  double length() const { return empty() ? 0.0 : upper - lower; }
};

// Relative tolerance on posterior densities below which outcomes form one tie-group.
inline constexpr double kTieTolerance = 1e-12;

/// Builds the most powerful acceptance set against the prior mixture at `eta`.
///
/// Outcomes enter in decreasing order of posterior density g(eta, x) (equivalently,
/// increasing likelihood ratio) until their binomial mass under eta reaches
/// 1 - level. Outcomes whose densities tie are admitted together.
DecisionRow build_decision_row(double eta, const TestConfig& config);

DecisionMatrix build_decision_matrix(const TestConfig& config);

/// Matrix that accepts every outcome for every eta.
DecisionMatrix full_acceptance_matrix(const TestConfig& config);

/// gamma_d(theta, eta_i) = sum_x d(eta_i, x) f_theta(x).
double coverage(const DecisionMatrix& matrix, double theta, std::size_t eta_index);

double type1_error(const DecisionMatrix& matrix, std::size_t eta_index);

ConfidenceRegion confidence_region(const DecisionMatrix& matrix, int x_observed);

}  // namespace avgpower
