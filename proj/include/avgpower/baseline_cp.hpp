#pragma once

#include <vector>

#include "avgpower/decision_core.hpp"

namespace avgpower {

struct CpInterval {
  int x = 0;
  double lower = 0.0;
  double upper = 1.0;

  double length() const { return upper - lower; }
};

/// P(X >= x | theta) and P(X <= x | theta) by exact summation.
double binom_upper_tail(int x, const BinomialModel& model, double theta);
double binom_lower_tail(int x, const BinomialModel& model, double theta);

// Absolute tolerance on the bisection for the interval endpoints.
inline constexpr double kCpTolerance = 1e-12;

/// Symmetric Clopper-Pearson interval: each one-sided test at level / 2.
CpInterval clopper_pearson(int x, const BinomialModel& model, double level);

struct LengthComparisonEntry {
  int x = 0;
  CpInterval cp;
  ConfidenceRegion proposed;
};

struct LengthComparison {
  std::vector<LengthComparisonEntry> entries;
  double grid_step = 0.0;
  double mean_cp_length = 0.0;
  double mean_proposed_length = 0.0;
  // Grid endpoints sit half a cell inside the continuous interval on each side.
  double mean_proposed_length_adjusted = 0.0;
};

LengthComparison compare_lengths(const DecisionMatrix& matrix, double level);

}  // namespace avgpower
