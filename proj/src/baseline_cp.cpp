#include "avgpower/baseline_cp.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace avgpower {
namespace {

// Root of an increasing function on [0, 1] crossing `target`.
double bisect_increasing(const std::function<double(double)>& f, double target) {
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > kCpTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double binom_upper_tail(int x, const BinomialModel& model, double theta) {
  double sum = 0.0;
  for (int k = std::max(x, 0); k <= model.n(); ++k) sum += binom_pmf(k, model, theta);
  return std::min(sum, 1.0);
}

double binom_lower_tail(int x, const BinomialModel& model, double theta) {
  double sum = 0.0;
  for (int k = 0; k <= std::min(x, model.n()); ++k) sum += binom_pmf(k, model, theta);
  return std::min(sum, 1.0);
}

CpInterval clopper_pearson(int x, const BinomialModel& model, double level) {
  if (!model.in_support(x)) throw std::domain_error("clopper_pearson: outcome outside support");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("clopper_pearson: level in (0, 1)");
  const double half = 0.5 * level;
  CpInterval cp;
  cp.x = x;
  if (x > 0) {
    cp.lower = bisect_increasing(
        [&](double t) { return binom_upper_tail(x, model, t); }, half);
  }
  if (x < model.n()) {
    // The lower tail decreases in theta; bisect its complement.
    cp.upper = bisect_increasing(
        [&](double t) { return 1.0 - binom_lower_tail(x, model, t); }, 1.0 - half);
  }
  return cp;
}

LengthComparison compare_lengths(const DecisionMatrix& matrix, double level) {
  const BinomialModel& model = matrix.config().model;
  const ParameterGrid& grid = matrix.grid();
  LengthComparison cmp;
  cmp.grid_step = (grid.points().back() - grid.points().front()) /
                  static_cast<double>(grid.size() - 1);
  double cp_sum = 0.0;
  double prop_sum = 0.0;
  for (int x = 0; x <= model.n(); ++x) {
    LengthComparisonEntry e{x, clopper_pearson(x, model, level), confidence_region(matrix, x)};
    cp_sum += e.cp.length();
    prop_sum += e.proposed.length();
    cmp.entries.push_back(std::move(e));
  }
  const double count = model.support_size();
  cmp.mean_cp_length = cp_sum / count;
  cmp.mean_proposed_length = prop_sum / count;
  cmp.mean_proposed_length_adjusted = cmp.mean_proposed_length + cmp.grid_step;
  return cmp;
}

}  // namespace avgpower
