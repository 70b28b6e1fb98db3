#include "avgpower/decision_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace avgpower {
namespace {

void check_index(const DecisionMatrix& matrix, std::size_t eta_index) {
  if (eta_index >= matrix.rows().size()) {
    throw std::out_of_range("eta index " + std::to_string(eta_index) + " outside grid of " +
                            std::to_string(matrix.rows().size()));
  }
}

double included_mass(const std::vector<bool>& included, const std::vector<double>& pmf) {
  double sum = 0.0;
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    if (included[x]) sum += pmf[x];
  }
  return sum;
}

}  // namespace

ParameterGrid::ParameterGrid(std::vector<double> points, std::vector<double> widths)
    : points_(std::move(points)), widths_(std::move(widths)) {
  const double total = std::accumulate(widths_.begin(), widths_.end(), 0.0);
  weights_.reserve(widths_.size());
  for (double w : widths_) weights_.push_back(w / total);
}

ParameterGrid ParameterGrid::uniform(std::size_t count, double min, double max) {
  if (count < 2) throw std::invalid_argument("ParameterGrid: need at least 2 points");
  if (!(min > 0.0 && max < 1.0 && min < max)) {
    throw std::invalid_argument("ParameterGrid: require 0 < min < max < 1");
  }
  const double step = (max - min) / static_cast<double>(count - 1);
  std::vector<double> points(count);
  for (std::size_t i = 0; i < count; ++i) {
    points[i] = min + step * static_cast<double>(i);
  }
  points.back() = max;
  return ParameterGrid(std::move(points), std::vector<double>(count, step));
}

ParameterGrid ParameterGrid::from_points(std::vector<double> points) {
  if (points.size() < 2) throw std::invalid_argument("ParameterGrid: need at least 2 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] > 0.0 && points[i] < 1.0)) {
      throw std::invalid_argument("ParameterGrid: points must lie in (0, 1)");
    }
    if (i > 0 && !(points[i] > points[i - 1])) {
      throw std::invalid_argument("ParameterGrid: points must be strictly increasing");
    }
  }
  const std::size_t m = points.size();
  std::vector<double> widths(m);
  widths[0] = points[1] - points[0];
  widths[m - 1] = points[m - 1] - points[m - 2];
  for (std::size_t i = 1; i + 1 < m; ++i) widths[i] = 0.5 * (points[i + 1] - points[i - 1]);
  return ParameterGrid(std::move(points), std::move(widths));
}

std::size_t ParameterGrid::nearest_index(double value) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), value);
  if (it == points_.end()) return points_.size() - 1;
  const auto idx = static_cast<std::size_t>(it - points_.begin());
  if (idx > 0 && value - points_[idx - 1] <= points_[idx] - value) return idx - 1;
  return idx;
}

TestConfig::TestConfig(double level_, BinomialModel model_, BetaPrior prior_, ParameterGrid grid_)
    : level(level_), model(model_), prior(prior_), grid(std::move(grid_)) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("TestConfig: level must be in (0, 1)");
}

std::size_t DecisionRow::count() const {
  return static_cast<std::size_t>(std::count(included.begin(), included.end(), true));
}

DecisionMatrix::DecisionMatrix(TestConfig config, std::vector<DecisionRow> rows)
    : config_(std::move(config)), rows_(std::move(rows)) {
  if (rows_.size() != config_.grid.size()) {
    throw std::invalid_argument("DecisionMatrix: one row per grid point required");
  }
  for (const auto& r : rows_) {
    if (r.included.size() != static_cast<std::size_t>(config_.model.support_size())) {
      throw std::invalid_argument("DecisionMatrix: row width must equal n + 1");
    }
  }
}

const DecisionRow& DecisionMatrix::row(std::size_t eta_index) const {
  check_index(*this, eta_index);
  return rows_[eta_index];
}

bool DecisionMatrix::included(std::size_t eta_index, int x) const {
  if (!config_.model.in_support(x)) throw std::domain_error("outcome outside support");
  return row(eta_index).included[static_cast<std::size_t>(x)];
}

DecisionRow build_decision_row(double eta, const TestConfig& config) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("build_decision_row: eta must be in (0, 1)");
  const int n = config.model.n();
  const auto support = static_cast<std::size_t>(n + 1);

  std::vector<double> log_g(support);
  std::vector<double> pmf(support);
  for (int x = 0; x <= n; ++x) {
    log_g[x] = log_posterior_density(eta, x, config.model, config.prior);
    pmf[x] = binom_pmf(x, config.model, eta);
  }

  std::vector<std::size_t> order(support);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return log_g[l] > log_g[r]; });

  DecisionRow row;
  row.eta = eta;
  row.included.assign(support, false);
  const double target = 1.0 - config.level;

  // |log g1 - log g2| <= tol is the relative tolerance on g to first order.
  std::size_t next = 0;
  double cumulative = 0.0;
  double last_log_g = std::numeric_limits<double>::infinity();
  auto admit_group = [&] {
    const double leader = log_g[order[next]];
    while (next < support && leader - log_g[order[next]] <= kTieTolerance) {
      row.included[order[next]] = true;
      cumulative += pmf[order[next]];
      last_log_g = log_g[order[next]];
      ++next;
    }
  };
  while (next < support && cumulative < target) admit_group();
  // The greedy sum runs in posterior order; confirm in outcome order so that
  // coverage() can never report less than the target through rounding.
  while (next < support && included_mass(row.included, pmf) < target) admit_group();

  row.threshold = std::exp(last_log_g);
  row.achieved_coverage = included_mass(row.included, pmf);
  return row;
}

DecisionMatrix build_decision_matrix(const TestConfig& config) {
  std::vector<DecisionRow> rows;
  rows.reserve(config.grid.size());
  for (double eta : config.grid.points()) rows.push_back(build_decision_row(eta, config));
  return DecisionMatrix(config, std::move(rows));
}

DecisionMatrix full_acceptance_matrix(const TestConfig& config) {
  std::vector<DecisionRow> rows;
  rows.reserve(config.grid.size());
  for (double eta : config.grid.points()) {
    DecisionRow row;
    row.eta = eta;
    row.included.assign(static_cast<std::size_t>(config.model.support_size()), true);
    double min_log_g = std::numeric_limits<double>::infinity();
    for (int x = 0; x <= config.model.n(); ++x) {
      min_log_g = std::min(min_log_g, log_posterior_density(eta, x, config.model, config.prior));
    }
    row.threshold = std::exp(min_log_g);
    row.achieved_coverage = 1.0;
    rows.push_back(std::move(row));
  }
  return DecisionMatrix(config, std::move(rows));
}

double coverage(const DecisionMatrix& matrix, double theta, std::size_t eta_index) {
  const DecisionRow& row = matrix.row(eta_index);
  const BinomialModel& model = matrix.config().model;
  double sum = 0.0;
  for (int x = 0; x <= model.n(); ++x) {
    if (row.included[static_cast<std::size_t>(x)]) sum += binom_pmf(x, model, theta);
  }
  return sum;
}

double type1_error(const DecisionMatrix& matrix, std::size_t eta_index) {
  return 1.0 - coverage(matrix, matrix.row(eta_index).eta, eta_index);
}

ConfidenceRegion confidence_region(const DecisionMatrix& matrix, int x_observed) {
  if (!matrix.config().model.in_support(x_observed)) {
    throw std::domain_error("confidence_region: outcome outside support");
  }
  ConfidenceRegion region;
  region.x_observed = x_observed;
  region.lower = std::numeric_limits<double>::quiet_NaN();
  region.upper = std::numeric_limits<double>::quiet_NaN();

  const auto x = static_cast<std::size_t>(x_observed);
  std::size_t first = 0;
  std::size_t last = 0;
  bool seen = false;
  for (std::size_t i = 0; i < matrix.rows().size(); ++i) {
    if (!matrix.rows()[i].included[x]) continue;
    region.accepted.push_back(matrix.rows()[i].eta);
    if (!seen) first = i;
    last = i;
    seen = true;
  }
  if (seen) {
    region.lower = region.accepted.front();
    region.upper = region.accepted.back();
    region.contiguous = region.accepted.size() == last - first + 1;
  }
  return region;
}

}  // namespace avgpower
