#include "avgpower/power_analysis.hpp"

#include <numeric>
#include <stdexcept>

namespace avgpower {
namespace {

// pmf[j][x] = f_{theta_j}(x) for theta on the grid.
std::vector<std::vector<double>> grid_pmf_table(const ParameterGrid& grid,
                                                const BinomialModel& model) {
  std::vector<std::vector<double>> table(grid.size(),
                                         std::vector<double>(model.support_size()));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (int x = 0; x <= model.n(); ++x) table[j][x] = binom_pmf(x, model, grid[j]);
  }
  return table;
}

}  // namespace

double power(const DecisionMatrix& matrix, double theta, std::size_t eta_index) {
  return 1.0 - coverage(matrix, theta, eta_index);
}

PowerCurve power_curve(const DecisionMatrix& matrix, double theta) {
  PowerCurve curve;
  curve.theta = theta;
  curve.eta = matrix.grid().points();
  curve.values.reserve(matrix.grid().size());
  for (std::size_t i = 0; i < matrix.grid().size(); ++i) {
    curve.values.push_back(power(matrix, theta, i));
  }
  return curve;
}

std::vector<double> prior_weights(const ParameterGrid& grid, const BetaPrior& prior,
                                  Quadrature quadrature) {
  std::vector<double> w(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    w[i] = beta_pdf(grid[i], prior) * grid.cell_widths()[i];
  }
  if (quadrature == Quadrature::kNormalized) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) v /= total;
  }
  return w;
}

double avg_power_given_theta(const DecisionMatrix& matrix, double theta, Quadrature quadrature) {
  const auto w = prior_weights(matrix.grid(), matrix.config().prior, quadrature);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * power(matrix, theta, i);
  return sum;
}

double mixed_power_given_eta(const DecisionMatrix& matrix, std::size_t eta_index) {
  return mixed_power_given_eta(matrix, eta_index, matrix.config().prior);
}

double mixed_power_given_eta(const DecisionMatrix& matrix, std::size_t eta_index,
                             const BetaPrior& averaging_prior) {
  const DecisionRow& row = matrix.row(eta_index);
  const BinomialModel& model = matrix.config().model;
  double accepted = 0.0;
  for (int x = 0; x <= model.n(); ++x) {
    if (row.included[x]) accepted += beta_binom_pmf(x, model, averaging_prior);
  }
  return 1.0 - accepted;
}

double overall_avg_power(const DecisionMatrix& matrix, const BetaPrior& averaging_prior,
                         Quadrature quadrature) {
  if (quadrature == Quadrature::kPiecewiseConstant) {
    return average_power_report(matrix, averaging_prior, quadrature).overall;
  }
  const auto w = prior_weights(matrix.grid(), averaging_prior, quadrature);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    sum += w[i] * mixed_power_given_eta(matrix, i, averaging_prior);
  }
  return sum;
}

AveragePowerReport average_power_report(const DecisionMatrix& matrix,
                                        const BetaPrior& averaging_prior, Quadrature quadrature) {
  const ParameterGrid& grid = matrix.grid();
  const BinomialModel& model = matrix.config().model;
  const auto w = prior_weights(grid, averaging_prior, quadrature);
  const double total_weight = std::accumulate(w.begin(), w.end(), 0.0);
  const auto pmf = grid_pmf_table(grid, model);
  const auto support = static_cast<std::size_t>(model.support_size());

  // The double sum sum_i sum_j w_i w_j (1 - sum_x d_ix f_j(x)) factors through
  // the grid mixture m(x) = sum_j w_j f_j(x) and the acceptance mass
  // c(x) = sum_i w_i d_ix, keeping the cost linear in the grid size.
  std::vector<double> mixture(support, 0.0);
  std::vector<double> acceptance(support, 0.0);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    for (std::size_t x = 0; x < support; ++x) mixture[x] += w[j] * pmf[j][x];
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& included = matrix.rows()[i].included;
    for (std::size_t x = 0; x < support; ++x) {
      if (included[x]) acceptance[x] += w[i];
    }
  }

  AveragePowerReport report;
  report.per_eta.resize(grid.size());
  report.per_theta.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& included = matrix.rows()[i].included;
    double accepted = 0.0;
    for (std::size_t x = 0; x < support; ++x) {
      if (included[x]) accepted += mixture[x];
    }
    report.per_eta[i] = total_weight - accepted;
  }
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double accepted = 0.0;
    for (std::size_t x = 0; x < support; ++x) accepted += pmf[j][x] * acceptance[x];
    report.per_theta[j] = total_weight - accepted;
  }
  double overall = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) overall += w[i] * report.per_eta[i];
  report.overall = overall;
  return report;
}

Table1 compute_table1(const TestConfig& base, const BetaPrior& informative,
                      const BetaPrior& non_informative, Quadrature quadrature) {
  const std::array<BetaPrior, 2> priors = {informative, non_informative};
  Table1 table;
  for (std::size_t c = 0; c < 2; ++c) {
    const TestConfig config(base.level, base.model, priors[c], base.grid);
    const DecisionMatrix matrix = build_decision_matrix(config);
    for (std::size_t r = 0; r < 2; ++r) {
      table.cells[r][c] = overall_avg_power(matrix, priors[r], quadrature);
    }
  }
  return table;
}

}  // namespace avgpower
