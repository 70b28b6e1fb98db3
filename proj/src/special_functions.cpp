#include "avgpower/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace avgpower {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

void require_outcome(int x, const BinomialModel& model) {
  if (!model.in_support(x)) {
    throw std::domain_error("outcome " + std::to_string(x) + " outside 0.." +
                            std::to_string(model.n()));
  }
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error(std::string(what) + " outside [0, 1]");
}

}  // namespace

double log_gamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("log_gamma: z must be > 0");
  if (z == 1.0 || z == 2.0) return 0.0;
  if (z < 0.5) {
    // Reflection keeps the series argument >= 0.5.
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) - log_gamma(1.0 - z);
  }
  const double zm1 = z - 1.0;
  double series = kLanczosCoef[0];
  for (std::size_t k = 1; k < kLanczosCoef.size(); ++k) {
    series += kLanczosCoef[k] / (zm1 + static_cast<double>(k));
  }
  const double t = zm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

double log_beta(double a, double b) {
  return (log_gamma(a) + log_gamma(b)) - log_gamma(a + b);
}

double log_binom_coef(int n, int x) {
  if (x < 0 || x > n) throw std::domain_error("log_binom_coef: x outside 0..n");
  return log_gamma(n + 1.0) - (log_gamma(x + 1.0) + log_gamma(n - x + 1.0));
}

double log_binom_pmf(int x, const BinomialModel& model, double theta) {
  require_outcome(x, model);
  require_probability(theta, "theta");
  const int n = model.n();
  const double ninf = -std::numeric_limits<double>::infinity();
  if (theta == 0.0) return x == 0 ? 0.0 : ninf;
  if (theta == 1.0) return x == n ? 0.0 : ninf;
  return log_binom_coef(n, x) + x * std::log(theta) + (n - x) * std::log1p(-theta);
}

double binom_pmf(int x, const BinomialModel& model, double theta) {
  return std::exp(log_binom_pmf(x, model, theta));
}

double log_beta_pdf(double t, const BetaPrior& prior) {
  require_probability(t, "t");
  const double a = prior.a();
  const double b = prior.b();
  const double ninf = -std::numeric_limits<double>::infinity();
  if (t == 0.0 || t == 1.0) {
    const double shape = t == 0.0 ? a : b;
    if (shape < 1.0) throw std::domain_error("beta_pdf: density unbounded at the boundary");
    if (shape > 1.0) return ninf;
    // shape == 1: the remaining factor is (1 - t)^(b - 1) or t^(a - 1) at t in {0, 1}, i.e. 1.
    return -log_beta(a, b);
  }
  return (a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - log_beta(a, b);
}

double beta_pdf(double t, const BetaPrior& prior) { return std::exp(log_beta_pdf(t, prior)); }

double log_beta_binom_pmf(int x, const BinomialModel& model, const BetaPrior& prior) {
  require_outcome(x, model);
  const int n = model.n();
  return log_binom_coef(n, x) + log_beta(x + prior.a(), n - x + prior.b()) -
         log_beta(prior.a(), prior.b());
}

double beta_binom_pmf(int x, const BinomialModel& model, const BetaPrior& prior) {
  return std::exp(log_beta_binom_pmf(x, model, prior));
}

double log_posterior_density(double eta, int x, const BinomialModel& model,
                             const BetaPrior& prior) {
  return log_binom_pmf(x, model, eta) - log_beta_binom_pmf(x, model, prior);
}

double posterior_density(double eta, int x, const BinomialModel& model, const BetaPrior& prior) {
  return std::exp(log_posterior_density(eta, x, model, prior));
}

double likelihood_ratio(double eta, int x, const BinomialModel& model, const BetaPrior& prior) {
  const double log_f = log_binom_pmf(x, model, eta);
  if (std::isinf(log_f)) return std::numeric_limits<double>::infinity();
  return std::exp(log_beta_binom_pmf(x, model, prior) - log_f);
}

}  // namespace avgpower
