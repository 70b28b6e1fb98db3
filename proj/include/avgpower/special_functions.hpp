#pragma once

#include <cstdint>
#include <stdexcept>

namespace avgpower {

/// Binomial experiment with a fixed number of trials; outcomes are 0..n.
class BinomialModel {
 public:
  explicit BinomialModel(int trials) : trials_(trials) {
    if (trials < 1) throw std::invalid_argument("BinomialModel: n must be >= 1");
  }

  int n() const { return trials_; }
  int support_size() const { return trials_ + 1; }
  bool in_support(int x) const { return x >= 0 && x <= trials_; }

  friend bool operator==(const BinomialModel&, const BinomialModel&) = default;

 private:
  int trials_;
};

/// Beta(a, b) prior on the success probability.
class BetaPrior {
 public:
  BetaPrior(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("BetaPrior: shapes must be > 0");
  }

  double a() const { return a_; }
  double b() const { return b_; }

  friend bool operator==(const BetaPrior&, const BetaPrior&) = default;

 private:
  double a_;
  double b_;
};

// ln Gamma(z) for z > 0 (Lanczos, g = 7). Throws std::domain_error otherwise.
double log_gamma(double z);

// ln B(a, b).
double log_beta(double a, double b);

// ln C(n, x); symmetric in x <-> n - x bit for bit.
double log_binom_coef(int n, int x);

double log_binom_pmf(int x, const BinomialModel& model, double theta);
double binom_pmf(int x, const BinomialModel& model, double theta);

double log_beta_pdf(double t, const BetaPrior& prior);
double beta_pdf(double t, const BetaPrior& prior);

double log_beta_binom_pmf(int x, const BinomialModel& model, const BetaPrior& prior);
double beta_binom_pmf(int x, const BinomialModel& model, const BetaPrior& prior);

/// Posterior density with respect to the prior measure,
/// g(eta, x) = f_eta(x) / P_mix(x).
///
/// For the binomial/beta pair this is also Beta(eta | a + x, b + n - x) / Beta(eta | a, b),
/// the relative belief ratio of eta after observing x.
double log_posterior_density(double eta, int x, const BinomialModel& model, const BetaPrior& prior);
double posterior_density(double eta, int x, const BinomialModel& model, const BetaPrior& prior);

/// Neyman-Pearson statistic r(eta, x) = P_mix(x) / f_eta(x), the reciprocal of the
/// posterior density. Returns +infinity when f_eta(x) == 0.
double likelihood_ratio(double eta, int x, const BinomialModel& model, const BetaPrior& prior);

}  // namespace avgpower
