#include "avgpower/mc_engine.hpp"

namespace avgpower::mc {
namespace {

// Beta(a, b) via two gamma draws, rejecting the endpoints.
double draw_beta(Rng& rng, double a, double b) {
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  for (;;) {
    const double u = ga(rng);
    const double v = gb(rng);
    const double t = u / (u + v);
    if (t > 0.0 && t < 1.0) return t;
  }
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng stream_rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ tag) ^ index);
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  return Rng(seq);
}

void McConfig::validate() const {
  if (n_params == 0 || n_data_per_param == 0) {
    throw std::invalid_argument("McConfig: sample counts must be positive");
  }
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("McConfig: level must be in (0, 1)");
}

GenericModel<double, int> binomial_beta_model(const BinomialModel& model, const BetaPrior& prior) {
  GenericModel<double, int> m;
  m.likelihood = [model](const int& x, const double& theta) {
    return model.in_support(x) ? binom_pmf(x, model, theta) : 0.0;
  };
  // With x0 the proposal is an even mix of the prior and the Beta posterior
  // given x0, which keeps the prior/proposal weight bounded by 2.
  m.sample_param = [model, prior](Rng& rng, const std::optional<int>& x0) {
    if (!x0 || std::bernoulli_distribution(0.5)(rng)) return draw_beta(rng, prior.a(), prior.b());
    return draw_beta(rng, prior.a() + *x0, prior.b() + model.n() - *x0);
  };
  m.sample_data = [model](Rng& rng, const double& theta) {
    return std::binomial_distribution<int>(model.n(), theta)(rng);
  };
  m.prior_density_ratio = [model, prior](const double& theta, const std::optional<int>& x0) {
    if (!x0) return 1.0;
    const BetaPrior posterior(prior.a() + *x0, prior.b() + model.n() - *x0);
    const double post_over_prior = std::exp(log_beta_pdf(theta, posterior) - log_beta_pdf(theta, prior));
    return 1.0 / (0.5 + 0.5 * post_over_prior);
  };
  return m;
}

McValidationReport mc_validate_binomial(const TestConfig& exact_config, const McConfig& cfg) {
  const TestConfig config(cfg.level, exact_config.model, exact_config.prior, exact_config.grid);
  const DecisionMatrix exact = build_decision_matrix(config);
  const auto model = binomial_beta_model(config.model, config.prior);
  const auto params = mc_sample_params(model, cfg);
  const auto data = mc_sample_data(model, params, cfg);

  // Mixture estimate at every outcome, including any the data sample missed.
  const int n = config.model.n();
  std::vector<double> mixture(static_cast<std::size_t>(n + 1));
  for (int x = 0; x <= n; ++x) mixture[x] = mc_mixture_density(model, params, x);

  McValidationReport report;
  for (std::size_t i = 0; i < config.grid.size(); ++i) {
    const double eta = config.grid[i];
    const McDecisionRow row = mc_build_decision_row(model, eta, data, cfg);
    std::size_t wrong = 0;
    for (int x = 0; x <= n; ++x) {
      const bool mc_in = row.accepts(model.likelihood(x, eta) / mixture[x]);
      if (mc_in != exact.rows()[i].included[x]) ++wrong;
    }
    report.total_cells += static_cast<std::size_t>(n + 1);
    report.agree_cells += static_cast<std::size_t>(n + 1) - wrong;
    report.row_disagreements.push_back(wrong);
    report.row_ess.push_back(row.effective_sample_size);
  }
  return report;
}

}  // namespace avgpower::mc
