#pragma once

// Sampling-based construction of decision rows for models given only through a
// likelihood, a parameter sampler and a data sampler:
//   (a) draw parameters (from the prior, or a proposal with importance weights),
//   (b) draw data from each sampled parameter,
//   (c) estimate posterior densities and coverage on the sampled data by
//       importance sampling, then admit outcomes greedily as in the exact case.
//
// Random streams: the parameter draw i uses stream (seed, kParamStream, i); the
// data draws for parameter i use stream (seed, kDataStream, i) in order j. Every
// output is a pure function of the model, the config and the seed.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "avgpower/decision_core.hpp"

namespace avgpower::mc {

using Rng = std::mt19937_64;

class McDegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class McPrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kParamStream = 0x70617261;  // "para"
inline constexpr std::uint64_t kDataStream = 0x64617461;   // "data"

std::uint64_t splitmix64(std::uint64_t x);

/// Independent generator for (seed, stream tag, index).
Rng stream_rng(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

struct McConfig {
  std::uint64_t seed = 1;
  std::size_t n_params = 1000;
  std::size_t n_data_per_param = 100;
  double level = 0.05;
  double ess_floor = 100.0;

  void validate() const;
  std::size_t total_draws() const { return n_params * n_data_per_param; }
};

template <class Param, class Data>
struct GenericModel {
  std::function<double(const Data&, const Param&)> likelihood;
  // Draws a parameter; with observed data the sampler may focus on plausible values.
  std::function<Param(Rng&, const std::optional<Data>&)> sample_param;
  std::function<Data(Rng&, const Param&)> sample_data;
  // prior(param) / proposal(param) up to a constant; 1 when sampling the prior.
  std::function<double(const Param&, const std::optional<Data>&)> prior_density_ratio;
};

template <class Param>
struct ParamSample {
  std::vector<Param> params;
  std::vector<double> weights;

  double total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
  double effective_size() const {
    double sq = 0.0;
    for (double w : weights) sq += w * w;
    const double total = total_weight();
    return sq > 0.0 ? total * total / sq : 0.0;
  }
};

/// Sampled data collapsed to distinct atoms when Data is totally ordered.
template <class Data>
struct DataSample {
  std::vector<Data> atoms;
  std::vector<double> multiplicity;
  std::vector<double> proposal_density;  // q(x): unweighted mixture of sampled f_eta_i
  std::vector<double> mixture_density;   // self-normalized estimate of P_mix(x)
  std::size_t total_draws = 0;
};

struct McDecisionRow {
  double eta = 0.0;
  std::vector<bool> included;  // per atom of the DataSample
  double threshold = 0.0;      // estimated posterior density of the last admitted tie-group
  double estimated_coverage = 0.0;
  double effective_sample_size = 0.0;

  /// Threshold rule extended to any outcome with estimated posterior density `g`.
  bool accepts(double g) const { return g >= threshold * (1.0 - kTieTolerance); }
};

/// Self-normalized estimate sum_i w_i f_{eta_i}(x) / sum_i w_i.
template <class Param, class Data>
double mc_mixture_density(const GenericModel<Param, Data>& model, const ParamSample<Param>& sample,
                          const Data& x) {
  double num = 0.0;
  for (std::size_t i = 0; i < sample.params.size(); ++i) {
    if (sample.weights[i] > 0.0) num += sample.weights[i] * model.likelihood(x, sample.params[i]);
  }
  return num / sample.total_weight();
}

template <class Param, class Data>
double mc_posterior_density(const GenericModel<Param, Data>& model,
                            const ParamSample<Param>& sample, const Param& eta, const Data& x) {
  return model.likelihood(x, eta) / mc_mixture_density(model, sample, x);
}

/// Step (a).
template <class Param, class Data>
ParamSample<Param> mc_sample_params(const GenericModel<Param, Data>& model, const McConfig& cfg,
                                    const std::optional<Data>& x0 = std::nullopt) {
  cfg.validate();
  ParamSample<Param> out;
  out.params.reserve(cfg.n_params);
  out.weights.reserve(cfg.n_params);
  for (std::size_t i = 0; i < cfg.n_params; ++i) {
    Rng rng = stream_rng(cfg.seed, kParamStream, i);
    Param p = model.sample_param(rng, x0);
    const double w = model.prior_density_ratio(p, x0);
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw McDegeneracyError("importance weight must be finite and nonnegative");
    }
    out.params.push_back(std::move(p));
    out.weights.push_back(w);
  }
  if (!(out.total_weight() > 0.0)) throw McDegeneracyError("all importance weights are zero");
  return out;
}

/// Step (b).
template <class Param, class Data>
DataSample<Data> mc_sample_data(const GenericModel<Param, Data>& model,
                                const ParamSample<Param>& params, const McConfig& cfg) {
  cfg.validate();
  DataSample<Data> out;
  out.total_draws = params.params.size() * cfg.n_data_per_param;
  if constexpr (std::totally_ordered<Data>) {
    std::map<Data, double> counts;
    for (std::size_t i = 0; i < params.params.size(); ++i) {
      Rng rng = stream_rng(cfg.seed, kDataStream, i);
      for (std::size_t j = 0; j < cfg.n_data_per_param; ++j) {
        counts[model.sample_data(rng, params.params[i])] += 1.0;
      }
    }
    for (auto& [x, m] : counts) {
      out.atoms.push_back(x);
      out.multiplicity.push_back(m);
    }
  } else {
    out.atoms.reserve(out.total_draws);
    for (std::size_t i = 0; i < params.params.size(); ++i) {
      Rng rng = stream_rng(cfg.seed, kDataStream, i);
      for (std::size_t j = 0; j < cfg.n_data_per_param; ++j) {
        out.atoms.push_back(model.sample_data(rng, params.params[i]));
      }
    }
    out.multiplicity.assign(out.atoms.size(), 1.0);
  }

  const double total_weight = params.total_weight();
  const auto n_params = static_cast<double>(params.params.size());
  out.proposal_density.reserve(out.atoms.size());
  out.mixture_density.reserve(out.atoms.size());
  for (const Data& x : out.atoms) {
    double q = 0.0;
    double mix = 0.0;
    for (std::size_t i = 0; i < params.params.size(); ++i) {
      const double f = model.likelihood(x, params.params[i]);
      q += f;
      mix += params.weights[i] * f;
    }
    out.proposal_density.push_back(q / n_params);
    out.mixture_density.push_back(mix / total_weight);
  }
  return out;
}

/// Step (c) for a single null value.
template <class Param, class Data>
McDecisionRow mc_build_decision_row(const GenericModel<Param, Data>& model, const Param& eta,
                                    const DataSample<Data>& samples, const McConfig& cfg) {
  cfg.validate();
  const std::size_t m = samples.atoms.size();
  if (m == 0) throw std::invalid_argument("mc_build_decision_row: empty data sample");

  std::vector<double> g(m);
  std::vector<double> ratio(m);  // f_eta / q, the coverage importance weight
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    const double f = model.likelihood(samples.atoms[a], eta);
    g[a] = f / samples.mixture_density[a];
    ratio[a] = f / samples.proposal_density[a];
    sum_w += samples.multiplicity[a] * ratio[a];
    sum_w2 += samples.multiplicity[a] * ratio[a] * ratio[a];
  }

  McDecisionRow row;
  if constexpr (std::is_convertible_v<Param, double>) row.eta = static_cast<double>(eta);
  row.effective_sample_size = sum_w2 > 0.0 ? sum_w * sum_w / sum_w2 : 0.0;
  if (row.effective_sample_size < cfg.ess_floor) {
    throw McPrecisionError("effective sample size below floor");
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return g[l] > g[r]; });

  row.included.assign(m, false);
  const double target = 1.0 - cfg.level;
  const auto n_draws = static_cast<double>(samples.total_draws);
  double covered = 0.0;
  std::size_t next = 0;
  while (next < m && covered < target) {
    const double leader = g[order[next]];
    while (next < m && g[order[next]] >= leader * (1.0 - kTieTolerance)) {
      const std::size_t a = order[next];
      row.included[a] = true;
      covered += samples.multiplicity[a] * ratio[a] / n_draws;
      row.threshold = g[a];
      ++next;
    }
  }
  row.estimated_coverage = covered;
  return row;
}

/// Binomial likelihood with a Beta prior. With observed x0 the parameter
/// proposal is the Beta posterior given x0, importance-weighted back to the prior.
GenericModel<double, int> binomial_beta_model(const BinomialModel& model, const BetaPrior& prior);

struct McValidationReport {
  std::size_t agree_cells = 0;
  std::size_t total_cells = 0;
  std::vector<std::size_t> row_disagreements;  // per grid eta
  std::vector<double> row_ess;
  double agreement() const {
    return total_cells == 0 ? 0.0 : static_cast<double>(agree_cells) / static_cast<double>(total_cells);
  }
};

/// Builds every grid row by sampling and compares the inclusion of each outcome
/// against the exact matrix for the same level, model and prior.
McValidationReport mc_validate_binomial(const TestConfig& exact_config, const McConfig& cfg);

}  // namespace avgpower::mc
