#include "avgpower/reporting.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace avgpower {
namespace {

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  const auto path = cfg.output_dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::string& name) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + name);
}

std::string fmt_bound(double v) { return std::isnan(v) ? std::string("NA") : fmt::format("{:.6f}", v); }

}  // namespace

TestConfig RunConfig::test_config() const {
  return TestConfig(level, BinomialModel(n), BetaPrior(prior_a, prior_b), grid());
}

void write_decision_csv(std::ostream& out, const DecisionMatrix& matrix) {
  out << "eta,x,included,threshold\n";
  for (const auto& row : matrix.rows()) {
    const std::string eta = fmt::format("{:.6f}", row.eta);
    const std::string threshold = fmt::format("{:.12g}", row.threshold);
    for (std::size_t x = 0; x < row.included.size(); ++x) {
      fmt::print(out, "{},{},{},{}\n", eta, x, row.included[x] ? 1 : 0, threshold);
    }
  }
}

void write_row_summary_csv(std::ostream& out, const DecisionMatrix& matrix) {
  out << "eta,threshold,achieved_coverage\n";
  for (const auto& row : matrix.rows()) {
    fmt::print(out, "{:.6f},{:.12g},{:.12g}\n", row.eta, row.threshold, row.achieved_coverage);
  }
}

void write_regions_csv(std::ostream& out, const std::vector<ConfidenceRegion>& regions) {
  out << "x,lower,upper,n_accepted,contiguous\n";
  for (const auto& r : regions) {
    fmt::print(out, "{},{},{},{},{}\n", r.x_observed, fmt_bound(r.lower), fmt_bound(r.upper),
               r.accepted.size(), r.contiguous ? 1 : 0);
  }
}

void write_power_curves_csv(std::ostream& out, const std::vector<PowerCurve>& curves) {
  out << "theta,eta,power\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      fmt::print(out, "{:.6f},{:.6f},{:.12g}\n", c.theta, c.eta[i], c.values[i]);
    }
  }
}

void write_mixed_power_csv(std::ostream& out, const DecisionMatrix& matrix) {
  out << "eta,mixed_power\n";
  for (std::size_t i = 0; i < matrix.grid().size(); ++i) {
    fmt::print(out, "{:.6f},{:.12g}\n", matrix.grid()[i], mixed_power_given_eta(matrix, i));
  }
}

void write_avg_power_csv(std::ostream& out, const DecisionMatrix& matrix) {
  out << "theta,avg_power\n";
  for (double theta : matrix.grid().points()) {
    fmt::print(out, "{:.6f},{:.12g}\n", theta, avg_power_given_theta(matrix, theta));
  }
}

void write_table1_csv(std::ostream& out, const Table1& table) {
  out << "average_power,informative_test,non_informative_test\n";
  fmt::print(out, "informative_distribution,{:.6f},{:.6f}\n", table.cells[0][0], table.cells[0][1]);
  fmt::print(out, "non_informative_distribution,{:.6f},{:.6f}\n", table.cells[1][0],
             table.cells[1][1]);
}

void write_compare_cp_csv(std::ostream& out, const LengthComparison& comparison) {
  out << "x,cp_lower,cp_upper,prop_lower,prop_upper\n";
  for (const auto& e : comparison.entries) {
    fmt::print(out, "{},{:.10f},{:.10f},{},{}\n", e.x, e.cp.lower, e.cp.upper,
               fmt_bound(e.proposed.lower), fmt_bound(e.proposed.upper));
  }
}

void write_mc_validate_csv(std::ostream& out, const DecisionMatrix& exact,
                           const mc::McValidationReport& report) {
  out << "eta,disagreements,outcomes,ess\n";
  for (std::size_t i = 0; i < report.row_disagreements.size(); ++i) {
    fmt::print(out, "{:.6f},{},{},{:.1f}\n", exact.grid()[i], report.row_disagreements[i],
               exact.n() + 1, report.row_ess[i]);
  }
}

DecisionMatrix read_decision_csv(std::istream& in, const TestConfig& config) {
  std::string line;
  if (!std::getline(in, line) || line != "eta,x,included,threshold") {
    throw std::runtime_error("decision csv: unexpected header");
  }
  const auto support = static_cast<std::size_t>(config.model.support_size());
  std::vector<DecisionRow> rows(config.grid.size());
  for (auto& r : rows) r.included.assign(support, false);
  std::vector<std::size_t> seen(config.grid.size(), 0);

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string eta_s, x_s, inc_s, thr_s;
    if (!std::getline(fields, eta_s, ',') || !std::getline(fields, x_s, ',') ||
        !std::getline(fields, inc_s, ',') || !std::getline(fields, thr_s)) {
      throw std::runtime_error(fmt::format("decision csv line {}: expected 4 fields", line_no));
    }
    const double eta = std::stod(eta_s);
    const int x = std::stoi(x_s);
    const std::size_t i = config.grid.nearest_index(eta);
    if (std::abs(config.grid[i] - eta) > 5e-7 || !config.model.in_support(x)) {
      throw std::runtime_error(fmt::format("decision csv line {}: not on the grid", line_no));
    }
    rows[i].eta = config.grid[i];
    rows[i].included[x] = inc_s == "1";
    rows[i].threshold = std::stod(thr_s);
    ++seen[i];
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (seen[i] != support) throw std::runtime_error("decision csv: incomplete row");
    double cov = 0.0;
    for (int x = 0; x <= config.model.n(); ++x) {
      if (rows[i].included[x]) cov += binom_pmf(x, config.model, rows[i].eta);
    }
    rows[i].achieved_coverage = cov;
  }
  return DecisionMatrix(config, std::move(rows));
}

int cmd_construct(const RunConfig& cfg, std::ostream& log) {
  const DecisionMatrix matrix = build_decision_matrix(cfg.test_config());
  auto out = open_output(cfg, "decision_matrix.csv");
  write_decision_csv(out, matrix);
  finish(out, "decision_matrix.csv");
  auto summary = open_output(cfg, "decision_rows.csv");
  write_row_summary_csv(summary, matrix);
  finish(summary, "decision_rows.csv");

  double worst = 0.0;
  for (std::size_t i = 0; i < matrix.rows().size(); ++i) worst = std::max(worst, type1_error(matrix, i));
  fmt::print(log, "construct: {} rows x {} outcomes, prior Beta({}, {}), max type I error {:.6f}\n",
             matrix.rows().size(), cfg.n + 1, cfg.prior_a, cfg.prior_b, worst);
  return 0;
}

int cmd_ci(const RunConfig& cfg, const std::vector<int>& xs, std::ostream& log) {
  const DecisionMatrix matrix = build_decision_matrix(cfg.test_config());
  std::vector<int> outcomes = xs;
  if (outcomes.empty()) {
    for (int x = 0; x <= cfg.n; ++x) outcomes.push_back(x);
  }
  std::vector<ConfidenceRegion> regions;
  for (int x : outcomes) regions.push_back(confidence_region(matrix, x));
  auto out = open_output(cfg, "ci.csv");
  write_regions_csv(out, regions);
  finish(out, "ci.csv");
  for (const auto& r : regions) {
    if (r.empty()) {
      fmt::print(log, "x={}: empty region\n", r.x_observed);
    } else {
      fmt::print(log, "x={}: [{:.6f}, {:.6f}] ({} grid points{})\n", r.x_observed, r.lower, r.upper,
                 r.accepted.size(), r.contiguous ? "" : ", with gaps");
    }
  }
  return 0;
}

int cmd_power(const RunConfig& cfg, const std::vector<double>& thetas, std::ostream& log) {
  if (thetas.empty()) throw std::invalid_argument("power: at least one theta required");
  const DecisionMatrix matrix = build_decision_matrix(cfg.test_config());
  std::vector<PowerCurve> curves;
  for (double theta : thetas) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("power: theta outside [0, 1]");
    curves.push_back(power_curve(matrix, theta));
  }
  auto out = open_output(cfg, "power_curve.csv");
  write_power_curves_csv(out, curves);
  finish(out, "power_curve.csv");
  auto mixed = open_output(cfg, "mixed_power.csv");
  write_mixed_power_csv(mixed, matrix);
  finish(mixed, "mixed_power.csv");
  auto avg = open_output(cfg, "avg_power.csv");
  write_avg_power_csv(avg, matrix);
  finish(avg, "avg_power.csv");
  fmt::print(log, "power: {} curve(s) over {} null values\n", curves.size(), matrix.grid().size());
  return 0;
}

int cmd_table1(const RunConfig& cfg, const Table1Options& opts, std::ostream& log) {
  const Table1 table =
      compute_table1(cfg.test_config(), opts.informative, opts.non_informative, opts.quadrature);
  auto out = open_output(cfg, "table1.csv");
  write_table1_csv(out, table);
  finish(out, "table1.csv");
  fmt::print(log, "{:<30}{:>14}{:>18}\n", "average power", "informative", "non-informative");
  fmt::print(log, "{:<30}{:>14.3f}{:>18.3f}\n", "informative hypotheses", table.cells[0][0],
             table.cells[0][1]);
  fmt::print(log, "{:<30}{:>14.3f}{:>18.3f}\n", "non-informative hypotheses", table.cells[1][0],
             table.cells[1][1]);
  return 0;
}

int cmd_compare_cp(const RunConfig& cfg, std::ostream& log) {
  const DecisionMatrix matrix = build_decision_matrix(cfg.test_config());
  const LengthComparison cmp = compare_lengths(matrix, cfg.level);
  auto out = open_output(cfg, "compare_cp.csv");
  write_compare_cp_csv(out, cmp);
  finish(out, "compare_cp.csv");
  fmt::print(log, "mean length: proposed {:.6f} (grid-adjusted {:.6f}), Clopper-Pearson {:.6f}\n",
             cmp.mean_proposed_length, cmp.mean_proposed_length_adjusted, cmp.mean_cp_length);
  return 0;
}

int cmd_mc_validate(const RunConfig& cfg, const McOptions& opts, std::ostream& log) {
  mc::McConfig mc_cfg;
  mc_cfg.seed = cfg.seed;
  mc_cfg.n_params = opts.n_params;
  mc_cfg.n_data_per_param = opts.n_data_per_param;
  mc_cfg.level = cfg.level;
  mc_cfg.ess_floor = opts.ess_floor;
  const TestConfig config = cfg.test_config();
  const auto report = mc::mc_validate_binomial(config, mc_cfg);
  const DecisionMatrix exact = build_decision_matrix(config);
  auto out = open_output(cfg, "mc_validate.csv");
  write_mc_validate_csv(out, exact, report);
  finish(out, "mc_validate.csv");
  const bool ok = report.agreement() >= opts.min_agreement;
  fmt::print(log, "mc-validate: {} draws, agreement {:.4f} ({} / {} cells), threshold {:.4f}: {}\n",
             mc_cfg.total_draws(), report.agreement(), report.agree_cells, report.total_cells,
             opts.min_agreement, ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace avgpower
