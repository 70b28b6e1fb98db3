#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "avgpower/reporting.hpp"

int main(int argc, char** argv) {
  using namespace avgpower;

  CLI::App app{"Confidence intervals with maximal average power for the binomial experiment"};
  app.set_config("--config", "", "key=value configuration file (flags override it)");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string out_dir = ".";
  app.add_option("--n", cfg.n, "number of binomial trials")->check(CLI::PositiveNumber);
  app.add_option("--alpha", cfg.level, "test level (type I error bound)")->check(CLI::Range(0.0, 1.0));
  app.add_option("--prior-a", cfg.prior_a, "Beta prior shape a");
  app.add_option("--prior-b", cfg.prior_b, "Beta prior shape b");
  app.add_option("--grid-points", cfg.grid_points, "number of grid points for eta");
  app.add_option("--grid-min", cfg.grid_min, "smallest grid point");
  app.add_option("--grid-max", cfg.grid_max, "largest grid point");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", out_dir, "output directory");

  auto* construct = app.add_subcommand("construct", "write the decision matrix");

  std::vector<int> xs;
  auto* ci = app.add_subcommand("ci", "confidence regions for observed outcomes");
  ci->add_option("--x", xs, "observed outcome(s); default all");

  std::vector<double> thetas{0.5, 0.55, 0.6};
  auto* power_cmd = app.add_subcommand("power", "power curves for data-generating thetas");
  power_cmd->add_option("--theta", thetas, "data-generating theta values");

  Table1Options table_opts;
  double informative_shape = 100.0;
  double non_informative_shape = 0.5;
  Quadrature quadrature = Quadrature::kPiecewiseConstant;
  const std::map<std::string, Quadrature> quadrature_names{
      {"piecewise", Quadrature::kPiecewiseConstant}, {"normalized", Quadrature::kNormalized}};
  auto* table1 = app.add_subcommand("table1", "average power for informative/non-informative cross");
  table1->add_option("--informative-shape", informative_shape, "symmetric shape of the informative prior");
  table1->add_option("--non-informative-shape", non_informative_shape,
                     "symmetric shape of the non-informative prior");
  table1->add_option("--quadrature", quadrature, "grid integration rule")
      ->transform(CLI::CheckedTransformer(quadrature_names, CLI::ignore_case));

  auto* compare = app.add_subcommand("compare-cp", "compare lengths with Clopper-Pearson intervals");

  McOptions mc_opts;
  auto* mc_validate = app.add_subcommand("mc-validate", "check the sampling construction against the exact one");
  mc_validate->add_option("--n-params", mc_opts.n_params, "parameter draws");
  mc_validate->add_option("--n-data", mc_opts.n_data_per_param, "data draws per parameter");
  mc_validate->add_option("--min-agreement", mc_opts.min_agreement, "required cell agreement");
  mc_validate->add_option("--ess-floor", mc_opts.ess_floor, "minimum effective sample size");

  CLI11_PARSE(app, argc, argv);
  cfg.output_dir = out_dir;

  try {
    if (*construct) return cmd_construct(cfg, std::cout);
    if (*ci) return cmd_ci(cfg, xs, std::cout);
    if (*power_cmd) return cmd_power(cfg, thetas, std::cout);
    if (*table1) {
      table_opts.informative = BetaPrior(informative_shape, informative_shape);
      table_opts.non_informative = BetaPrior(non_informative_shape, non_informative_shape);
      table_opts.quadrature = quadrature;
      return cmd_table1(cfg, table_opts, std::cout);
    }
    if (*compare) return cmd_compare_cp(cfg, std::cout);
    if (*mc_validate) return cmd_mc_validate(cfg, mc_opts, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
