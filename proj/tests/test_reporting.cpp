#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "avgpower/reporting.hpp"
#include "doctest.h"

using namespace avgpower;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("avgpower_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("decision csv") {
  TEST_CASE("layout and round trip") {
    const TestConfig cfg(0.05, BinomialModel(100), BetaPrior(0.5, 0.5));
    const DecisionMatrix m = build_decision_matrix(cfg);
    std::stringstream buf;
    write_decision_csv(buf, m);
    const std::string text = buf.str();
    CHECK(line_count(text) == 1 + 499 * 101);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.rfind("eta,x,included,threshold\n0.002000,0,1,", 0) == 0);

    std::istringstream in(text);
    const DecisionMatrix back = read_decision_csv(in, cfg);
    for (std::size_t i = 0; i < m.rows().size(); ++i) {
      CHECK(back.rows()[i].eta == m.rows()[i].eta);
      CHECK(back.rows()[i].included == m.rows()[i].included);
      CHECK(back.rows()[i].threshold == doctest::Approx(m.rows()[i].threshold).epsilon(1e-11));
      CHECK(back.rows()[i].achieved_coverage == doctest::Approx(m.rows()[i].achieved_coverage).epsilon(1e-14));
    }
  }

  TEST_CASE("rejects malformed input") {
    const TestConfig cfg(0.05, BinomialModel(2), BetaPrior(1, 1), ParameterGrid::uniform(3, 0.25, 0.75));
    std::istringstream bad_header("eta,x\n");
    CHECK_THROWS(read_decision_csv(bad_header, cfg));
    std::istringstream off_grid("eta,x,included,threshold\n0.300000,0,1,1\n");
    CHECK_THROWS(read_decision_csv(off_grid, cfg));
    std::istringstream short_rows("eta,x,included,threshold\n0.250000,0,1,1\n");
    CHECK_THROWS(read_decision_csv(short_rows, cfg));
  }
}

TEST_SUITE("commands") {
  TEST_CASE("construct writes the full matrix deterministically") {
    RunConfig cfg;
    cfg.output_dir = fresh_dir("construct_a");
    std::ostringstream log;
    CHECK(cmd_construct(cfg, log) == 0);
    const std::string first = slurp(cfg.output_dir / "decision_matrix.csv");
    CHECK(line_count(first) == 1 + 499 * 101);
    CHECK(line_count(slurp(cfg.output_dir / "decision_rows.csv")) == 500);
    cfg.output_dir = fresh_dir("construct_b");
    CHECK(cmd_construct(cfg, log) == 0);
    CHECK(slurp(cfg.output_dir / "decision_matrix.csv") == first);
  }

  TEST_CASE("informative and non-informative matrices differ at the extremes") {
    RunConfig non;
    RunConfig inf;
    inf.prior_a = inf.prior_b = 100.0;
    const auto a = build_decision_matrix(non.test_config());
    const auto b = build_decision_matrix(inf.test_config());
    auto differs_at = [&](int x) {
      for (std::size_t i = 0; i < a.rows().size(); ++i) {
        if (a.included(i, x) != b.included(i, x)) return true;
      }
      return false;
    };
    CHECK(differs_at(0));
    CHECK(differs_at(100));
  }

  TEST_CASE("ci") {
    RunConfig cfg;
    cfg.output_dir = fresh_dir("ci");
    std::ostringstream log;
    CHECK(cmd_ci(cfg, {0, 50}, log) == 0);
    const std::string csv = slurp(cfg.output_dir / "ci.csv");
    CHECK(csv.rfind("x,lower,upper,n_accepted,contiguous\n0,0.002000,", 0) == 0);
    CHECK(log.str().find("x=50: [0.400000, 0.600000]") != std::string::npos);
    CHECK(cmd_ci(cfg, {}, log) == 0);
    CHECK(line_count(slurp(cfg.output_dir / "ci.csv")) == 102);
    CHECK_THROWS(cmd_ci(cfg, {101}, log));
  }

  TEST_CASE("power") {
    RunConfig cfg;
    cfg.output_dir = fresh_dir("power");
    std::ostringstream log;
    CHECK(cmd_power(cfg, {0.5, 0.55, 0.6}, log) == 0);
    CHECK(line_count(slurp(cfg.output_dir / "power_curve.csv")) == 1 + 3 * 499);
    CHECK(line_count(slurp(cfg.output_dir / "mixed_power.csv")) == 500);
    CHECK(slurp(cfg.output_dir / "avg_power.csv").rfind("theta,avg_power\n", 0) == 0);
    CHECK(cmd_power(cfg, {0.55}, log) == 0);
    CHECK(line_count(slurp(cfg.output_dir / "power_curve.csv")) == 500);
    CHECK_THROWS_AS(cmd_power(cfg, {}, log), std::invalid_argument);
  }

  TEST_CASE("table1 labels and prior swap") {
    RunConfig cfg;
    cfg.output_dir = fresh_dir("table1");
    std::ostringstream log;
    Table1Options opts;
    CHECK(cmd_table1(cfg, opts, log) == 0);
    const std::string csv = slurp(cfg.output_dir / "table1.csv");
    CHECK(csv.rfind("average_power,informative_test,non_informative_test\ninformative_distribution,", 0) == 0);
    CHECK(csv.find("\nnon_informative_distribution,") != std::string::npos);

    const auto table = compute_table1(cfg.test_config(), opts.informative, opts.non_informative);
    const auto swapped = compute_table1(cfg.test_config(), opts.non_informative, opts.informative);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) CHECK(swapped.cells[1 - r][1 - c] == table.cells[r][c]);
    }
  }

  TEST_CASE("compare-cp") {
    RunConfig cfg;
    cfg.output_dir = fresh_dir("cp");
    std::ostringstream log;
    CHECK(cmd_compare_cp(cfg, log) == 0);
    const std::string csv = slurp(cfg.output_dir / "compare_cp.csv");
    CHECK(csv.rfind("x,cp_lower,cp_upper,prop_lower,prop_upper\n0,0.0000000000,", 0) == 0);
    CHECK(line_count(csv) == 102);
  }

  TEST_CASE("mc-validate exit status follows the agreement threshold") {
    RunConfig cfg;
    cfg.n = 20;
    cfg.grid_points = 49;
    cfg.grid_min = 0.02;
    cfg.grid_max = 0.98;
    cfg.output_dir = fresh_dir("mc");
    std::ostringstream log;
    McOptions opts;
    CHECK(cmd_mc_validate(cfg, opts, log) == 0);
    opts.min_agreement = 1.01;
    CHECK(cmd_mc_validate(cfg, opts, log) == 1);
  }

  TEST_CASE("unwritable output") {
    const fs::path dir = fresh_dir("unwritable");
    std::ofstream(dir / "file") << "x";
    RunConfig cfg;
    cfg.n = 5;
    cfg.output_dir = dir / "file" / "sub";
    std::ostringstream log;
    CHECK_THROWS_AS(cmd_construct(cfg, log), std::runtime_error);
  }
}
