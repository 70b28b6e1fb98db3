#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "avgpower/baseline_cp.hpp"
#include "avgpower/decision_core.hpp"
#include "avgpower/mc_engine.hpp"
#include "avgpower/power_analysis.hpp"

namespace py = pybind11;
using namespace avgpower;

PYBIND11_MODULE(_avgpower, m) {
  m.doc() = "Confidence regions with maximal average power";

  py::class_<BinomialModel>(m, "BinomialModel")
      .def(py::init<int>(), py::arg("n"))
      .def_property_readonly("n", &BinomialModel::n);

  py::class_<BetaPrior>(m, "BetaPrior")
      .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
      .def_property_readonly("a", &BetaPrior::a)
      .def_property_readonly("b", &BetaPrior::b);

  py::class_<ParameterGrid>(m, "ParameterGrid")
      .def_static("uniform", &ParameterGrid::uniform, py::arg("count"), py::arg("min"), py::arg("max"))
      .def_static("standard", &ParameterGrid::standard)
      .def_property_readonly("points", &ParameterGrid::points)
      .def_property_readonly("weights", &ParameterGrid::weights)
      .def("__len__", &ParameterGrid::size);

  py::class_<TestConfig>(m, "TestConfig")
      .def(py::init<double, BinomialModel, BetaPrior, ParameterGrid>(), py::arg("level"),
           py::arg("model"), py::arg("prior"), py::arg("grid") = ParameterGrid::standard())
      .def_readonly("level", &TestConfig::level)
      .def_readonly("model", &TestConfig::model)
      .def_readonly("prior", &TestConfig::prior)
      .def_readonly("grid", &TestConfig::grid);

  py::class_<DecisionRow>(m, "DecisionRow")
      .def_readonly("eta", &DecisionRow::eta)
      .def_readonly("included", &DecisionRow::included)
      .def_readonly("threshold", &DecisionRow::threshold)
      .def_readonly("achieved_coverage", &DecisionRow::achieved_coverage);

  py::class_<DecisionMatrix>(m, "DecisionMatrix")
      .def_property_readonly("rows", &DecisionMatrix::rows)
      .def_property_readonly("config", &DecisionMatrix::config)
      .def("included", &DecisionMatrix::included, py::arg("eta_index"), py::arg("x"));

  py::class_<ConfidenceRegion>(m, "ConfidenceRegion")
      .def_readonly("x_observed", &ConfidenceRegion::x_observed)
      .def_readonly("accepted", &ConfidenceRegion::accepted)
      .def_readonly("lower", &ConfidenceRegion::lower)
      .def_readonly("upper", &ConfidenceRegion::upper)
      .def_readonly("contiguous", &ConfidenceRegion::contiguous);

  py::class_<CpInterval>(m, "CpInterval")
      .def_readonly("x", &CpInterval::x)
      .def_readonly("lower", &CpInterval::lower)
      .def_readonly("upper", &CpInterval::upper);

  py::enum_<Quadrature>(m, "Quadrature")
      .value("NORMALIZED", Quadrature::kNormalized)
      .value("PIECEWISE_CONSTANT", Quadrature::kPiecewiseConstant);

  m.def("log_gamma", &log_gamma, py::arg("z"));
  m.def("binom_pmf", &binom_pmf, py::arg("x"), py::arg("model"), py::arg("theta"));
  m.def("beta_pdf", &beta_pdf, py::arg("t"), py::arg("prior"));
  m.def("beta_binom_pmf", &beta_binom_pmf, py::arg("x"), py::arg("model"), py::arg("prior"));
  m.def("posterior_density", &posterior_density, py::arg("eta"), py::arg("x"), py::arg("model"),
        py::arg("prior"));
  m.def("likelihood_ratio", &likelihood_ratio, py::arg("eta"), py::arg("x"), py::arg("model"),
        py::arg("prior"));

  m.def("build_decision_row", &build_decision_row, py::arg("eta"), py::arg("config"));
  m.def("build_decision_matrix", &build_decision_matrix, py::arg("config"));
  m.def("coverage", &coverage, py::arg("matrix"), py::arg("theta"), py::arg("eta_index"));
  m.def("type1_error", &type1_error, py::arg("matrix"), py::arg("eta_index"));
  m.def("confidence_region", &confidence_region, py::arg("matrix"), py::arg("x"));

  m.def("power", &power, py::arg("matrix"), py::arg("theta"), py::arg("eta_index"));
  m.def("power_curve",
        [](const DecisionMatrix& matrix, double theta) { return power_curve(matrix, theta).values; },
        py::arg("matrix"), py::arg("theta"));
  m.def("avg_power_given_theta", &avg_power_given_theta, py::arg("matrix"), py::arg("theta"),
        py::arg("quadrature") = Quadrature::kNormalized);
  m.def("mixed_power_given_eta",
        py::overload_cast<const DecisionMatrix&, std::size_t>(&mixed_power_given_eta),
        py::arg("matrix"), py::arg("eta_index"));
  m.def("overall_avg_power", &overall_avg_power, py::arg("matrix"), py::arg("averaging_prior"),
        py::arg("quadrature") = Quadrature::kPiecewiseConstant);
  m.def(
      "table1",
      [](const TestConfig& base, const BetaPrior& informative, const BetaPrior& non_informative,
         Quadrature quadrature) {
        return compute_table1(base, informative, non_informative, quadrature).cells;
      },
      py::arg("base"), py::arg("informative") = BetaPrior(100, 100),
      py::arg("non_informative") = BetaPrior(0.5, 0.5),
      py::arg("quadrature") = Quadrature::kPiecewiseConstant);

  m.def("clopper_pearson", &clopper_pearson, py::arg("x"), py::arg("model"), py::arg("level"));

  m.def(
      "mc_validate_binomial",
      [](const TestConfig& config, std::uint64_t seed, std::size_t n_params, std::size_t n_data) {
        mc::McConfig cfg;
        cfg.seed = seed;
        cfg.n_params = n_params;
        cfg.n_data_per_param = n_data;
        cfg.level = config.level;
        return mc::mc_validate_binomial(config, cfg).agreement();
      },
      py::arg("config"), py::arg("seed") = 1, py::arg("n_params") = 1000, py::arg("n_data") = 100);
}
