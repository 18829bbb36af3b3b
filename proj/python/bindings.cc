// Python bindings. Arrays cross as NumPy (float64 points, int8 labels);
// structured reports cross as JSON text and are decoded by the package.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "htl/chow_estimator.h"
#include "htl/core_types.h"
#include "htl/datagen.h"
#include "htl/experiment.h"
#include "htl/gaussian_moments.h"
#include "htl/moment_tester.h"
#include "htl/reports.h"
#include "htl/tester_learner.h"
#include "htl/wedge_tester.h"

namespace py = pybind11;

namespace {

using Points = py::array_t<double, py::array::c_style | py::array::forcecast>;
using Labels = py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>;

std::size_t CheckedDim(const Points& x) {
  if (x.ndim() != 2) throw htl::InputError("points must be a 2-D array");
  return static_cast<std::size_t>(x.shape(1));
}

htl::LabeledSampleSet ToSampleSet(const Points& x, const Labels& y) {
  const std::size_t d = CheckedDim(x);
  if (y.ndim() != 1 || y.shape(0) != x.shape(0)) {
    throw htl::InputError("labels must be a 1-D array with one entry per point");
  }
  std::vector<double> points(x.data(), x.data() + x.size());
  std::vector<std::int8_t> labels(y.data(), y.data() + y.size());
  return htl::LabeledSampleSet(std::move(points), std::move(labels), d);
}

htl::PointView ToPointView(const Points& x) {
  const std::size_t d = CheckedDim(x);
  return htl::PointView(std::span<const double>(x.data(), x.size()), d);
}

htl::UnitVector ToUnitVector(const std::vector<double>& v) { return htl::UnitVector(v); }

htl::RunConfig MakeConfig(double epsilon, double tau, std::uint64_t seed, int k_cap, double c_a,
                          double slack, std::optional<double> strict_constant) {
  htl::RunConfig cfg;
  cfg.epsilon = epsilon;
  cfg.tau = tau;
  cfg.seed = seed;
  cfg.k_cap = k_cap;
  cfg.c_a = c_a;
  cfg.slack_multiplier = slack;
  cfg.strict_moment_constant = strict_constant;
  cfg.Validate();
  return cfg;
}

py::tuple GenerateArrays(std::size_t d, std::size_t n, const std::string& marginal,
                         const std::string& noise, double opt, std::uint64_t seed,
                         std::optional<std::vector<double>> v_star) {
  const htl::UnitVector planted =
      v_star ? ToUnitVector(*v_star) : htl::PlantedDirection(d, seed);
  htl::LabeledSampleSet samples = [&] {
    py::gil_scoped_release release;
    return htl::Generate(d, n, htl::MarginalFamily{htl::ParseMarginalKind(marginal)}, planted,
                         htl::NoiseModel{htl::ParseNoiseKind(noise), opt, std::nullopt}, seed);
  }();
  const auto rows = static_cast<py::ssize_t>(n);
  const auto cols = static_cast<py::ssize_t>(d);
  py::array_t<double> x({rows, cols});
  std::memcpy(x.mutable_data(), samples.points_data().data(), n * d * sizeof(double));
  py::array_t<std::int8_t> y(rows);
  std::memcpy(y.mutable_data(), samples.labels_data().data(), n * sizeof(std::int8_t));
  return py::make_tuple(x, y, planted.coords());
}

std::string Learn(const Points& x, const Labels& y, double epsilon, double tau,
                  std::uint64_t seed, int k_cap, double c_a, double slack,
                  std::optional<double> strict_constant) {
  const htl::RunConfig cfg = MakeConfig(epsilon, tau, seed, k_cap, c_a, slack, strict_constant);
  const htl::LabeledSampleSet samples = ToSampleSet(x, y);
  py::gil_scoped_release release;
  return htl::DumpJson(htl::ToJson(htl::TestableLearn(samples, cfg), std::nullopt));
}

std::string MomentTest(const Points& x, int k, double slack,
                       std::optional<double> strict_constant) {
  htl::RunConfig cfg;
  cfg.slack_multiplier = slack;
  cfg.strict_moment_constant = strict_constant;
  cfg.Validate();
  return htl::DumpJson(htl::ToJson(htl::MomentMatchTest(ToPointView(x), k, cfg)));
}

std::vector<double> Chow(const Points& x, const Labels& y, std::optional<int> batches,
                         std::optional<std::uint64_t> shuffle_seed) {
  const htl::LabeledSampleSet samples = ToSampleSet(x, y);
  const int b = batches.value_or(htl::DefaultBatchCount(samples.dim(), 0.1));
  return htl::EstimateChow(samples, b, shuffle_seed).vector;
}

std::string WedgeTest(const Points& x, const std::vector<double>& v, double eta) {
  return htl::DumpJson(
      htl::ToJson(htl::WedgeBoundTest(ToPointView(x), ToUnitVector(v), eta, htl::RunConfig{})));
}

double Error(const std::vector<double>& normal, const Points& x, const Labels& y) {
  return htl::EmpiricalError(htl::Halfspace{ToUnitVector(normal)}, ToSampleSet(x, y));
}

}  // namespace

PYBIND11_MODULE(_htl, m) {
  m.doc() = "Tester-learner for homogeneous halfspaces under Gaussian marginals";

  m.def("generate", &GenerateArrays, py::arg("d"), py::arg("n"),
        py::arg("marginal") = "gaussian", py::arg("noise") = "clean", py::arg("opt") = 0.0,
        py::arg("seed") = 0, py::arg("v_star") = std::nullopt,
        "Planted samples: returns (points, labels, v_star).");
  m.def("learn_json", &Learn, py::arg("x"), py::arg("y"), py::arg("epsilon") = 0.05,
        py::arg("tau") = 0.1, py::arg("seed") = 0, py::arg("k_cap") = 4, py::arg("c_a") = 2.0,
        py::arg("slack") = 6.0, py::arg("strict_constant") = std::nullopt);
  m.def("moment_test_json", &MomentTest, py::arg("x"), py::arg("k"), py::arg("slack") = 6.0,
        py::arg("strict_constant") = std::nullopt);
  m.def("wedge_test_json", &WedgeTest, py::arg("x"), py::arg("v"), py::arg("eta"));
  m.def("estimate_chow", &Chow, py::arg("x"), py::arg("y"), py::arg("batches") = std::nullopt,
        py::arg("shuffle_seed") = std::nullopt);
  m.def("empirical_error", &Error, py::arg("normal"), py::arg("x"), py::arg("y"));
  m.def("planted_direction",
        [](std::size_t d, std::uint64_t seed) { return htl::PlantedDirection(d, seed).coords(); },
        py::arg("d"), py::arg("seed"));
  m.def("required_sample_count", &htl::RequiredSampleCount, py::arg("d"), py::arg("epsilon"));
  m.def("gaussian_moment",
        [](std::vector<int> exponents) {
          return htl::GaussianMoment(htl::MonomialExponent(std::move(exponents)));
        },
        py::arg("exponents"));
  m.attr("ERROR_CONSTANT") = htl::kErrorConstant;
}
