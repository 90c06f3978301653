// Python bindings for the main operations: coupling conversions, tree
// validation and decomposition, m-functions, eigenvalue solvers and the
// ac-spectrum indicators. Tree specs and halfline problems travel as JSON
// strings so the schemas stay the single source of truth.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgs/ac.hpp"
#include "qgs/builtin.hpp"
#include "qgs/coupling.hpp"
#include "qgs/json_io.hpp"
#include "qgs/reduction.hpp"
#include "qgs/spectral.hpp"
#include "qgs/tree_spectrum.hpp"

namespace py = pybind11;
using namespace qgs;

namespace {

GpiCouplingA make_coupling(double alpha, double beta, Complex gamma) {
  return GpiCouplingA{alpha, beta, gamma};
}

std::vector<std::pair<double, GpiCouplingA>> points_from_tuples(
    const std::vector<std::tuple<double, double, double, Complex>>& raw) {
  std::vector<std::pair<double, GpiCouplingA>> pts;
  for (const auto& [t, alpha, beta, gamma] : raw)
    pts.emplace_back(t, GpiCouplingA{alpha, beta, gamma});
  return pts;
}

std::vector<CouplingPoint> coupling_points(
    const std::vector<std::pair<double, GpiCouplingA>>& pts) {
  std::vector<CouplingPoint> out;
  for (const auto& [t, c] : pts) out.push_back({t, HalflineCoupling{c}});
  return out;
}

}  // namespace

PYBIND11_MODULE(_qgs, m) {
  m.doc() = "Schroedinger operators on radial trees with generalized point interactions";

  py::register_exception<Error>(m, "QgsError");

  py::class_<GpiCouplingA>(m, "CouplingA")
      .def(py::init(&make_coupling), py::arg("alpha") = 0.0, py::arg("beta") = 0.0,
           py::arg("gamma") = Complex(0.0, 0.0))
      .def_readwrite("alpha", &GpiCouplingA::alpha)
      .def_readwrite("beta", &GpiCouplingA::beta)
      .def_readwrite("gamma", &GpiCouplingA::gamma)
      .def_property_readonly("det_a", &GpiCouplingA::det_a)
      .def("__repr__", [](const GpiCouplingA& c) {
        return "CouplingA(alpha=" + format_double(c.alpha) +
               ", beta=" + format_double(c.beta) +
               ", gamma=" + format_complex(c.gamma) + ")";
      });

  py::class_<GpiCouplingB>(m, "CouplingB")
      .def_readonly("a", &GpiCouplingB::a)
      .def_readonly("d", &GpiCouplingB::d)
      .def_readonly("c", &GpiCouplingB::c);

  py::class_<GpiCouplingU>(m, "CouplingU")
      .def_readonly("xi", &GpiCouplingU::xi)
      .def_readonly("u1", &GpiCouplingU::u1)
      .def_readonly("u2", &GpiCouplingU::u2)
      .def_readonly("raw_norm", &GpiCouplingU::raw_norm)
      .def_readonly("norm_warning", &GpiCouplingU::norm_warning);

  py::enum_<CouplingClass>(m, "CouplingClass")
      .value("Generic", CouplingClass::Generic)
      .value("Delta", CouplingClass::Delta)
      .value("DeltaPrime", CouplingClass::DeltaPrime)
      .value("Separating", CouplingClass::Separating)
      .value("DirichletBoth", CouplingClass::DirichletBoth)
      .value("NeumannBoth", CouplingClass::NeumannBoth);

  m.def("a_to_b", &a_to_b, py::arg("coupling"));
  m.def("b_to_a", &b_to_a, py::arg("coupling"));
  m.def("a_to_unitary", &a_to_unitary, py::arg("coupling"));
  m.def("classify", &classify, py::arg("coupling"), py::arg("tol") = kDegeneracyTol);
  m.def(
      "jump_matrix",
      [](const GpiCouplingA& c) {
        const Eigen::Matrix2cd j = jump_matrix(c).m;
        return std::vector<std::vector<Complex>>{{j(0, 0), j(0, 1)},
                                                 {j(1, 0), j(1, 1)}};
      },
      py::arg("coupling"));

  m.def(
      "validate_tree",
      [](const std::string& tree_json) {
        const RadialTreeSpec spec = tree_from_json(Json::parse(tree_json));
        return dump(to_json(validate_tree(spec)));
      },
      py::arg("tree_json"), "Validate a tree spec; returns the report as JSON.");

  m.def(
      "reduce_vertex_coupling",
      [](double alpha_t, double beta_t, Complex gamma_t, int b) {
        const HalflineCoupling red = reduce_vertex_coupling(alpha_t, beta_t, gamma_t, b);
        if (const auto* g = std::get_if<GpiCouplingA>(&red)) return py::cast(*g);
        if (const auto* sb = std::get_if<SpecialBeta>(&red))
          return py::cast(std::make_pair(std::string("special_beta"), sb->rhs_factor()));
        const auto& sa = std::get<SpecialAlpha>(red);
        return py::cast(std::make_pair(std::string("special_alpha"), sa.rhs_factor()));
      },
      py::arg("alpha_t"), py::arg("beta_t"), py::arg("gamma_t"), py::arg("b"));

  m.def(
      "decompose",
      [](const std::string& tree_json, int max_generation) {
        const RadialTreeSpec spec = tree_from_json(Json::parse(tree_json));
        const int n = max_generation < 0 ? int(spec.generations.size()) : max_generation;
        return dump(decomposition_to_json(decompose(spec, n)));
      },
      py::arg("tree_json"), py::arg("max_generation") = -1,
      "Decompose a tree spec into halfline problems; returns JSON.");

  m.def(
      "mfunction_plus",
      [](const std::vector<std::tuple<double, double, double, Complex>>& points,
         Complex z, double t) {
        const auto sp = SpectralParameter::from_z(z);
        return mfunction_plus(coupling_points(points_from_tuples(points)), sp, t).value;
      },
      py::arg("points"), py::arg("z"), py::arg("t") = 0.0,
      "m_+(z, t) for points given as (t, alpha, beta, gamma) tuples.");

  m.def(
      "mfunction_series",
      [](const std::vector<std::tuple<double, double, double, Complex>>& points,
         Complex z) {
        return mfunction_series(points_from_tuples(points),
                                SpectralParameter::from_z(z))
            .value;
      },
      py::arg("points"), py::arg("z"));

  m.def(
      "truncated_eigenvalues",
      [](const std::string& problem_json, double cutoff, double e_min, double e_max,
         int grid) {
        const HalflineProblem p = problem_from_json(Json::parse(problem_json));
        return truncated_eigenvalues(p, cutoff, RootCondition::dirichlet(), e_min,
                                     e_max, grid)
            .values;
      },
      py::arg("problem_json"), py::arg("cutoff"), py::arg("e_min") = 1e-6,
      py::arg("e_max") = 100.0, py::arg("grid") = 4000);

  m.def(
      "tree_eigenvalues_direct",
      [](const std::string& tree_json, double cutoff, double e_min, double e_max) {
        const RadialTreeSpec spec = tree_from_json(Json::parse(tree_json));
        return expand_multiplicities(
            tree_eigenvalues_direct(spec, cutoff, e_min, e_max));
      },
      py::arg("tree_json"), py::arg("cutoff"), py::arg("e_min") = 1e-6,
      py::arg("e_max") = 100.0);

  m.def(
      "decomposed_eigenvalues",
      [](const std::string& tree_json, double cutoff, double e_min, double e_max,
         int grid) {
        const RadialTreeSpec spec = tree_from_json(Json::parse(tree_json));
        return decomposed_eigenvalues(spec, cutoff, e_min, e_max, grid);
      },
      py::arg("tree_json"), py::arg("cutoff"), py::arg("e_min") = 1e-6,
      py::arg("e_max") = 100.0, py::arg("grid") = 4000);

  m.def(
      "reflectionless_defect",
      [](const std::vector<std::tuple<double, double, double, Complex>>& points,
         double e, double eta) {
        return reflectionless_defect(true, points_from_tuples(points), e, eta);
      },
      py::arg("points"), py::arg("e"), py::arg("eta") = 1e-6);

  m.def(
      "gpi_distance",
      [](const std::string& first_json, const std::string& second_json, int terms) {
        return gpi_distance(measures_from_json(Json::parse(first_json)),
                            measures_from_json(Json::parse(second_json)), terms);
      },
      py::arg("first_json"), py::arg("second_json"), py::arg("terms") = 32);

  m.def(
      "check_main_theorem",
      [](const std::string& tree_json, double k_bound, int n_start, double delta) {
        const RadialTreeSpec spec = tree_from_json(Json::parse(tree_json));
        return dump(to_json(check_main_theorem(spec, k_bound, n_start, delta)));
      },
      py::arg("tree_json"), py::arg("K") = 30.0, py::arg("N") = 0,
      py::arg("delta") = 1e-12);

  m.def("example_two_generation_tree",
        [](double r) { return dump(to_json(example_two_generation_tree(r))); },
        py::arg("r") = 0.6);
  m.def("example_sparse_free_tree",
        [](int n) { return dump(to_json(example_sparse_free_tree(n))); },
        py::arg("n_generations") = 10);
  m.def(
      "reproduce_example",
      [](double r) {
        const ReproduceReport rep = reproduce_example(r);
        py::dict d;
        d["pass"] = rep.pass();
        d["max_phase_mismatch"] = rep.max_phase_mismatch;
        d["max_free_reduction_residual"] = rep.max_free_reduction_residual;
        d["direct_count"] = rep.direct_count;
        d["decomposed_count"] = rep.decomposed_count;
        d["max_eigenvalue_mismatch"] = rep.max_eigenvalue_mismatch;
        return d;
      },
      py::arg("r") = 0.6);
}
