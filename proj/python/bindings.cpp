#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "h1pick/cli_io.hpp"
#include "h1pick/constrained_pick.hpp"
#include "h1pick/matrix_level.hpp"
#include "h1pick/metric_twopoint.hpp"

namespace py = pybind11;
using namespace h1pick;

namespace {

PyObject* error_type = nullptr;

std::vector<DiskPoint> disk_points(const std::vector<Complex>& zs) { return {zs.begin(), zs.end()}; }

py::tuple param_tuple(const KernelParam& p) { return py::make_tuple(p.r, p.theta); }

py::dict report_dict(const FeasibilityReport& r) {
    py::dict d;
    d["status"] = std::string(to_string(r.status));
    d["via"] = std::string(to_string(r.via));
    d["min_eig"] = r.min_eig;
    d["scale"] = r.scale;
    d["certified"] = r.certified;
    d["worst_param"] = r.worst_param ? py::object(param_tuple(*r.worst_param)) : py::none();
    d["witness_lambda"] = r.witness_lambda ? py::object(py::cast(r.witness_lambda->value())) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Constrained Nevanlinna-Pick interpolation (f'(0) = 0) on the unit disk";

    error_type = PyErr_NewException("h1pick._core.Error", PyExc_RuntimeError, nullptr);
    m.add_object("Error", py::handle(error_type));
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object ex = py::reinterpret_borrow<py::object>(error_type)(e.what());
            ex.attr("kind") = std::string(to_string(e.kind()));
            ex.attr("value") = e.value() ? py::object(py::float_(*e.value())) : py::none();
            PyErr_SetObject(error_type, ex.ptr());
        }
    });

    py::class_<SphereDomain>(m, "SphereDomain")
        .def(py::init([](int n_r, int n_theta, int refine_rounds, double refine_shrink, int refine_candidates,
                         int threads) {
                 SphereDomain d{n_r, n_theta, refine_rounds, refine_shrink, refine_candidates, threads};
                 d.validate();
                 return d;
             }),
             py::arg("n_r") = 64, py::arg("n_theta") = 128, py::arg("refine_rounds") = 3,
             py::arg("refine_shrink") = 0.25, py::arg("refine_candidates") = 4, py::arg("threads") = 0)
        .def_readwrite("n_r", &SphereDomain::n_r)
        .def_readwrite("n_theta", &SphereDomain::n_theta)
        .def_readwrite("refine_rounds", &SphereDomain::refine_rounds)
        .def_readwrite("refine_shrink", &SphereDomain::refine_shrink)
        .def_readwrite("refine_candidates", &SphereDomain::refine_candidates)
        .def_readwrite("threads", &SphereDomain::threads);

    m.def("kernel_eval",
          [](double r, double theta, Complex z, Complex w) { return kernel_eval(make_param(r, theta), z, w); },
          py::arg("r"), py::arg("theta"), py::arg("z"), py::arg("w"));

    m.def("family_feasibility",
          [](const std::vector<Complex>& nodes, const std::vector<Complex>& targets, double bound,
             const SphereDomain& grid) {
              return report_dict(family_feasibility(ScalarProblem(disk_points(nodes), targets), bound, grid));
          },
          py::arg("nodes"), py::arg("targets"), py::arg("bound"), py::arg("grid") = SphereDomain{});

    m.def("moebius_feasibility",
          [](const std::vector<Complex>& nodes, const std::vector<Complex>& targets, double bound,
             const SphereDomain& grid) {
              return report_dict(moebius_feasibility(ScalarProblem(disk_points(nodes), targets), bound, grid));
          },
          py::arg("nodes"), py::arg("targets"), py::arg("bound"), py::arg("grid") = SphereDomain{});

    m.def("minimal_norm",
          [](const std::vector<Complex>& nodes, const std::vector<Complex>& targets, const SphereDomain& grid) {
              const NormResult r = minimal_norm(ScalarProblem(disk_points(nodes), targets), grid);
              return py::make_tuple(r.value, param_tuple(r.param));
          },
          py::arg("nodes"), py::arg("targets"), py::arg("grid") = SphereDomain{});

    m.def("minimal_norm_zero",
          [](const std::vector<Complex>& nodes, const std::vector<Complex>& targets) {
              return minimal_norm_zero(ScalarProblem(disk_points(nodes), targets));
          },
          py::arg("nodes"), py::arg("targets"));

    py::class_<ConstrainedInterpolant>(m, "Interpolant")
        .def("__call__", [](const ConstrainedInterpolant& f, Complex z) { return f(z); }, py::arg("z"))
        .def_property_readonly("scale", [](const ConstrainedInterpolant& f) { return f.scale; })
        .def_property_readonly("lambda_", [](const ConstrainedInterpolant& f) { return f.lambda.value(); })
        .def_property_readonly("schur_chain", [](const ConstrainedInterpolant& f) {
            std::vector<std::pair<Complex, Complex>> chain;
            for (const auto& s : f.inner.steps) chain.emplace_back(s.node.value(), s.gamma);
            return chain;
        });

    m.def("solve",
          [](const std::vector<Complex>& nodes, const std::vector<Complex>& targets, double bound,
             const SphereDomain& grid) {
              const Solution s = solve(ScalarProblem(disk_points(nodes), targets), bound, grid);
              py::dict d;
              d["interpolant"] = s.interpolant;
              d["max_residual"] = s.max_residual;
              d["derivative_at_zero"] = s.derivative_at_zero;
              d["sup_norm"] = s.sup_norm.value;
              d["sup_norm_gap"] = s.sup_norm.gap_estimate;
              return d;
          },
          py::arg("nodes"), py::arg("targets"), py::arg("bound"), py::arg("grid") = SphereDomain{});

    m.def("pseudo_metric_dH", [](Complex z, Complex w) { return pseudo_metric_dH(z, w); }, py::arg("z"),
          py::arg("w"));
    m.def("constrained_metric_d1",
          [](Complex z, Complex w, const SphereDomain& grid) {
              const MetricResult r = constrained_metric_d1(z, w, grid);
              return py::make_tuple(r.value, param_tuple(r.param));
          },
          py::arg("z"), py::arg("w"), py::arg("grid") = SphereDomain{});

    m.def("dist_to_subalgebra",
          [](const std::map<int, Complex>& coefficients, int truncation, const SphereDomain& grid) {
              const DistanceEstimate d = dist_to_subalgebra(FourierFunction{coefficients}, truncation, grid);
              return py::make_tuple(d.value, d.error_estimate);
          },
          py::arg("coefficients"), py::arg("truncation") = 64, py::arg("grid") = SphereDomain{});

    m.def("two_point_representation",
          [](const ComplexMatrix& w1, const ComplexMatrix& w2, double d) {
              const TwoPointRep r = two_point_representation(w1, w2, d);
              py::dict out;
              out["b"] = r.b;
              out["matrix"] = r.matrix;
              out["norm"] = r.norm;
              out["envelope"] = std::string(to_string(r.envelope));
              return out;
          },
          py::arg("w1"), py::arg("w2"), py::arg("d"));

    m.def("minimal_matrix_norm_zero",
          [](const std::vector<Complex>& nodes, const std::vector<ComplexMatrix>& targets) {
              return minimal_matrix_norm_zero(MatrixProblem(disk_points(nodes), targets));
          },
          py::arg("nodes"), py::arg("targets"));

    m.def("phi_sup_norm",
          [](const std::vector<Complex>& nodes, const std::vector<ComplexMatrix>& targets, const SphereDomain& grid) {
              const NormResult r = phi_sup_norm(MatrixProblem(disk_points(nodes), targets), grid);
              return py::make_tuple(r.value, param_tuple(r.param));
          },
          py::arg("nodes"), py::arg("targets"), py::arg("grid") = SphereDomain{});

    m.def("counterexample_scan",
          [](const std::vector<Complex>& nodes, int k, int trials, std::uint64_t seed, const SphereDomain& grid) {
              const ScanReport rep = counterexample_scan(disk_points(nodes), k, trials, seed, grid);
              std::ostringstream csv;
              write_scan_csv(csv, rep);
              py::dict d;
              std::vector<double> gaps;
              for (const auto& r : rep.rows) gaps.push_back(r.gap);
              d["gaps"] = gaps;
              d["max_gap_trial"] = rep.rows[rep.max_gap_row].trial;
              d["min_gap"] = rep.min_gap;
              d["csv"] = csv.str();
              return d;
          },
          py::arg("nodes"), py::arg("k"), py::arg("trials"), py::arg("seed") = 0,
          py::arg("grid") = SphereDomain{});

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              const int code = run(args, out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Runs one CLI command; returns (exit_code, stdout, stderr).");
}
