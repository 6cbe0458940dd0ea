#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "qolct/corpus.hpp"
#include "qolct/error.hpp"
#include "qolct/fault.hpp"
#include "qolct/io.hpp"
#include "qolct/oracle.hpp"
#include "qolct/qft.hpp"
#include "qolct/qolct.hpp"
#include "qolct/uncertainty.hpp"
#include "qolct/verify.hpp"

namespace py = pybind11;
using namespace qolct;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Samples as an (n1, n2, 4) array of (q0, q1, q2, q3).
Array to_array(const QField& f) {
  const Grid2D& g = f.grid();
  Array out({g.n1, g.n2, std::size_t{4}});
  double* p = out.mutable_data();
  for (const Quaternion& q : f.samples()) {
    *p++ = q.w;
    *p++ = q.x;
    *p++ = q.y;
    *p++ = q.z;
  }
  return out;
}

QField to_field(const Array& a, const Grid2D& g) {
  if (a.ndim() != 3 || a.shape(2) != 4 || static_cast<std::size_t>(a.shape(0)) != g.n1 ||
      static_cast<std::size_t>(a.shape(1)) != g.n2) {
    throw InvalidArgument("samples must have shape (n1, n2, 4) matching the grid");
  }
  QField f(g);
  const double* p = a.data();
  for (Quaternion& q : f.samples()) {
    q = {p[0], p[1], p[2], p[3]};
    p += 4;
  }
  return f;
}

PureUnit to_axis(const std::array<double, 3>& v) { return PureUnit::from_vector(v[0], v[1], v[2]); }
std::array<double, 3> from_axis(const PureUnit& u) { return {u.q().x, u.q().y, u.q().z}; }

py::object json_to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

QolctPlan make_plan(const OffsetParams& A1, const OffsetParams& A2, const std::array<double, 3>& lambda,
                    const std::array<double, 3>& mu, const Grid2D& input) {
  return QolctPlan(A1, A2, to_axis(lambda), to_axis(mu), input);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quaternion offset linear canonical transforms";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Grid2D>(m, "Grid")
      .def(py::init([](std::size_t n1, std::size_t n2, double c1, double c2, double h1, double h2) {
             Grid2D g{n1, n2, c1, c2, h1, h2};
             g.validate();
             return g;
           }),
           py::arg("n1"), py::arg("n2"), py::arg("center1") = 0.0, py::arg("center2") = 0.0, py::arg("spacing1") = 1.0,
           py::arg("spacing2") = 1.0)
      .def_static("centered", py::overload_cast<std::size_t, double>(&Grid2D::centered), py::arg("n"), py::arg("extent"))
      .def_readonly("n1", &Grid2D::n1)
      .def_readonly("n2", &Grid2D::n2)
      .def_readonly("center1", &Grid2D::center1)
      .def_readonly("center2", &Grid2D::center2)
      .def_readonly("spacing1", &Grid2D::spacing1)
      .def_readonly("spacing2", &Grid2D::spacing2)
      .def("t1", &Grid2D::t1)
      .def("t2", &Grid2D::t2)
      .def("__eq__", [](const Grid2D& a, const Grid2D& b) { return a == b; })
      .def("__repr__", [](const Grid2D& g) {
        return "Grid(n1=" + std::to_string(g.n1) + ", n2=" + std::to_string(g.n2) + ", center1=" + std::to_string(g.center1) +
               ", center2=" + std::to_string(g.center2) + ", spacing1=" + std::to_string(g.spacing1) +
               ", spacing2=" + std::to_string(g.spacing2) + ")";
      });

  py::class_<OffsetParams>(m, "OffsetParams")
      .def(py::init(&OffsetParams::make), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("tau") = 0.0,
           py::arg("eta") = 0.0, py::arg("tol") = 1e-12)
      .def_static("qft_case", &OffsetParams::qft_case)
      .def_readonly("a", &OffsetParams::a)
      .def_readonly("b", &OffsetParams::b)
      .def_readonly("c", &OffsetParams::c)
      .def_readonly("d", &OffsetParams::d)
      .def_readonly("tau", &OffsetParams::tau)
      .def_readonly("eta", &OffsetParams::eta);

  py::class_<QolctPlan>(m, "Plan")
      .def(py::init(&make_plan), py::arg("A1"), py::arg("A2"), py::arg("lam") = std::array<double, 3>{1, 0, 0},
           py::arg("mu") = std::array<double, 3>{0, 1, 0}, py::arg("grid"))
      .def_property_readonly("input", &QolctPlan::input)
      .def_property_readonly("output", &QolctPlan::output)
      .def_property_readonly("lam", [](const QolctPlan& p) { return from_axis(p.lambda()); })
      .def_property_readonly("mu", [](const QolctPlan& p) { return from_axis(p.mu()); });

  m.def("forward", [](const Array& f, const QolctPlan& plan) { return to_array(qolct_forward(to_field(f, plan.input()), plan)); },
        py::arg("samples"), py::arg("plan"), "Transform samples on plan.input onto plan.output.");
  m.def("direct", [](const Array& f, const QolctPlan& plan) { return to_array(qolct_direct(to_field(f, plan.input()), plan)); },
        py::arg("samples"), py::arg("plan"), "Kernel quadrature reference for forward.");
  m.def("inverse",
        [](const Array& s, const QolctPlan& plan) { return to_array(qolct_inverse(to_field(s, plan.output()), plan)); },
        py::arg("spectrum"), py::arg("plan"));
  m.def(
      "quartet_norm",
      [](const Array& f, const QolctPlan& plan) { return quartet_l2_norm(qolct_quartet(to_field(f, plan.input()), plan)); },
      py::arg("samples"), py::arg("plan"), "L2 norm of the component quartet of the transform.");
  m.def("l2_norm", [](const Array& f, const Grid2D& g) { return l2_norm(to_field(f, g)); }, py::arg("samples"),
        py::arg("grid"));

  m.def(
      "qft",
      [](const Array& f, const Grid2D& g, const std::array<double, 3>& lambda, const std::array<double, 3>& mu) {
        const QftPlan plan = QftPlan::forward(g, to_axis(lambda), to_axis(mu));
        return py::make_tuple(to_array(qft(to_field(f, g), plan)), plan.output());
      },
      py::arg("samples"), py::arg("grid"), py::arg("lam") = std::array<double, 3>{1, 0, 0},
      py::arg("mu") = std::array<double, 3>{0, 1, 0}, "Two-sided QFT; returns (spectrum, spectrum grid).");

  m.def(
      "gaussian",
      [](const Grid2D& g, double alpha1, double alpha2, const std::array<double, 4>& beta, const std::array<double, 3>& lambda,
         const std::array<double, 3>& mu, double gamma) {
        const GaussianAmplitude b{beta[0], beta[1], beta[2], beta[3]};
        return to_array(chirped_gaussian(g, alpha1, alpha2, b, to_axis(lambda), to_axis(mu), gamma));
      },
      py::arg("grid"), py::arg("alpha1") = 0.5, py::arg("alpha2") = 0.5,
      py::arg("beta") = std::array<double, 4>{1, 0, 1, 0}, py::arg("lam") = std::array<double, 3>{1, 0, 0},
      py::arg("mu") = std::array<double, 3>{0, 1, 0}, py::arg("gamma") = 0.0);
  m.def(
      "gaussian_closed_form",
      [](const QolctPlan& plan, double alpha1, double alpha2, const std::array<double, 4>& beta) {
        const GaussianSpec spec{alpha1, alpha2, {beta[0], beta[1], beta[2], beta[3]}};
        return to_array(
            gaussian_qolct_closed_form(spec, plan.A1(), plan.A2(), plan.lambda(), plan.mu(), plan.output()));
      },
      py::arg("plan"), py::arg("alpha1") = 0.5, py::arg("alpha2") = 0.5,
      py::arg("beta") = std::array<double, 4>{1, 0, 1, 0}, "Closed-form transform of gaussian() with gamma = 0.");

  m.def(
      "read_signal",
      [](const std::string& path) {
        const QField f = io::read_signal(path);
        return py::make_tuple(to_array(f), f.grid());
      },
      py::arg("path"), "Returns (samples, grid).");
  m.def("write_signal", [](const std::string& path, const Array& f, const Grid2D& g) { io::write_signal(path, to_field(f, g)); },
        py::arg("path"), py::arg("samples"), py::arg("grid"));

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, const std::string& fault) {
        const auto s = verify::parse_suite(suite);
        if (!s) throw InvalidArgument("unknown suite '" + suite + "'");
        const auto f = fault::parse(fault);
        if (!f) throw InvalidArgument("unknown fault '" + fault + "'");
        std::vector<verify::Check> checks;
        {
          py::gil_scoped_release release;
          fault::Scoped scoped(*f);
          checks = verify::run(*s, seed);
        }
        return json_to_py(verify::to_json(checks));
      },
      py::arg("suite") = "all", py::arg("seed") = 42, py::arg("fault") = "none",
      "List of {check, params, observed, tolerance, pass} dicts.");

  m.def(
      "pitt",
      [](const Array& f, const QolctPlan& plan, double alpha) {
        const PittReport r = pitt_check(to_field(f, plan.input()), plan, alpha);
        return py::dict(py::arg("alpha") = alpha, py::arg("C") = r.constants.C, py::arg("D") = r.constants.D,
                        py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("slack") = r.slack);
      },
      py::arg("samples"), py::arg("plan"), py::arg("alpha"));
  m.def(
      "log_up",
      [](const Array& f, const QolctPlan& plan) {
        const LogUpReport r = log_up_check(to_field(f, plan.input()), plan);
        return py::dict(py::arg("A") = r.constant, py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("slack") = r.slack,
                        py::arg("energy") = r.energy);
      },
      py::arg("samples"), py::arg("plan"));
  m.def(
      "heisenberg",
      [](const Array& f, const QolctPlan& plan, int axis) {
        if (axis != 1 && axis != 2) throw InvalidArgument("axis must be 1 or 2");
        const HeisenbergReport r = heisenberg_report(to_field(f, plan.input()), plan, static_cast<GridAxis>(axis));
        return py::dict(py::arg("lhs") = r.lhs, py::arg("rhs") = r.rhs, py::arg("base_bound") = r.base_bound,
                        py::arg("cov") = r.cov, py::arg("gap") = r.gap, py::arg("gap_modulus") = r.gap_modulus);
      },
      py::arg("samples"), py::arg("plan"), py::arg("axis") = 1);
  m.def("log_up_constant", &log_up_constant);
}
