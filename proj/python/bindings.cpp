#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "evlab/coloured.hpp"
#include "evlab/drift.hpp"
#include "evlab/experiments.hpp"
#include "evlab/io.hpp"
#include "evlab/kernel.hpp"
#include "evlab/lyapunov.hpp"
#include "evlab/render.hpp"

namespace py = pybind11;
using namespace evlab;

namespace {

// Rationals cross the boundary as fractions.Fraction.
py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(q.get_num().get_str())), py::int_(py::str(q.get_den().get_str())));
}

Rational from_python(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }

Configuration coerce(const py::handle& x) {
  if (py::isinstance<Configuration>(x)) return x.cast<Configuration>();
  if (py::isinstance<py::str>(x)) return parse_configuration(x.cast<std::string>());
  return Configuration::from_blocks(x.cast<std::vector<std::int64_t>>());
}

}  // namespace

PYBIND11_MODULE(_evlab, m) {
  m.doc() = "Mixed voter/exclusion shock dynamics: exact laws, functionals and simulation";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Configuration>(m, "Configuration")
      .def(py::init<>())
      .def(py::init([](const py::object& x) { return coerce(x); }), py::arg("blocks_or_word"))
      .def_property_readonly("blocks", [](const Configuration& s) {
        return std::vector<std::int64_t>(s.blocks().begin(), s.blocks().end());
      })
      .def_property_readonly("size", &Configuration::size)
      .def_property_readonly("block_pairs", &Configuration::block_pairs)
      .def_property_readonly("pair_count", &Configuration::pair_count)
      .def("is_ground", &Configuration::is_ground)
      .def("word", &Configuration::word)
      .def("render", &Configuration::render)
      .def("__eq__", [](const Configuration& a, const Configuration& b) { return a == b; })
      .def("__hash__", [](const Configuration& s) { return s.hash(); })
      .def("__repr__", [](const Configuration& s) { return "Configuration((" + s.blocks_csv() + "))"; });

  m.def("enumerate_configurations", &enumerate_configurations, py::arg("max_size"));

  m.def("f1", [](const py::object& s) { return f1(coerce(s)); });
  m.def("f2", [](const py::object& s) { return to_fraction(f2(coerce(s))); });
  m.def("rho2", [](const py::object& s) { return rho2(coerce(s)); });
  m.def("phi", [](const py::object& s, double alpha) { return phi(coerce(s), alpha); }, py::arg("s"), py::arg("alpha"));
  m.def("g_rect", [](const py::object& s) {
    const auto w = g_rect(coerce(s));
    return py::dict(py::arg("K") = w.K, py::arg("X") = w.X, py::arg("Y") = w.Y, py::arg("g") = w.g);
  });
  m.def("audit", [](const py::object& s) {
    py::dict out;
    for (const auto& c : inequality_audit(coerce(s)).clauses) out[py::str(c.id)] = c.pass;
    return out;
  });

  m.def(
      "step_distribution",
      [](const py::object& s, const py::object& beta, const py::object& p) {
        py::list out;
        for (const auto& e : step_distribution(coerce(s), ExactParams{from_python(beta), from_python(p)}).entries) {
          out.append(py::make_tuple(e.successor, to_fraction(e.probability)));
        }
        return out;
      },
      py::arg("s"), py::arg("beta"), py::arg("p"));

  m.def(
      "drift",
      [](const py::object& s, const py::object& beta, const py::object& p, const std::string& functional) {
        const ExactParams q{from_python(beta), from_python(p)};
        const auto spec = FunctionalSpec::parse(functional);
        const auto c = coerce(s);
        switch (spec.kind) {
          case DriftFunctional::kF1: return to_fraction(drift_f1_formula(c, q));
          case DriftFunctional::kF2: return to_fraction(drift_f2_formula(c, q));
          case DriftFunctional::kPhi:
            if (spec.alpha == std::floor(spec.alpha)) return to_fraction(drift_phi_formula_exact(c, q, static_cast<int>(spec.alpha)));
            return py::object(py::float_(drift_phi_formula(c, to_float(q), spec.alpha)));
        }
        throw std::logic_error("unreachable");
      },
      py::arg("s"), py::arg("beta"), py::arg("p"), py::arg("functional"));

  m.def(
      "tau_samples",
      [](const py::object& s0, double beta, double p, std::int64_t cap, std::int64_t replicas, std::uint64_t seed,
         int threads) {
        const auto start = coerce(s0);
        std::vector<TauSample> xs;
        {
          py::gil_scoped_release release;
          xs = tau_experiment(start, Params{beta, p}, cap, replicas, seed, resolve_threads(threads));
        }
        py::list out;
        for (const auto& x : xs) out.append(x.tau ? py::object(py::int_(*x.tau)) : py::object(py::none()));
        return out;
      },
      py::arg("s0"), py::arg("beta"), py::arg("p"), py::arg("cap"), py::arg("replicas"), py::arg("seed") = 0,
      py::arg("threads") = 0);

  m.def(
      "initial_chi", [](const py::object& s0) { return initial_colouring(coerce(s0)).chi(); }, py::arg("s0"));

  m.def(
      "render_svg",
      [](const py::object& s, bool highlight) { return render_staircase_svg(coerce(s), RenderOptions{highlight, 0.0}); },
      py::arg("s"), py::arg("highlight_rect") = false);
}
