#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ordlab/cli.hpp"
#include "ordlab/descent.hpp"
#include "ordlab/dickson.hpp"
#include "ordlab/formula.hpp"
#include "ordlab/hierarchies.hpp"
#include "ordlab/json_io.hpp"
#include "ordlab/ordinal.hpp"

namespace py = pybind11;
using namespace ordlab;

namespace {

py::int_ to_py(const Natural& n) { return py::int_(py::str(n.str())); }

std::vector<Monomial> to_monomials(const std::vector<std::vector<std::uint64_t>>& vs) {
  std::vector<Monomial> out;
  for (const auto& v : vs) out.push_back(Monomial{v});
  return out;
}

std::vector<std::vector<std::uint64_t>> from_monomials(const std::vector<Monomial>& ms) {
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& m : ms) out.push_back(m.exponents);
  return out;
}

}  // namespace

// Structured results cross the boundary as JSON text; the Python package
// decodes them.
PYBIND11_MODULE(_core, m) {
  m.doc() = "Ordinal notations, termination witnesses, Dickson ranks and bounded arithmetic";

  py::register_exception<Error>(m, "OrdlabError", PyExc_ValueError);

  py::class_<Ordinal>(m, "Ordinal")
      .def(py::init([](const std::string& text) { return parse_cnf(text); }), py::arg("text") = "0")
      .def(py::init([](std::uint64_t n) { return Ordinal(n); }))
      .def_static("omega", &Ordinal::omega)
      .def("__str__", [](const Ordinal& a) { return render(a); })
      .def("__repr__", [](const Ordinal& a) { return "Ordinal('" + render(a) + "')"; })
      .def("__add__", [](const Ordinal& a, const Ordinal& b) { return add(a, b); })
      .def("__mul__", [](const Ordinal& a, const Ordinal& b) { return mul(a, b); })
      .def("__eq__", [](const Ordinal& a, const Ordinal& b) { return a == b; })
      .def("__lt__", [](const Ordinal& a, const Ordinal& b) { return a < b; })
      .def("__le__", [](const Ordinal& a, const Ordinal& b) { return a <= b; })
      .def("__gt__", [](const Ordinal& a, const Ordinal& b) { return a > b; })
      .def("__ge__", [](const Ordinal& a, const Ordinal& b) { return a >= b; })
      .def("__hash__", [](const Ordinal& a) { return std::hash<std::string>{}(render(a)); })
      .def_property_readonly("kind",
                             [](const Ordinal& a) {
                               switch (kind(a)) {
                                 case OrdinalKind::Zero: return "zero";
                                 case OrdinalKind::Successor: return "successor";
                                 default: return "limit";
                               }
                             })
      .def_property_readonly("norm", [](const Ordinal& a) { return to_py(norm(a)); })
      .def("predecessor", &predecessor)
      .def("fundamental", [](const Ordinal& a, std::uint64_t n) { return fundamental(a, n); });

  m.def("omega_pow", &omega_pow);
  m.def("omega_tower", &omega_tower);
  m.def("enumerate_below", &enumerate_below, py::arg("bound"), py::arg("max_norm"));

  m.def(
      "_walk",
      [](const Ordinal& start, std::uint64_t step) { return to_json(canonical_walk_constant(start, step)).dump(); },
      py::arg("start"), py::arg("step"));
  m.def(
      "check_strict_descent",
      [](const std::vector<Ordinal>& seq, const Ordinal& bound) { return check_strict_descent(seq, bound).valid(); },
      py::arg("seq"), py::arg("bound"));

  m.def(
      "ackermann", [](std::uint64_t a, std::uint64_t b) { return ackermann(a, b); }, py::arg("m"), py::arg("n"));
  m.def("ackermann_measure", &ackermann_measure, py::arg("m"), py::arg("n"));
  m.def(
      "_ackermann_traced", [](std::uint64_t a, std::uint64_t b) { return to_json(ackermann_traced(a, b)).dump(); },
      py::arg("m"), py::arg("n"));
  m.def("_validate_trace", [](const std::string& text) {
    const auto verdict = validate_trace(call_tree_from_json(Json::parse(text)));
    return verdict_name(verdict);
  });
  m.def(
      "hardy", [](const Ordinal& a, std::uint64_t n) { return hardy(a, n); }, py::arg("alpha"), py::arg("n"));
  m.def(
      "fast_growing", [](std::uint64_t k, std::uint64_t n) { return fast_growing(k, n); }, py::arg("k"), py::arg("n"));

  m.def("minimal_basis",
        [](const std::vector<std::vector<std::uint64_t>>& vs) { return from_monomials(minimal_basis(to_monomials(vs))); });
  m.def(
      "residual_order_type",
      [](const std::vector<std::vector<std::uint64_t>>& vs, std::size_t k) {
        return residual_order_type(to_monomials(vs), k);
      },
      py::arg("minimal"), py::arg("k"));
  m.def(
      "rank_bad_sequence",
      [](const std::vector<std::vector<std::uint64_t>>& vs, std::size_t k) {
        return rank_bad_sequence(to_monomials(vs), k);
      },
      py::arg("seq"), py::arg("k"));

  m.def(
      "render_formula", [](const std::string& text) { return render_formula(parse_formula(text)); }, py::arg("text"));
  m.def(
      "classify", [](const std::string& text) { return render_level(classify(parse_formula(text))); },
      py::arg("text"));
  m.def(
      "eval_bounded",
      [](const std::string& text, const Assignment& assignment, std::uint64_t N) {
        return eval_bounded(parse_formula(text), assignment, N);
      },
      py::arg("text"), py::arg("assignment"), py::arg("N"));
  m.def(
      "uniformize",
      [](const std::string& phi, const std::string& var) { return render_formula(uniformize(parse_formula(phi), var)); },
      py::arg("phi"), py::arg("var") = "x");
  m.def(
      "_check_uniformization",
      [](const std::string& theta, std::uint64_t X, std::uint64_t N) {
        return to_json(check_uniformization(parse_formula(theta), X, N)).dump();
      },
      py::arg("theta"), py::arg("X"), py::arg("N"));
  m.def("pair", &pair);
  m.def("proj1", &proj1);
  m.def("proj2", &proj2);

  m.def("_run_cli", [](const std::vector<std::string>& args) {
    const auto r = cli::run(args);
    return py::make_tuple(r.exit_code, r.output);
  });
}
