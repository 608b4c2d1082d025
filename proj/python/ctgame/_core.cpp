#include "ctg/church.hpp"
#include "ctg/effectivity.hpp"
#include "ctg/program.hpp"
#include "ctg/suite.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace ctg;

namespace {

py::int_ to_py(const Nat& n) {
  const std::string s = n.str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}
Nat from_py(const py::int_& v) {
  const std::string s = py::str(py::handle(v));
  return Nat(s);
}

InterpConfig cfg(std::size_t depth, std::size_t budget, std::uint64_t fuel) { return {depth, budget, fuel}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the ctgame library";
  // Translators are tried newest first: the base class goes first.
  py::register_exception<CtgError>(m, "CtgError", PyExc_RuntimeError);
  py::register_exception<IllTyped>(m, "IllTypedError", PyExc_ValueError);
  py::register_exception<SyntaxError>(m, "SyntaxError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  const auto d = py::arg("depth") = Defaults::depth;
  const auto b = py::arg("budget") = Defaults::budget;
  const auto f = py::arg("fuel") = Defaults::fuel;

  m.def(
      "check",
      [](const std::string& src) {
        Program p(src);
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& def : p.defs()) out.emplace_back(def.name, print(p.derive(def.name)->concl.ty));
        return out;
      },
      py::arg("source"), "Derive every definition; returns (name, type) pairs.");

  m.def(
      "eval_nat",
      [](const std::string& src, std::optional<std::string> name, std::size_t depth, std::size_t budget,
         std::uint64_t fuel) -> std::optional<py::int_> {
        Program p(src, cfg(depth, budget, fuel));
        if (p.defs().empty()) throw CtgError("no definitions");
        auto v = p.interp().eval_closed_nat(p.derive(name.value_or(p.defs().back().name)));
        if (!v) return std::nullopt;
        return to_py(*v);
      },
      py::arg("source"), py::arg("name") = py::none(), d, b, f, "Read back a closed numeral definition.");

  m.def(
      "equal",
      [](const std::string& src, const std::string& a, const std::string& bn, std::size_t depth, std::size_t budget) {
        Program p(src, cfg(depth, budget, Defaults::fuel));
        EqVerdict v = p.interp().judgmental_eq(p.derive(a), p.derive(bn), depth);
        return std::make_pair(v.equal, v.text());
      },
      py::arg("source"), py::arg("a"), py::arg("b"), d, b, "Depth-bounded equality of two definitions.");

  m.def(
      "derive_rules",
      [](const std::string& judgement) {
        Interpreter in;
        return in.derive(parse_judgement(judgement))->rules();
      },
      py::arg("judgement"), "Rule names of the derivation, in pre-order.");

  m.def(
      "prf_eval",
      [](const py::int_& code, const std::vector<py::int_>& args, std::uint64_t fuel) -> std::optional<py::int_> {
        std::vector<Nat> xs;
        for (const auto& a : args) xs.push_back(from_py(a));
        auto r = prf_eval(from_py(code), xs, fuel);
        if (!r.value) return std::nullopt;
        return to_py(*r.value);
      },
      py::arg("code"), py::arg("args"), f, "Run a program code; None when fuel runs out.");

  m.def(
      "run_suite",
      [](const std::string& filter) {
        SuiteOptions o;
        o.only = parse_filter(filter);
        std::vector<py::dict> out;
        for (const auto& r : ::ctg::run_suite(o)) {
          py::dict e;
          e["id"] = r.id;
          e["pass"] = r.pass;
          e["detail"] = r.detail;
          e["millis"] = r.millis;
          out.push_back(e);
        }
        return out;
      },
      py::arg("filter") = "", "Run acceptance criteria (comma-separated ids, empty for all).");

  m.def(
      "ct_report",
      [](std::size_t max_n) {
        CtReport r = validate_ct(ct_samples(), max_n);
        return std::make_pair(r.ok(), r.text());
      },
      py::arg("max_n") = 10, "Church's thesis validation on the sample functions.");
}
