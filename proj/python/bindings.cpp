#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dglakit/cli.hpp"
#include "dglakit/io.hpp"
#include "dglakit/kuranishi.hpp"

namespace py = pybind11;
using namespace dglakit;

namespace {

const DglaFixture& dgla_of(const FixtureFile& f) {
  if (f.kind() != FixtureKind::Dgla) throw Error(ErrorKind::InvalidArgument, "not a dgla fixture: " + f.name);
  return std::get<DglaFixture>(f.payload);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact DGLA deformation toolkit";
  static py::exception<Error> error(m, "DglakitError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  m.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        const CommandOutput out = run_command(args);
        return py::make_tuple(out.exit_code, out.report.dump(), out.text);
      },
      py::arg("args"));
  m.def("builtin_fixture_names", &builtin_fixture_names);
  m.def(
      "emit_fixture", [](const std::string& ref) { return dump_fixture(resolve_fixture(ref)); }, py::arg("ref"));
  m.def(
      "normalize_fixture", [](const std::string& text) { return dump_fixture(parse_fixture_text(text)); },
      py::arg("text"), "Parse, validate and re-serialize fixture JSON text.");
  m.def("fnv1a_hex", [](const std::string& s) { return fnv1a_hex(s); });
  m.def(
      "cohomology_dims",
      [](const std::string& ref) { return cohomology(dgla_of(resolve_fixture(ref)).algebra).dims; }, py::arg("ref"));
  m.def(
      "check_axioms",
      [](const std::string& ref) {
        const auto f = resolve_fixture(ref, ParseOptions{false});
        std::map<std::string, bool> out;
        for (const auto& c : check_dgla_axioms(dgla_of(f).algebra).checks) out[c.axiom] = c.passed;
        return out;
      },
      py::arg("ref"));
  m.def(
      "kuranishi",
      [](const std::string& ref, unsigned order) {
        const FixtureFile f = resolve_fixture(ref);
        const auto& d = dgla_of(f);
        const Splitting s = build_splitting(d.algebra);
        const auto series = kuranishi_series(d.algebra, s, order);
        std::vector<std::string> out;
        for (const auto& p : series.components) out.push_back(p.to_string(series.ring.variables));
        return out;
      },
      py::arg("ref"), py::arg("order"));
}
