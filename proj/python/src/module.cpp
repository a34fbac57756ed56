#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "arl/limits.hpp"
#include "arl/tower_file.hpp"
#include "arl/upsilon.hpp"
#include "arl/verify.hpp"

namespace py = pybind11;
using namespace arl;

namespace {

py::int_ to_py(const Integer& x) { return py::int_(py::str(x.get_str())); }

std::vector<py::int_> factors(const FinAbGroup& G) {
  std::vector<py::int_> out;
  for (const Integer& d : G.invariant_factors()) out.push_back(to_py(d));
  return out;
}

py::dict tower_info(const Tower& T, std::size_t levels) {
  py::dict d;
  d["prime"] = py::int_(T.prime());
  py::list ls;
  const Tower E = T.extended(levels);
  for (std::size_t n = 0; n < std::min(levels, E.size()); ++n) ls.append(factors(E.level(n)));
  d["levels"] = ls;
  d["l_adic"] = std::string(to_string(is_l_adic(T).verdict));
  return d;
}

}  // namespace

PYBIND11_MODULE(_arl, m) {
  m.doc() = "Exact computations with l-adic systems up to Artin-Rees equivalence";

  static py::exception<Error> arl_error(m, "ArlError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = arl_error;
      py::object inst = exc(std::string(e.what()));
      inst.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(arl_error.ptr(), inst.ptr());
    }
  });

  py::class_<HyperNat>(m, "HyperNat")
      .def(py::init<long>())
      .def_static("parse", &HyperNat::parse)
      .def_static("symbol", &HyperNat::symbol)
      .def_property_readonly("is_infinite", &HyperNat::is_infinite)
      .def("__add__", &hn_add)
      .def("__sub__", &hn_sub)
      .def("compare", [](const HyperNat& a, const HyperNat& b) { return to_string(hn_compare(a, b)); })
      .def("__eq__", [](const HyperNat& a, const HyperNat& b) { return a == b; })
      .def("__str__", &HyperNat::to_string)
      .def("__repr__", [](const HyperNat& a) { return "HyperNat('" + a.to_string() + "')"; });

  py::class_<ZlModule>(m, "ZlModule")
      .def(py::init([](unsigned long l, std::vector<unsigned long> torsion, std::size_t rank) {
             return ZlModule(Prime(l), std::move(torsion), rank);
           }),
           py::arg("l"), py::arg("torsion") = std::vector<unsigned long>{}, py::arg("rank") = 0)
      .def_static("parse", [](const std::string& text, unsigned long l) { return ZlModule::parse(text, Prime(l)); })
      .def_property_readonly("prime", [](const ZlModule& M) { return py::int_(M.prime()); })
      .def_property_readonly("torsion", &ZlModule::torsion)
      .def_property_readonly("rank", &ZlModule::free_rank)
      .def_property_readonly("is_torsion_free", &ZlModule::is_torsion_free)
      .def("level", [](const ZlModule& M, std::size_t n) { return factors(M.level(n)); })
      .def("__eq__", [](const ZlModule& a, const ZlModule& b) { return a == b; })
      .def("__str__", &ZlModule::to_string)
      .def("__repr__", [](const ZlModule& M) { return "ZlModule('" + M.to_string() + "')"; });

  py::class_<Tower>(m, "Tower")
      .def_property_readonly("prime", [](const Tower& T) { return py::int_(T.prime()); })
      .def("level", [](const Tower& T, std::size_t n) { return factors(T.extended(n + 1).level(n)); })
      .def("describe", &tower_info, py::arg("levels") = 8)
      .def("is_l_adic", [](const Tower& T) { return std::string(to_string(is_l_adic(T).verdict)); })
      .def("is_zero_system",
           [](const Tower& T, std::size_t bound) { return std::string(to_string(is_zero_system(T, bound).verdict)); },
           py::arg("bound") = 8)
      .def("__str__", &Tower::to_string);

  m.def("to_tower", &to_tower, py::arg("module"), py::arg("levels") = 8);
  m.def("limit", [](const Tower& T) { return limit(T); });
  m.def("tensor_zl", [](const Tower& T, const std::string& h, std::size_t bound) {
    return tensor_zl(upsilon(T, HyperNat::parse(h), bound));
  }, py::arg("tower"), py::arg("h") = "h", py::arg("bound") = 8);

  m.def("load_tower_file", [](const std::string& path) {
    const TowerFile f = load_tower_file(path);
    py::dict out;
    for (const auto& name : f.order) out[py::str(name)] = f.tower(name);
    return out;
  });
  m.def("parse_tower_file", [](const std::string& text) {
    const TowerFile f = parse_tower_file(text);
    py::dict out;
    for (const auto& name : f.order) out[py::str(name)] = f.tower(name);
    return out;
  });

  m.def(
      "upsilon",
      [](const Tower& T, const std::string& h, std::size_t bound, std::size_t quotients) {
        const UpsilonObj U = upsilon(T, HyperNat::parse(h), bound);
        py::dict d;
        d["marker"] = U.marker.to_string();
        d["index"] = U.index.to_string();
        d["ml_bound"] = U.ml_bound;
        d["r"] = U.r;
        py::list qs;
        for (std::size_t k = 0; k <= quotients; ++k) qs.append(factors(U.quotient(k)));
        d["quotients"] = qs;
        return d;
      },
      py::arg("tower"), py::arg("h") = "h", py::arg("bound") = 8, py::arg("quotients") = 4);

  m.def(
      "verify",
      [](const std::string& suite, std::uint64_t seed, std::size_t cases, unsigned threads) {
        SuiteReport r;
        {
          py::gil_scoped_release release;
          r = run_suite(suite, seed, cases, threads);
        }
        py::dict d;
        d["passed"] = r.passed;
        d["failed"] = r.failed;
        d["unknown"] = r.unknown;
        d["report"] = render_report(r);
        return d;
      },
      py::arg("suite"), py::arg("seed") = 0, py::arg("cases") = 20, py::arg("threads") = 1);
  m.def("replay", [](const std::string& text) {
    const ReplayOutcome o = replay_report(text);
    return py::make_tuple(o.ok(), o.checked, o.mismatched);
  });
  m.def("suites", &suite_names);
}
