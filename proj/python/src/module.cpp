// Python bindings. Reports cross the boundary as JSON and come back as dicts.

#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rzlab/io.hpp"
#include "rzlab/quaternion.hpp"

namespace py = pybind11;
using namespace rzlab;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
Json from_py(const py::object& o) { return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

using ExtPtr = std::shared_ptr<const Extension>;

struct PyField {
  ExtPtr ext;
};

// A lattice keeps its extension alive.
struct PyLattice {
  ExtPtr ext;
  Lattice lat;
};

PyField make_field(int f, int e, const std::string& ext, int vt, int precision) {
  return {FieldSpec::shorthand(f, e, ext_kind_from_string(ext), vt, precision).build()};
}

FiberGraph ball(const PyField& F, int radius, int jobs) {
  const ExtPtr& E = F.ext;
  if (E->field().precision() < required_precision(*E, radius))
    throw PrecisionExhausted("radius " + std::to_string(radius) + " needs precision " +
                             std::to_string(required_precision(*E, radius)));
  return build_ball(default_base_line(*E), radius, jobs);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hermitian lattices, neighbor counts and fiber graphs over ramified 2-adic extensions";

  // rzlab.Error carries "Kind: message", Kind being the library's error name.
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&]() { return py::exception<Error>(m, "Error", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& err) {
      py::set_error(error_type.get_stored(), (err.kind() + ": " + err.what()).c_str());
    }
  });

  py::class_<PyField>(m, "Field", "A quadratic extension E of a 2-adic field F")
      .def(py::init(&make_field), py::arg("f") = 1, py::arg("e") = 1, py::arg("ext") = "RP", py::arg("vt") = 1,
           py::arg("precision") = kDefaultPrecision)
      .def_static(
          "from_json", [](const py::object& d) { return PyField{FieldSpec::from_json(from_py(d)).build()}; }, py::arg("spec"))
      .def_property_readonly("q", [](const PyField& F) { return F.ext->q(); })
      .def_property_readonly("e", [](const PyField& F) { return F.ext->e(); })
      .def_property_readonly("f", [](const PyField& F) { return F.ext->field().f(); })
      .def_property_readonly("kind", [](const PyField& F) { return to_string(F.ext->kind()); })
      .def_property_readonly("vt", [](const PyField& F) -> std::optional<int> {
        if (F.ext->kind() != ExtKind::RU) return std::nullopt;
        return F.ext->vt();
      })
      .def_property_readonly("precision", [](const PyField& F) { return F.ext->field().precision(); })
      .def("describe", [](const PyField& F) { return to_py(describe_field(*F.ext)); })
      .def(
          "lattice", [](const PyField& F, const py::object& d) { return PyLattice{F.ext, lattice_from_json(*F.ext, from_py(d))}; },
          py::arg("spec"))
      .def(
          "witness",
          [](const PyField& F, int i, std::optional<int> ell) { return PyLattice{F.ext, witness_lattice(*F.ext, i, ell)}; },
          py::arg("i"), py::arg("ell") = py::none(), "Pi^i-modular lattice of norm pi_0^ell; None gives the hyperbolic one")
      .def("standard", [](const PyField& F) { return PyLattice{F.ext, Lattice::standard(*F.ext)}; })
      .def("__repr__", [](const PyField& F) {
        std::ostringstream os;
        os << "Field(f=" << F.ext->field().f() << ", e=" << F.ext->e() << ", ext=" << to_string(F.ext->kind());
        if (F.ext->kind() == ExtKind::RU) os << ", vt=" << F.ext->vt();
        os << ")";
        return os.str();
      });

  py::class_<PyLattice>(m, "Lattice")
      .def_property_readonly("key", [](const PyLattice& L) { return L.lat.key().to_string(); })
      .def_property_readonly("modularity", [](const PyLattice& L) { return modularity(L.lat); })
      .def_property_readonly("norm_exponent", [](const PyLattice& L) { return norm_exponent(L.lat); })
      .def("classify", [](const PyLattice& L) { return to_py(classify_lattice(L.lat)); })
      .def("to_json", [](const PyLattice& L) { return to_py(lattice_to_json(L.lat)); })
      .def(
          "neighbors",
          [](const PyLattice& L, int from_i, int to_i) {
            py::list out;
            for (const auto& n : modular_neighbors(L.lat, from_i, to_i).neighbors) out.append(PyLattice{L.ext, n});
            return out;
          },
          py::arg("from_i"), py::arg("to_i"))
      .def(
          "neighbor_report", [](const PyLattice& L, int from_i, int to_i) { return to_py(neighbors_json(L.lat, from_i, to_i)); },
          py::arg("from_i"), py::arg("to_i"))
      .def("isotropic_lines", [](const PyLattice& L) { return isotropic_line_count(L.lat); })
      .def("__eq__", [](const PyLattice& a, const PyLattice& b) { return a.lat == b.lat; })
      .def("__hash__", [](const PyLattice& L) { return py::hash(py::str(L.lat.key().to_string())); })
      .def("__repr__", [](const PyLattice& L) { return "Lattice('" + L.lat.key().to_string() + "')"; });

  m.def(
      "verify_props",
      [](const PyField& F, int samples, std::uint64_t seed) {
        Json j = props_json(verify_neighbor_props(*F.ext));
        const WalkReport w = sample_neighbor_walks(*F.ext, samples, seed);
        j["walks"] = walks_json(w);
        j["pass"] = j["pass"].get<bool>() && w.pass();
        return to_py(j);
      },
      py::arg("field"), py::arg("samples") = 20, py::arg("seed") = 1);
  m.def(
      "quat_check", [](const PyField& F, int digits) { return to_py(quat_check(F.ext, digits)); }, py::arg("field"),
      py::arg("digits") = 16);
  m.def(
      "deform_tangent", [](const PyField& F) { return to_py(tangent_json(*F.ext)); }, py::arg("field"));
  m.def(
      "graph_build",
      [](const PyField& F, int radius, const std::string& format, int jobs) {
        if (format != "json" && format != "dot") throw FormatError("format must be json or dot");
        const FiberGraph g = ball(F, radius, jobs);
        std::ostringstream os;
        format == "dot" ? write_dot(os, g) : write_json(os, g);
        return os.str();
      },
      py::arg("field"), py::arg("radius") = 1, py::arg("format") = "json", py::arg("jobs") = 1);
  m.def(
      "graph_stats", [](const PyField& F, int radius, int jobs) { return to_py(stats_json(ball(F, radius, jobs))); },
      py::arg("field"), py::arg("radius") = 1, py::arg("jobs") = 1);
  m.def("required_precision", [](const PyField& F, int radius) { return required_precision(*F.ext, radius); });
}
