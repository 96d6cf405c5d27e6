#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amenlab/experiment.hpp"
#include "amenlab/projective_lp.hpp"

namespace py = pybind11;
using namespace amenlab;

namespace {

// pybind11 holders cannot carry pointers to const, so the handles are boxed.
struct PyAlgebra {
  AlgebraHandle handle;
};
struct PySpace {
  SpaceHandle handle;
};

ScalarField field_arg(const std::string& name) { return parse_scalar_field(name); }

AlgebraElement element(const PyAlgebra& alg, const Vector& coeffs) { return {alg.handle, coeffs}; }

DecomposedTensor make_tensor(const PyAlgebra& left, const PyAlgebra& right,
                             const std::vector<std::pair<Vector, Vector>>& terms) {
  DecomposedTensor u(left.handle, right.handle);
  for (const auto& [a, b] : terms) u.add_term(element(left, a), element(right, b));
  return u;
}

py::list tensor_terms(const DecomposedTensor& u) {
  py::list out;
  for (const auto& t : u.terms()) out.append(py::make_tuple(t.left.coeffs(), t.right.coeffs()));
  return out;
}

py::dict certificate_dict(const DiagonalCertificate& cert) {
  return py::module_::import("json").attr("loads")(io::certificate_to_json(cert).dump());
}

}  // namespace

PYBIND11_MODULE(_amenlab, m) {
  m.doc() = "Finite-dimensional Banach algebras, projective tensor norms and approximate diagonals";

  static py::exception<Error> base_error(m, "AmenlabError");
  static py::exception<PreconditionViolation> precondition(m, "PreconditionViolation", base_error.ptr());
  static py::exception<UnsupportedInstance> unsupported(m, "UnsupportedInstance", base_error.ptr());
  static py::exception<io::SpecError> spec_error(m, "SpecError", base_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const PreconditionViolation& e) {
      py::set_error(precondition, e.what());
    } catch (const UnsupportedInstance& e) {
      py::set_error(unsupported, e.what());
    } catch (const io::SpecError& e) {
      py::set_error(spec_error, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  py::class_<PySpace>(m, "Space")
      .def_property_readonly("size", [](const PySpace& s) { return s.handle->size(); })
      .def("distance", [](const PySpace& s, std::size_t i, std::size_t j) { return s.handle->distance(i, j); })
      .def("__repr__", [](const PySpace& s) { return "<Space with " + std::to_string(s.handle->size()) + " points>"; });

  m.def("grid_space", [](std::size_t n, double spacing) { return PySpace{make_grid_space(n, spacing)}; },
        py::arg("n"), py::arg("spacing"));
  m.def("metric_space",
        [](std::vector<std::string> labels, const RealMatrix& dist) {
          return PySpace{make_metric_space(std::move(labels), dist)};
        },
        py::arg("labels"), py::arg("dist"));

  py::class_<PyAlgebra>(m, "Algebra")
      .def_property_readonly("dim", [](const PyAlgebra& a) { return a.handle->dim(); })
      .def_property_readonly("field", [](const PyAlgebra& a) { return to_string(a.handle->field()); })
      .def_property_readonly("descriptor", [](const PyAlgebra& a) { return a.handle->descriptor(); })
      .def_property_readonly("is_commutative", [](const PyAlgebra& a) { return a.handle->is_commutative(); })
      .def_property_readonly("unit", [](const PyAlgebra& a) { return a.handle->unit(); })
      .def("norm", [](const PyAlgebra& a, const Vector& x) { return norm(element(a, x)); }, py::arg("coeffs"))
      .def("multiply", [](const PyAlgebra& a, const Vector& x, const Vector& y) {
            return (element(a, x) * element(a, y)).coeffs();
          },
          py::arg("a"), py::arg("b"))
      .def("__repr__", [](const PyAlgebra& a) { return "<Algebra " + a.handle->descriptor() + ">"; });

  m.def("sup_algebra", [](std::size_t n, const std::string& field) { return PyAlgebra{make_sup_algebra(n, field_arg(field))}; },
        py::arg("n"), py::arg("field") = "complex");
  m.def("matrix_algebra",
        [](std::size_t n, const std::string& field) { return PyAlgebra{make_matrix_algebra(n, field_arg(field))}; },
        py::arg("n"), py::arg("field") = "complex");
  m.def("group_algebra",
        [](const std::vector<std::vector<std::size_t>>& cayley, const std::string& field) {
          return PyAlgebra{make_group_algebra(cayley, field_arg(field))};
        },
        py::arg("cayley"), py::arg("field") = "complex");
  m.def("cyclic_group_algebra",
        [](std::size_t n, const std::string& field) {
          return PyAlgebra{make_group_algebra(cyclic_group_table(n), field_arg(field))};
        },
        py::arg("n"), py::arg("field") = "complex");
  m.def("truncated_poly_algebra",
        [](const std::string& field) { return PyAlgebra{make_truncated_poly_algebra(field_arg(field))}; },
        py::arg("field") = "complex");
  m.def("vector_valued", [](const PySpace& x, const PyAlgebra& a) { return PyAlgebra{make_vector_valued(x.handle, a.handle)}; },
        py::arg("space"), py::arg("base"));

  py::class_<DecomposedTensor>(m, "Tensor")
      .def(py::init([](const PyAlgebra& left, const PyAlgebra& right,
                       const std::vector<std::pair<Vector, Vector>>& terms) { return make_tensor(left, right, terms); }),
           py::arg("left"), py::arg("right"), py::arg("terms") = std::vector<std::pair<Vector, Vector>>{})
      .def_property_readonly("terms", &tensor_terms)
      .def_property_readonly("left_algebra", [](const DecomposedTensor& u) { return PyAlgebra{u.left_algebra()}; })
      .def_property_readonly("right_algebra", [](const DecomposedTensor& u) { return PyAlgebra{u.right_algebra()}; })
      .def("coefficient_tensor", &DecomposedTensor::coefficient_tensor)
      .def("__len__", &DecomposedTensor::size);

  m.def("product_map", [](const DecomposedTensor& u) { return product_map(u).coeffs(); }, py::arg("u"));
  m.def("commutator",
        [](const Vector& a, const DecomposedTensor& u) { return commutator({u.left_algebra(), a}, u); },
        py::arg("a"), py::arg("u"));
  m.def("norm_upper", &norm_upper, py::arg("u"));
  m.def("norm_exact_lp", [](const DecomposedTensor& u) { return norm_exact_lp(u); }, py::arg("u"));
  m.def("grothendieck_bound",
        [](const DecomposedTensor& u, std::optional<double> k) {
          const auto constant = k ? GrothendieckConstant{*k} : GrothendieckConstant::for_field(u.left_algebra()->field());
          return grothendieck_bound(u, constant);
        },
        py::arg("u"), py::arg("k") = py::none());
  m.def("mixed_tensor",
        [](const DecomposedTensor& u, const DecomposedTensor& alpha, const PyAlgebra& cxa) {
          return mixed_tensor(u, alpha, cxa.handle);
        },
        py::arg("u"), py::arg("alpha"), py::arg("cxa"));

  m.def("exact_diagonal", [](const PyAlgebra& a) { return exact_diagonal(a.handle); }, py::arg("algebra"));
  m.def("pushforward_diagonal", &pushforward_diagonal, py::arg("U"), py::arg("x0"));
  m.def("verify_diagonal",
        [](const DecomposedTensor& U, const std::vector<Vector>& F, double eps) {
          std::vector<AlgebraElement> elements;
          for (const auto& f : F) elements.emplace_back(U.left_algebra(), f);
          return certificate_dict(verify_diagonal(U, elements, eps));
        },
        py::arg("U"), py::arg("F"), py::arg("eps"));
  m.def("lift_case2",
        [](const DecomposedTensor& alpha, const PySpace& x, const std::vector<Vector>& F, double eps,
           const std::string& field) {
          const AlgebraHandle cxa = make_vector_valued(x.handle, alpha.left_algebra());
          std::vector<AlgebraElement> elements;
          for (const auto& f : F) elements.emplace_back(cxa, f);
          DiagonalRequest request{eps, elements, alpha, 0.0, false};
          const auto cert = lift_case2(request, x.handle, GrothendieckConstant::for_field(field_arg(field)));
          return py::make_tuple(cert.U, certificate_dict(cert));
        },
        py::arg("alpha"), py::arg("space"), py::arg("F"), py::arg("eps"), py::arg("field") = "complex");

  m.def("derivation_dim", [](const PyAlgebra& a) { return derivation_space(a.handle).dim; }, py::arg("algebra"));
  m.def("derivation_basis", [](const PyAlgebra& a) { return derivation_space(a.handle).basis; }, py::arg("algebra"));
  m.def("weakly_amenable", [](const PyAlgebra& a) { return weakly_amenable_commutative(a.handle); },
        py::arg("algebra"));
  m.def("transfer_check",
        [](const PySpace& x, const PyAlgebra& a) {
          const auto r = weak_amenability_transfer_check(x.handle, a.handle);
          py::dict out;
          out["base_dim"] = r.base_dim;
          out["lifted_dim"] = r.lifted_dim;
          out["base_weakly_amenable"] = r.base_weakly_amenable;
          out["lifted_weakly_amenable"] = r.lifted_weakly_amenable;
          out["witness_leibniz_defect"] = r.witness_leibniz_defect;
          out["consistent"] = r.consistent;
          return out;
        },
        py::arg("space"), py::arg("algebra"));

  m.def("_run_json",
        [](const std::string& doc, std::optional<std::string> out, std::optional<std::uint64_t> seed,
           std::optional<std::string> field, std::optional<double> eps) {
          SpecOverrides o;
          if (out) o.output = *out;
          o.seed = seed;
          if (field) o.field = field_arg(*field);
          o.eps = eps;
          io::json parsed;
          try {
            parsed = io::json::parse(doc);
          } catch (const io::json::exception& e) {
            throw io::SpecError(e.what());
          }
          const RunResult r = run(parse_experiment(parsed, o));
          return py::make_tuple(r.exit_code, r.artifact.dump(), r.table);
        },
        py::arg("doc"), py::arg("out") = py::none(), py::arg("seed") = py::none(), py::arg("field") = py::none(),
        py::arg("eps") = py::none());

  m.attr("EXIT_PASS") = kExitPass;
  m.attr("EXIT_FAIL") = kExitFail;
  m.attr("EXIT_PARSE_ERROR") = kExitParseError;
  m.attr("EXIT_PRECONDITION") = kExitPrecondition;
}
