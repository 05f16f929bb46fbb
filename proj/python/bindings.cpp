#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "mpgn/checks.hpp"
#include "mpgn/error.hpp"
#include "mpgn/exponents.hpp"
#include "mpgn/io.hpp"
#include "mpgn/minimal_systems.hpp"

namespace py = pybind11;
using namespace mpgn;

namespace {

double extended_to_float(const ExtendedReal& x) {
  if (x.is_positive_infinity()) return INFINITY;
  if (x.is_negative_infinity()) return -INFINITY;
  return x.value();
}

ExtendedReal float_to_extended(double x) {
  if (std::isinf(x)) return x > 0 ? ExtendedReal::positive_infinity() : ExtendedReal::negative_infinity();
  return ExtendedReal::finite(x);
}

ScanConfig make_scan_config(int dim, int directions, const std::string& radii, std::uint64_t budget,
                            unsigned threads) {
  ScanConfig cfg = ScanConfig::standard(dim, directions, RadiusSchedule::parse(radii));
  if (budget) cfg.engine.budget = budget;
  cfg.threads = threads;
  return cfg;
}

EngineOptions engine(std::uint64_t budget) {
  EngineOptions e;
  if (budget) e.budget = budget;
  return e;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Successive minima of diagonally deformed lattices and their exponents";

  auto base = py::register_exception<Error>(m, "MpgnError");
  py::register_exception<BadParams>(m, "BadParams", base.ptr());
  py::register_exception<SingularBasis>(m, "SingularBasis", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  py::register_exception<ZeroVector>(m, "ZeroVector", base.ptr());
  py::register_exception<DegenerateVector>(m, "DegenerateVector", base.ptr());
  py::register_exception<ZeroGauge>(m, "ZeroGauge", base.ptr());
  py::register_exception<InsufficientSamples>(m, "InsufficientSamples", base.ptr());
  py::register_exception<OutOfDomain>(m, "OutOfDomain", base.ptr());
  py::register_exception<MissingEstimates>(m, "MissingEstimates", base.ptr());
  py::register_exception<NotIrrational>(m, "NotIrrational", base.ptr());

  py::class_<TauVector>(m, "Tau")
      .def(py::init<std::vector<double>>(), py::arg("components"))
      .def_static("projected", &TauVector::projected, py::arg("components"))
      .def_static("zero", &TauVector::zero, py::arg("dim"))
      .def_property_readonly("components",
                             [](const TauVector& t) { return std::vector<double>(t.components().begin(), t.components().end()); })
      .def_property_readonly("dim", &TauVector::dim)
      .def("sup_norm", &TauVector::sup_norm)
      .def("__neg__", [](const TauVector& t) { return -t; })
      .def("__repr__", [](const TauVector& t) {
        std::string s = "Tau([";
        for (int i = 0; i < t.dim(); ++i) s += (i ? ", " : "") + std::to_string(t[i]);
        return s + "])";
      });

  py::class_<GaugeFunction>(m, "Gauge")
      .def_static("parse", &GaugeFunction::parse, py::arg("text"))
      .def("__call__", &GaugeFunction::operator(), py::arg("tau"))
      .def("conjugate", &GaugeFunction::conjugate)
      .def_property_readonly("name", &GaugeFunction::name)
      .def("__eq__", [](const GaugeFunction& a, const GaugeFunction& b) { return a == b; })
      .def("__repr__", [](const GaugeFunction& f) { return "Gauge('" + f.name() + "')"; });

  py::class_<LatticePoint>(m, "LatticePoint")
      .def_readonly("coeffs", &LatticePoint::coeffs)
      .def_readonly("coords", &LatticePoint::coords);

  py::class_<Lattice>(m, "Lattice")
      .def(py::init<const Matrix&, std::string>(), py::arg("basis"), py::arg("label") = "")
      .def_property_readonly("dim", &Lattice::dim)
      .def_property_readonly("basis", &Lattice::basis)
      .def_property_readonly("label", &Lattice::label)
      .def("point", [](const Lattice& l, const Coeffs& c) { return l.point(c); }, py::arg("coeffs"))
      .def("dual", [](const Lattice& l) { return dual_lattice(l); })
      .def("to_json", [](const Lattice& l) { return io::lattice_to_json(l); })
      .def_static("from_json", &io::lattice_from_json, py::arg("text"));

  m.def(
      "make_lattice",
      [](const std::string& kind, int dim, std::uint64_t seed, std::vector<double> thetas) {
        TestLatticeParams p;
        p.dim = dim;
        p.seed = seed;
        p.thetas = std::move(thetas);
        return make_test_lattice(parse_test_lattice_kind(kind), p);
      },
      py::arg("kind"), py::arg("dim") = 3, py::arg("seed") = 0, py::arg("thetas") = std::vector<double>{},
      "Bundled lattice: integer, totally-real-cubic, unipotent, random-unimodular, axis-sublattice.");

  py::class_<MinimaProfile>(m, "MinimaProfile")
      .def_readonly("tau", &MinimaProfile::tau)
      .def_readonly("lambdas", &MinimaProfile::lambdas)
      .def_readonly("witnesses", &MinimaProfile::witnesses)
      .def_readonly("L", &MinimaProfile::L)
      .def_readonly("S", &MinimaProfile::S);

  m.def(
      "successive_minima",
      [](const Lattice& l, const TauVector& t, std::uint64_t budget) { return successive_minima(l, t, engine(budget)); },
      py::arg("lattice"), py::arg("tau"), py::arg("budget") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "points_in_box",
      [](const Lattice& l, const TauVector& t, double r, std::uint64_t budget) {
        return points_in_box(l, t, r, engine(budget));
      },
      py::arg("lattice"), py::arg("tau"), py::arg("radius"), py::arg("budget") = 0);

  py::class_<ExponentEstimate>(m, "ExponentEstimate")
      .def_property_readonly("kind", [](const ExponentEstimate& e) { return to_string(e.kind); })
      .def_readonly("k", &ExponentEstimate::k)
      .def_readonly("value", &ExponentEstimate::value)
      .def_readonly("lattice", &ExponentEstimate::lattice)
      .def_readonly("witness_tau", &ExponentEstimate::witness_tau)
      .def_readonly("shell_start", &ExponentEstimate::shell_start)
      .def_property_readonly("trace",
                             [](const ExponentEstimate& e) {
                               std::vector<std::pair<double, double>> t;
                               for (const auto& p : e.trace) t.emplace_back(p.radius, p.value);
                               return t;
                             })
      .def("oscillation", &ExponentEstimate::oscillation)
      .def("to_json", [](const ExponentEstimate& e) { return io::estimate_to_json(e); });

  auto kind_of = [](const std::string& s) {
    for (auto k : {ExponentKind::PsiLower, ExponentKind::PsiUpper, ExponentKind::PsiSumLower, ExponentKind::PsiSumUpper})
      if (to_string(k) == s) return k;
    throw BadParams("unknown exponent kind '" + s + "'");
  };

  py::class_<EstimateSet>(m, "EstimateSet")
      .def_readonly("lattice", &EstimateSet::lattice)
      .def_readonly("dim", &EstimateSet::dim)
      .def_readonly("items", &EstimateSet::items)
      .def_readonly("shell_f_min", &EstimateSet::shell_f_min)
      .def("value", [kind_of](const EstimateSet& s, const std::string& kind, int k) { return s.value(kind_of(kind), k); },
           py::arg("kind"), py::arg("k"))
      .def("get", [kind_of](const EstimateSet& s, const std::string& kind, int k) { return s.get(kind_of(kind), k); },
           py::arg("kind"), py::arg("k"))
      .def("max_oscillation", &EstimateSet::max_oscillation)
      .def("to_json", [](const EstimateSet& s) { return io::estimates_to_json(s); });

  m.def(
      "estimate_exponents",
      [](const Lattice& l, const std::string& f, int directions, const std::string& radii, std::uint64_t budget,
         unsigned threads) {
        return estimate_exponents(l, GaugeFunction::parse(f), make_scan_config(l.dim(), directions, radii, budget, threads));
      },
      py::arg("lattice"), py::arg("f") = "sup-plus", py::arg("directions") = 24,
      py::arg("radii") = "1.5:1.148698354997035:16", py::arg("budget") = 0, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "estimate_psi1_vector_scan",
      [](const Lattice& l, double n) { return estimate_psi1_vector_scan(l, n); }, py::arg("lattice"),
      py::arg("norm_bound"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "estimate_omega", [](const Lattice& l, double n) { return extended_to_float(estimate_omega(l, n)); },
      py::arg("lattice"), py::arg("norm_bound"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "omega_to_psi",
      [](double w) { return extended_to_float(omega_psi_convert(float_to_extended(w), ConversionDirection::OmegaToPsi)); },
      py::arg("omega"));
  m.def(
      "psi_to_omega",
      [](double p) { return extended_to_float(omega_psi_convert(float_to_extended(p), ConversionDirection::PsiToOmega)); },
      py::arg("psi"));

  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("check_name", &CheckReport::check_name)
      .def_readonly("worst_slack", &CheckReport::worst_slack)
      .def_readonly("constants", &CheckReport::constants)
      .def_readonly("sample_count", &CheckReport::sample_count)
      .def_readonly("notes", &CheckReport::notes)
      .def("passed", &CheckReport::passed)
      .def("failures", &CheckReport::failures)
      .def("to_json", [](const CheckReport& r) { return io::report_to_json(r); });

  m.def("random_tau_samples", &random_tau_samples, py::arg("dim"), py::arg("count"), py::arg("max_norm"),
        py::arg("seed"));
  m.def(
      "check_all_local",
      [](const Lattice& l, const std::vector<TauVector>& samples, std::uint64_t budget) {
        return check_all_local(l, samples, engine(budget));
      },
      py::arg("lattice"), py::arg("samples"), py::arg("budget") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "check_exponent_relations",
      [](const EstimateSet& est, const EstimateSet& dual_f, const EstimateSet& dual_conj, std::optional<double> tol,
         bool finite_radius_terms) {
        RelationOptions o;
        o.tol = tol;
        o.finite_radius_terms = finite_radius_terms;
        return check_exponent_relations(est, dual_f, dual_conj, o);
      },
      py::arg("est"), py::arg("dual_f"), py::arg("dual_conjugate"), py::arg("tol") = py::none(),
      py::arg("finite_radius_terms") = true);

  py::class_<VectorSystem>(m, "VectorSystem")
      .def_static("from_points", &VectorSystem::from_points, py::arg("points"))
      .def_readonly("points", &VectorSystem::points)
      .def_readonly("rank", &VectorSystem::rank)
      .def_readonly("envelope", &VectorSystem::envelope)
      .def("envelope_volume", &VectorSystem::envelope_volume);

  m.def(
      "is_minimal_system",
      [](const Lattice& l, const VectorSystem& s) {
        MinimalityResult r = is_minimal_system(l, s);
        return py::make_tuple(r.minimal, r.witness ? py::cast(*r.witness) : py::none());
      },
      py::arg("lattice"), py::arg("system"));
  m.def(
      "find_minkowski_bases", [](const Lattice& l, double r) { return find_minkowski_bases(l, r); },
      py::arg("lattice"), py::arg("search_radius"), py::call_guard<py::gil_scoped_release>());
}
