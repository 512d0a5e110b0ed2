#include <optional>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lltrace/errors.hpp"
#include "lltrace/partitions.hpp"
#include "lltrace/solver.hpp"
#include "lltrace/trace.hpp"
#include "lltrace/two_body.hpp"
#include "lltrace/weyl.hpp"

namespace py = pybind11;
using namespace lltrace;

namespace {

py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(py::int_(py::str(boost::multiprecision::numerator(r).str())),
                  py::int_(py::str(boost::multiprecision::denominator(r).str())));
}

QuantumNumbers quantum_numbers(const ModelParams& p, std::vector<int> doubled) {
  return QuantumNumbers(std::move(doubled), p.parity_offset());
}

py::dict state_dict(const BetheState& s) {
  py::dict d;
  d["partition"] = std::vector<int>(s.shape.blocks().begin(), s.shape.blocks().end());
  d["doubled"] = std::vector<int>(s.quantum_numbers.doubled().begin(), s.quantum_numbers.doubled().end());
  d["rapidities"] = s.rapidities;
  d["energy"] = s.energy;
  d["momentum"] = s.momentum;
  d["gaudin_det"] = s.gaudin_det;
  d["residual_norm"] = s.residual_norm;
  d["iterations"] = s.iterations;
  return d;
}

TraceSettings trace_settings(int m_max, const std::vector<std::vector<int>>& partitions, unsigned workers) {
  TraceSettings s;
  s.m_max = m_max;
  s.workers = workers;
  for (const auto& b : partitions) s.partitions.emplace_back(b);
  return s;
}

QuadratureSpec quadrature(int nodes) {
  QuadratureSpec q;
  q.nodes_per_angle = nodes;
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bethe ansatz spectra and the semiclassical trace formula of the Lieb-Liniger ring";
  m.attr("__version__") = LLTRACE_VERSION;

  // Translators run newest first, so subclasses are registered after the base.
  auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation", error.ptr());
  py::register_exception<InvalidQuantumNumbers>(m, "InvalidQuantumNumbers", error.ptr());
  py::register_exception<OutOfRange>(m, "OutOfRange", error.ptr());
  py::register_exception<NonPositiveEnergy>(m, "NonPositiveEnergy", error.ptr());
  py::register_exception<WrongParticleNumber>(m, "WrongParticleNumber", error.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", error.ptr());

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<int, double, double>(), py::arg("n"), py::arg("g"), py::arg("L") = kTwoPi)
      .def_property_readonly("n", &ModelParams::n_particles)
      .def_property_readonly("g", &ModelParams::coupling)
      .def_property_readonly("L", &ModelParams::ring_length)
      .def_property_readonly("parity_offset", &ModelParams::parity_offset)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(n=" + std::to_string(p.n_particles()) + ", g=" + py::repr(py::float_(p.coupling())).cast<std::string>() +
               ", L=" + py::repr(py::float_(p.ring_length())).cast<std::string>() + ")";
      });

  py::class_<PartitionShape>(m, "PartitionShape")
      .def(py::init<std::vector<int>>(), py::arg("blocks"))
      .def_property_readonly("blocks", [](const PartitionShape& s) { return std::vector<int>(s.blocks().begin(), s.blocks().end()); })
      .def_property_readonly("dimension", &PartitionShape::dimension)
      .def_property_readonly("total", &PartitionShape::total)
      .def_property_readonly("coefficient", [](const PartitionShape& s) { return to_fraction(s.coefficient()); })
      .def("__repr__", [](const PartitionShape& s) { return "PartitionShape" + s.to_string(); });

  m.def("enumerate_partitions", [](int n) { return enumerate_partitions(n).shapes; }, py::arg("n"),
        "All partitions of n in reverse-lexicographic order.");
  m.def("binomial_identity_check", &binomial_identity_check, py::arg("n"), py::arg("r"));

  m.def(
      "solve_state",
      [](const ModelParams& p, std::vector<int> doubled, std::optional<std::vector<int>> blocks, double tolerance) {
        SolverSettings s;
        s.residual_tolerance = tolerance;
        const auto qn = quantum_numbers(p, std::move(doubled));
        const auto shape = blocks ? PartitionShape(*blocks) : PartitionShape::singletons(p.n_particles());
        BetheState state = [&] {
          py::gil_scoped_release release;
          return solve_state(p, shape, qn, s);
        }();
        return state_dict(state);
      },
      py::arg("params"), py::arg("doubled"), py::arg("blocks") = py::none(), py::arg("tolerance") = 1e-12,
      "Solve the Bethe equations for quantum numbers given as 2*I_j.");

  m.def(
      "enumerate_spectrum",
      [](const ModelParams& p, double e_max, unsigned workers) {
        SolverSettings s;
        s.workers = workers;
        SpectrumTable table = [&] {
          py::gil_scoped_release release;
          return enumerate_spectrum(p, e_max, s);
        }();
        py::list out;
        for (const auto& st : table.levels) out.append(state_dict(st));
        return out;
      },
      py::arg("params"), py::arg("e_max"), py::arg("workers") = 0);
  m.def(
      "staircase",
      [](const ModelParams& p, double e) {
        py::gil_scoped_release release;
        return staircase(enumerate_spectrum(p, e), e);
      },
      py::arg("params"), py::arg("e"));

  m.def(
      "weyl_density_total", [](const ModelParams& p, double e, int nodes) { return weyl_density_total(p, e, quadrature(nodes)); },
      py::arg("params"), py::arg("e"), py::arg("nodes_per_angle") = 64);
  m.def(
      "weyl_count", [](const ModelParams& p, double e, int nodes) { return weyl_count(p, e, quadrature(nodes)); },
      py::arg("params"), py::arg("e"), py::arg("nodes_per_angle") = 64);

  m.def(
      "amplitude",
      [](const std::vector<int>& blocks, const std::vector<int>& winding, double e, const ModelParams& p) {
        return amplitude(PartitionShape(blocks), WindingVector(winding), e, p);
      },
      py::arg("blocks"), py::arg("winding"), py::arg("e"), py::arg("params"));
  m.def(
      "total_phase",
      [](const std::vector<int>& blocks, const std::vector<int>& winding, double e, const ModelParams& p) {
        return total_phase(PartitionShape(blocks), WindingVector(winding), e, p);
      },
      py::arg("blocks"), py::arg("winding"), py::arg("e"), py::arg("params"));
  m.def(
      "rho_osc_total",
      [](const ModelParams& p, double e, int m_max, const std::vector<std::vector<int>>& parts) {
        return rho_osc_total(p, e, trace_settings(m_max, parts, 1));
      },
      py::arg("params"), py::arg("e"), py::arg("m_max") = 10, py::arg("partitions") = std::vector<std::vector<int>>{});
  m.def(
      "rho_total",
      [](const ModelParams& p, double e_min, double e_max, double step, int m_max,
         const std::vector<std::vector<int>>& parts, unsigned workers, int nodes) {
        const auto settings = trace_settings(m_max, parts, workers);
        DensityGrid grid = [&] {
          py::gil_scoped_release release;
          return rho_total(p, GridSpec{e_min, e_max, step}, settings, quadrature(nodes));
        }();
        py::dict d;
        d["energy"] = grid.energies;
        d["smooth"] = grid.values_smooth;
        d["oscillatory"] = grid.values_osc;
        d["total"] = grid.values_total;
        return d;
      },
      py::arg("params"), py::arg("e_min") = 0.5, py::arg("e_max") = 30.0, py::arg("step") = 0.01, py::arg("m_max") = 10,
      py::arg("partitions") = std::vector<std::vector<int>>{}, py::arg("workers") = 0, py::arg("nodes_per_angle") = 64);
  m.def(
      "semiclassical_count",
      [](const ModelParams& p, const std::vector<double>& energies, int m_max, unsigned workers) {
        const auto settings = trace_settings(m_max, {}, workers);
        py::gil_scoped_release release;
        return semiclassical_count(p, energies, settings);
      },
      py::arg("params"), py::arg("energies"), py::arg("m_max") = 10, py::arg("workers") = 0);
  m.def(
      "resurgence_profile",
      [](const ModelParams& p, const std::vector<int>& ladder, double lo, double hi, unsigned workers) {
        TraceSettings base;
        base.workers = workers;
        std::vector<ResurgenceRow> rows = [&] {
          py::gil_scoped_release release;
          return resurgence_profile(p, ladder, lo, hi, base);
        }();
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["m_max"] = r.m_max;
          d["mean_osc_between_levels"] = r.mean_osc_between_levels;
          d["weyl_mean"] = r.weyl_mean;
          d["gap"] = r.gap;
          d["midpoints"] = r.midpoints;
          out.append(d);
        }
        return out;
      },
      py::arg("params"), py::arg("ladder") = std::vector<int>{3, 10, 20}, py::arg("window_lo") = 5.0,
      py::arg("window_hi") = 30.0, py::arg("workers") = 0);

  m.def("relative_secular_root", &relative_secular_root, py::arg("n"), py::arg("params"));
  m.def(
      "two_body_levels",
      [](const ModelParams& p, double e_max) {
        py::list out;
        for (const auto& lv : two_body_levels(p, e_max)) {
          py::dict d;
          d["s"] = lv.total_momentum_number;
          d["n"] = lv.relative_number;
          d["kappa"] = lv.relative_root;
          d["energy"] = lv.energy;
          out.append(d);
        }
        return out;
      },
      py::arg("params"), py::arg("e_max"));
  m.def(
      "compare_with_bethe",
      [](const ModelParams& p, double e_max, double tolerance) {
        const auto r = compare_with_bethe(p, e_max, tolerance);
        py::dict d;
        d["passed"] = r.passed;
        d["bethe_levels"] = r.bethe_levels;
        d["secular_levels"] = r.secular_levels;
        d["max_deviation"] = r.max_deviation;
        return d;
      },
      py::arg("params"), py::arg("e_max"), py::arg("tolerance") = 1e-9);
}
