#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geomphase/errors.hpp"
#include "geomphase/invariance.hpp"
#include "geomphase/scenario.hpp"
#include "geomphase/states.hpp"

namespace py = pybind11;
using namespace geomphase;

namespace {

py::array_t<cplx> to_array(std::span<const cplx> values) {
  py::array_t<cplx> out(static_cast<py::ssize_t>(values.size()));
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

CVector from_array(const py::array_t<cplx, py::array::c_style | py::array::forcecast>& values) {
  if (values.ndim() != 1) throw std::invalid_argument("expected a 1-D complex array");
  return CVector(values.data(), values.data() + values.size());
}

HamiltonianPtr share(const HamiltonianSpec& h) { return std::make_shared<HamiltonianSpec>(h); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Geometric phases of 1D wave packets under Galilean boosts";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<GridMismatchError>(m, "GridMismatchError", error);
  py::register_exception<NormalizationError>(m, "NormalizationError", error);
  py::register_exception<DomainOverflowError>(m, "DomainOverflowError", error);
  py::register_exception<NumericalBlowupError>(m, "NumericalBlowupError", error);
  py::register_exception<OracleSizeError>(m, "OracleSizeError", error);
  py::register_exception<OrthogonalStatesError>(m, "OrthogonalStatesError", error);
  py::register_exception<ResolutionError>(m, "ResolutionError", error);
  py::register_exception<NotCyclicError>(m, "NotCyclicError", error);
  py::register_exception<ConfigError>(m, "ConfigError", error);

  py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
      .def(py::init<std::size_t, double, double, double>(), py::arg("n_points"), py::arg("x_min"),
           py::arg("dx"), py::arg("hbar") = 1.0)
      .def_property_readonly("size", &Grid::size)
      .def_property_readonly("x_min", &Grid::x_min)
      .def_property_readonly("dx", &Grid::dx)
      .def_property_readonly("length", &Grid::length)
      .def_property_readonly("hbar", &Grid::hbar)
      .def_property_readonly("dp", &Grid::dp)
      .def_property_readonly("positions",
                             [](const Grid& g) { return py::array_t<double>(g.size(), g.positions().data()); })
      .def_property_readonly("momenta", [](const Grid& g) {
        py::array_t<double> out(static_cast<py::ssize_t>(g.size()));
        for (std::size_t j = 0; j < g.size(); ++j) out.mutable_data()[j] = g.momentum(j);
        return out;
      });

  py::class_<GuardBand>(m, "GuardBand")
      .def(py::init([](double fraction, double max_mass, bool enabled) {
             return GuardBand{fraction, max_mass, enabled};
           }),
           py::arg("fraction") = 0.05, py::arg("max_mass") = 1e-8, py::arg("enabled") = true)
      .def_readwrite("fraction", &GuardBand::fraction)
      .def_readwrite("max_mass", &GuardBand::max_mass)
      .def_readwrite("enabled", &GuardBand::enabled)
      .def_static("disabled", &GuardBand::disabled);

  py::class_<WaveFunction>(m, "WaveFunction")
      .def(py::init([](std::shared_ptr<Grid> grid, const py::array_t<cplx, py::array::c_style | py::array::forcecast>& a,
                       double time) { return WaveFunction(grid, from_array(a), time); }),
           py::arg("grid"), py::arg("amplitudes"), py::arg("time") = 0.0)
      .def_property_readonly("amplitudes", [](const WaveFunction& w) { return to_array(w.amplitudes()); })
      .def_property_readonly("time", &WaveFunction::time)
      .def_property_readonly("grid", [](const WaveFunction& w) { return std::const_pointer_cast<Grid>(w.grid_ptr()); })
      .def("norm", &WaveFunction::norm)
      .def("normalized", &WaveFunction::normalized)
      .def("with_time", &WaveFunction::with_time)
      .def("scaled", &WaveFunction::scaled)
      .def("__len__", &WaveFunction::size);

  m.def("inner_product", &inner_product);
  m.def("to_momentum", [](const WaveFunction& w) { return to_array(to_momentum(w)); });
  m.def(
      "from_momentum",
      [](std::shared_ptr<Grid> grid, const py::array_t<cplx, py::array::c_style | py::array::forcecast>& phi,
         double time) {
        const CVector v = from_array(phi);
        return from_momentum(grid, v, time);
      },
      py::arg("grid"), py::arg("phi"), py::arg("time") = 0.0);
  m.def("expect_position", &expect_position);
  m.def("expect_momentum", &expect_momentum);
  m.def("translate", &translate, py::arg("psi"), py::arg("a"), py::arg("guard") = GuardBand{});
  m.def("gaussian_state",
        [](std::shared_ptr<Grid> g, double center, double width, double momentum, double time) {
          return gaussian_state(g, center, width, momentum, time);
        },
        py::arg("grid"), py::arg("center"), py::arg("width"), py::arg("momentum") = 0.0, py::arg("time") = 0.0);
  m.def("coherent_state",
        [](std::shared_ptr<Grid> g, cplx alpha, double omega, double mass, double time) {
          return coherent_state(g, alpha, omega, mass, time);
        },
        py::arg("grid"), py::arg("alpha"), py::arg("omega"), py::arg("mass") = 1.0, py::arg("time") = 0.0);
  m.def("plane_wave", [](std::shared_ptr<Grid> g, double p, double time) { return plane_wave(g, p, time); },
        py::arg("grid"), py::arg("momentum"), py::arg("time") = 0.0);

  py::class_<HamiltonianSpec, std::shared_ptr<HamiltonianSpec>>(m, "Hamiltonian")
      .def_static("free", [](double m, double hbar) { return share(HamiltonianSpec::free(m, hbar)); },
                  py::arg("mass") = 1.0, py::arg("hbar") = 1.0)
      .def_static("harmonic",
                  [](double omega, double m, double hbar) { return share(HamiltonianSpec::harmonic(omega, m, hbar)); },
                  py::arg("omega"), py::arg("mass") = 1.0, py::arg("hbar") = 1.0)
      .def_static("polynomial",
                  [](std::vector<double> c, double m, double hbar) {
                    return share(HamiltonianSpec::polynomial(std::move(c), m, hbar));
                  },
                  py::arg("coefficients"), py::arg("mass") = 1.0, py::arg("hbar") = 1.0)
      .def("with_constant_vector_potential",
           [](const HamiltonianSpec& h, double a0) { return share(h.with_constant_vector_potential(a0)); })
      .def_readonly("mass", &HamiltonianSpec::mass)
      .def_readonly("hbar", &HamiltonianSpec::hbar)
      .def_readonly("label", &HamiltonianSpec::label)
      .def("V", &HamiltonianSpec::V)
      .def("A", &HamiltonianSpec::A);

  py::class_<Trajectory>(m, "Trajectory")
      .def(py::init([](std::vector<WaveFunction> states) { return Trajectory(std::move(states)); }))
      .def("__len__", &Trajectory::size)
      .def("__getitem__",
           [](const Trajectory& t, std::size_t k) {
             if (k >= t.size()) throw py::index_error();
             return t[k];
           })
      .def_property_readonly("times", &Trajectory::times)
      .def_property_readonly("duration", &Trajectory::duration)
      .def_property_readonly("states", &Trajectory::states);

  m.def(
      "evolve",
      [](const WaveFunction& psi0, std::shared_ptr<HamiltonianSpec> h, double T, std::size_t n_steps,
         std::size_t sample_every, const GuardBand& guard) {
        EvolveOptions opts;
        opts.sample_every = sample_every;
        opts.guard = guard;
        py::gil_scoped_release release;
        return evolve(psi0, h, T, n_steps, opts);
      },
      py::arg("psi0"), py::arg("hamiltonian"), py::arg("T"), py::arg("n_steps"), py::arg("sample_every") = 1,
      py::arg("guard") = GuardBand{});
  m.def("evolve_dense_oracle",
        [](const WaveFunction& psi0, std::shared_ptr<HamiltonianSpec> h, double T, std::size_t n_samples) {
          return evolve_dense_oracle(psi0, h, T, n_samples);
        },
        py::arg("psi0"), py::arg("hamiltonian"), py::arg("T"), py::arg("n_samples") = 1);
  m.def("gauge_transform", &gauge_transform);
  m.def("linear_gauge_transform", &linear_gauge_transform);
  m.def("retime", &retime);
  m.def("phase_lift", &phase_lift);
  m.def("slice", &slice);

  py::class_<PhaseOptions>(m, "PhaseOptions")
      .def(py::init<>())
      .def_readwrite("overlap_floor", &PhaseOptions::overlap_floor)
      .def_readwrite("cyclic_tolerance", &PhaseOptions::cyclic_tolerance)
      .def_readwrite("max_step_phase", &PhaseOptions::max_step_phase)
      .def_readwrite("energy_form_tolerance", &PhaseOptions::energy_form_tolerance)
      .def_readwrite("check_energy_form", &PhaseOptions::check_energy_form);

  py::class_<PhaseReport>(m, "PhaseReport")
      .def_readonly("total_phase", &PhaseReport::total_phase)
      .def_readonly("dynamic_phase", &PhaseReport::dynamic_phase)
      .def_readonly("aa_phase", &PhaseReport::aa_phase)
      .def_readonly("aw_phase", &PhaseReport::aw_phase)
      .def_readonly("cyclicity_defect", &PhaseReport::cyclicity_defect)
      .def_readonly("per_step_phases", &PhaseReport::per_step_phases)
      .def_readonly("dynamic_phase_energy", &PhaseReport::dynamic_phase_energy);

  const PhaseOptions defaults;
  m.def("wrap_phase", &wrap_phase);
  m.def("local_phase_change", &local_phase_change, py::arg("a"), py::arg("b"), py::arg("overlap_floor") = 1e-6);
  m.def("dynamic_phase", &dynamic_phase, py::arg("traj"), py::arg("options") = defaults);
  m.def("total_phase", &total_phase, py::arg("traj"), py::arg("overlap_floor") = 1e-6);
  m.def("cyclicity_defect", &cyclicity_defect);
  m.def("aa_phase", &aa_phase, py::arg("traj"), py::arg("options") = defaults);
  m.def("aw_phase", &aw_phase, py::arg("traj"), py::arg("options") = defaults);
  m.def("geodesic_closure_phase", &geodesic_closure_phase, py::arg("traj"), py::arg("n_geodesic") = 64,
        py::arg("options") = defaults);
  m.def("phase_report", &phase_report, py::arg("traj"), py::arg("options") = defaults);

  py::class_<BoostParams>(m, "BoostParams")
      .def(py::init([](double v, double mass, double hbar) { return BoostParams{v, mass, hbar}; }),
           py::arg("velocity"), py::arg("mass") = 1.0, py::arg("hbar") = 1.0)
      .def_readwrite("velocity", &BoostParams::velocity)
      .def_readwrite("mass", &BoostParams::mass)
      .def_readwrite("hbar", &BoostParams::hbar);

  m.def("apply_boost", &apply_boost, py::arg("psi"), py::arg("t"), py::arg("boost"), py::arg("guard") = GuardBand{});
  m.def("boost_trajectory", &boost_trajectory, py::arg("traj"), py::arg("boost"), py::arg("guard") = GuardBand{});
  m.def(
      "check_operator_transforms",
      [](const WaveFunction& psi, double t, const BoostParams& b) {
        const auto r = check_operator_transforms(psi, t, b);
        return py::make_tuple(r.position, r.momentum);
      },
      py::arg("psi"), py::arg("t"), py::arg("boost"));

  py::class_<TransformationReport>(m, "TransformationReport")
      .def_readonly("velocity", &TransformationReport::velocity)
      .def_readonly("gamma_aw_lab", &TransformationReport::gamma_aw_lab)
      .def_readonly("gamma_aw_boosted", &TransformationReport::gamma_aw_boosted)
      .def_readonly("predicted_factor", &TransformationReport::predicted_factor)
      .def_readonly("residual_eq8", &TransformationReport::residual_eq8)
      .def_readonly("overlap_ratio_factor", &TransformationReport::overlap_ratio_factor)
      .def_readonly("momentum_integral", &TransformationReport::momentum_integral)
      .def_readonly("vector_potential_integral", &TransformationReport::vector_potential_integral)
      .def_readonly("endpoint_q_term", &TransformationReport::endpoint_q_term)
      .def_readonly("residual_eq10", &TransformationReport::residual_eq10)
      .def_readonly("cyclic_case_applicable", &TransformationReport::cyclic_case_applicable)
      .def_readonly("residual_eq11", &TransformationReport::residual_eq11)
      .def_readonly("non_invariance_gap", &TransformationReport::non_invariance_gap)
      .def_readonly("lab_cyclicity_defect", &TransformationReport::lab_cyclicity_defect)
      .def_readonly("boosted_cyclicity_defect", &TransformationReport::boosted_cyclicity_defect)
      .def_readonly("warnings", &TransformationReport::warnings);

  m.def("predicted_boost_factor",
        [](const Trajectory& t, const BoostParams& b) { return predicted_boost_factor(t, b); });
  m.def("verify_transformation_law", [](const Trajectory& t, const BoostParams& b) {
    py::gil_scoped_release release;
    return verify_transformation_law(t, b);
  });
  m.def("ehrenfest_max_residual", [](const Trajectory& t) { return ehrenfest_decomposition(t).max_abs; });

  m.def(
      "run_scenario",
      [](const std::string& text, unsigned jobs) {
        const ScenarioConfig config = parse_scenario(text);
        check_feasibility(config);
        RunReport report;
        {
          py::gil_scoped_release release;
          report = run_scenario(config, {.jobs = jobs});
        }
        return report_to_json(report);
      },
      py::arg("config_text"), py::arg("jobs") = 1,
      "Runs a scenario given as config text and returns the JSON report.");
}
