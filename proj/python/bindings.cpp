#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "ppmhd/diagnostics.hpp"
#include "ppmhd/limiters.hpp"
#include "ppmhd/physics.hpp"
#include "ppmhd/problems.hpp"
#include "ppmhd/run.hpp"
#include "ppmhd/timestep.hpp"

namespace py = pybind11;
using namespace ppmhd;

namespace {

py::dict norms_dict(const ErrorNorms& e) {
  static const char* const names[kNumVars] = {"rho", "mx", "my", "mz", "Bx", "By", "Bz", "E"};
  py::dict d;
  for (int k = 0; k < kNumVars; ++k) {
    py::dict c;
    c["l1"] = e.l1[k];
    c["l2"] = e.l2[k];
    c["linf"] = e.linf[k];
    d[names[k]] = c;
  }
  return d;
}

py::dict record_dict(const StepRecord& r) {
  py::dict d;
  d["t"] = r.t;
  d["dt"] = r.dt;
  d["theta"] = r.theta;
  d["vartheta1_ratio"] = r.vartheta1_ratio;
  d["vartheta2_ratio"] = r.vartheta2_ratio;
  d["max_div"] = r.max_div;
  d["limited_cells"] = r.limited_cells;
  d["min_rho"] = r.min_rho;
  d["min_p"] = r.min_p;
  return d;
}

// Solver over a named problem.
class Simulation {
 public:
  Simulation(const std::string& problem, std::optional<int> nx, std::optional<int> ny, int degree,
             const ProblemOverrides& params, double cfl, bool pp_limiter)
      : spec_(make_spec(problem, nx, ny, params)), mesh_(build_mesh(spec_.mesh_config())) {
    if (degree < 0 || degree > 2) throw Error("degree must be 0, 1 or 2");
    DGField u(std::make_shared<const DgSpace>(degree, mesh_.aspect()), mesh_.nx(), mesh_.ny());
    project(spec_.initial, mesh_, u);
    SolverOptions o;
    o.cfl = cfl;
    o.pp_limiter = pp_limiter && spec_.pp_limiter;
    o.tvb_m = spec_.tvb_m;
    solver_ = std::make_unique<Solver>(mesh_, std::move(u), EosIdeal(spec_.gamma), o);
  }

  py::dict step(std::optional<double> t_end) { return record_dict(solver_->step(t_end.value_or(spec_.t_end))); }

  py::list run(std::optional<double> t_end) {
    py::list out;
    solver_->run(t_end.value_or(spec_.t_end), [&](const StepRecord& r) { out.append(record_dict(r)); });
    return out;
  }

  // Cell averages as (ny, nx, 8).
  py::array_t<double> averages() const {
    const DGField& f = solver_->field();
    py::array_t<double> a({f.ny(), f.nx(), static_cast<int>(kNumVars)});
    auto m = a.mutable_unchecked<3>();
    for (int j = 0; j < f.ny(); ++j) {
      for (int i = 0; i < f.nx(); ++i) {
        const StateArray s = f.average(i, j);
        for (int k = 0; k < kNumVars; ++k) m(j, i, k) = s[k];
      }
    }
    return a;
  }

  py::object errors() const {
    if (!spec_.exact) return py::none();
    const double t = solver_->time();
    const ProblemSpec& s = spec_;
    return norms_dict(error_norms(solver_->field(), mesh_, [&](double x, double y) { return s.exact(x, y, t); }));
  }

  double time() const { return solver_->time(); }
  long steps() const { return solver_->steps(); }
  double t_end() const { return spec_.t_end; }
  double gamma() const { return spec_.gamma; }
  py::tuple shape() const { return py::make_tuple(mesh_.ny(), mesh_.nx()); }
  py::tuple spacing() const { return py::make_tuple(mesh_.dx(), mesh_.dy()); }

 private:
  static ProblemSpec make_spec(const std::string& problem, std::optional<int> nx, std::optional<int> ny,
                               ProblemOverrides params) {
    if (nx) params["nx"] = *nx;
    if (ny) params["ny"] = *ny;
    return make_problem(problem, params);
  }

  ProblemSpec spec_;
  Mesh mesh_;
  std::unique_ptr<Solver> solver_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Positivity-preserving DG solver for 2D ideal MHD";

  py::register_exception<PositivityError>(m, "PositivityError", PyExc_RuntimeError);
  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  m.def("problem_ids", &problem_ids);

  m.def(
      "conserved_from_primitive",
      [](double rho, const Vec3& v, const Vec3& B, double p, double gamma) {
        return conserved_from_primitive(rho, v, B, p, gamma);
      },
      py::arg("rho"), py::arg("v"), py::arg("B"), py::arg("p"), py::arg("gamma"));

  m.def(
      "primitive_from_conserved",
      [](const StateArray& u, double gamma) {
        const PrimitiveState w = to_primitive(ConservedState(u), EosIdeal(gamma));
        return py::make_tuple(w.rho, w.v, w.B, w.p);
      },
      py::arg("u"), py::arg("gamma"));

  m.def(
      "is_admissible", [](const StateArray& u) { return is_admissible(ConservedState(u)); }, py::arg("u"));

  m.def(
      "pp_viscosity_alpha",
      [](const StateArray& u, const StateArray& ut, int dir, double gamma) {
        return pp_viscosity_alpha(ConservedState(u), ConservedState(ut), static_cast<Axis>(dir), EosIdeal(gamma));
      },
      py::arg("u"), py::arg("ut"), py::arg("dir"), py::arg("gamma"));

  m.def(
      "convergence_rates",
      [](const std::vector<double>& e) {
        std::vector<std::optional<double>> r = convergence_rates(e);
        return r;
      },
      py::arg("errors"));

  m.def(
      "schlieren",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> rho, double dx, double dy, double c) {
        if (rho.ndim() != 2) throw Error("schlieren: expected a 2D array");
        const int ny = static_cast<int>(rho.shape(0)), nx = static_cast<int>(rho.shape(1));
        std::vector<double> v(rho.data(), rho.data() + rho.size());
        const std::vector<double> s = schlieren(v, nx, ny, dx, dy, c);
        py::array_t<double> out({ny, nx});
        std::copy(s.begin(), s.end(), out.mutable_data());
        return out;
      },
      py::arg("rho"), py::arg("dx"), py::arg("dy"), py::arg("c") = 10.0);

  m.def(
      "theory_check",
      [](std::uint64_t seed, long trials, double alpha_factor) {
        TheoryCheckOptions o;
        o.seed = seed;
        o.trials = trials;
        o.alpha_factor = alpha_factor;
        const TheoryCheckReport r = theory_check_suite(o);
        py::dict d;
        for (const auto& [name, n] : r.counts) d[py::str(name)] = n;
        return d;
      },
      py::arg("seed") = 42, py::arg("trials") = 10000, py::arg("alpha_factor") = 1.0001);

  m.def(
      "pressure_probe",
      [](double epsilon, int n, double gamma, bool with_source) {
        return appendixA_probe(epsilon, n, gamma, with_source).dpdt;
      },
      py::arg("epsilon") = 0.01, py::arg("n") = 21, py::arg("gamma") = 5.0 / 3.0, py::arg("with_source") = false);

  m.def(
      "run",
      [](const std::string& problem, const std::string& out, std::optional<int> nx, std::optional<int> ny, int degree,
         double cfl, std::optional<double> t_end, bool pp_limiter, int dump_every,
         const std::map<std::string, double>& params) {
        RunConfig c;
        c.problem = problem;
        c.out = out;
        c.nx = nx;
        c.ny = ny;
        c.degree = degree;
        c.cfl = cfl;
        c.t_end = t_end;
        c.pp_limiter = pp_limiter;
        c.dump_every = dump_every;
        c.params = params;
        validate(c);
        RunResult r;
        {
          py::gil_scoped_release release;
          r = run(c);
        }
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["message"] = r.message;
        d["t_final"] = r.t_final;
        d["steps"] = r.report.records().size();
        d["files"] = r.files;
        if (!r.report.empty()) {
          d["min_theta"] = r.report.min_theta();
          d["min_rho"] = r.report.min_rho();
          d["min_p"] = r.report.min_p();
        }
        d["errors"] = r.report.errors() ? py::object(norms_dict(*r.report.errors())) : py::none();
        return d;
      },
      py::arg("problem"), py::arg("out"), py::arg("nx") = py::none(), py::arg("ny") = py::none(),
      py::arg("degree") = 2, py::arg("cfl") = 0.9, py::arg("t_end") = py::none(), py::arg("pp_limiter") = true,
      py::arg("dump_every") = 0, py::arg("params") = std::map<std::string, double>{});

  py::class_<Simulation>(m, "Simulation")
      .def(py::init<const std::string&, std::optional<int>, std::optional<int>, int, const ProblemOverrides&, double,
                    bool>(),
           py::arg("problem"), py::arg("nx") = py::none(), py::arg("ny") = py::none(), py::arg("degree") = 2,
           py::arg("params") = ProblemOverrides{}, py::arg("cfl") = 0.9, py::arg("pp_limiter") = true)
      .def("step", &Simulation::step, py::arg("t_end") = py::none())
      .def("run", &Simulation::run, py::arg("t_end") = py::none())
      .def("averages", &Simulation::averages)
      .def("errors", &Simulation::errors)
      .def_property_readonly("time", &Simulation::time)
      .def_property_readonly("steps", &Simulation::steps)
      .def_property_readonly("t_end", &Simulation::t_end)
      .def_property_readonly("gamma", &Simulation::gamma)
      .def_property_readonly("shape", &Simulation::shape)
      .def_property_readonly("spacing", &Simulation::spacing);
}
