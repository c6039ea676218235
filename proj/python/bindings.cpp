#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "wnv/config.hpp"
#include "wnv/lyapunov.hpp"
#include "wnv/model.hpp"
#include "wnv/solver.hpp"
#include "wnv/thresholds.hpp"
#include "wnv/transform.hpp"
#include "wnv/verify.hpp"

namespace py = pybind11;
using namespace wnv;

namespace {

py::array_t<double> column(const std::vector<SummaryRow>& rows, double SummaryRow::*field) {
  py::array_t<double> out(static_cast<py::ssize_t>(rows.size()));
  auto w = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < rows.size(); ++i) w(static_cast<py::ssize_t>(i)) = rows[i].*field;
  return out;
}

py::dict summaries(const Trajectory& traj) {
  py::dict d;
  d["t"] = column(traj.summaries, &SummaryRow::t);
  d["g"] = column(traj.summaries, &SummaryRow::g);
  d["h"] = column(traj.summaries, &SummaryRow::h);
  d["gdot"] = column(traj.summaries, &SummaryRow::gdot);
  d["hdot"] = column(traj.summaries, &SummaryRow::hdot);
  d["sup_u"] = column(traj.summaries, &SummaryRow::sup_u);
  d["sup_v"] = column(traj.summaries, &SummaryRow::sup_v);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Free-boundary reaction-diffusion solver core";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<ModelSpec>(m, "ModelSpec")
      .def_readwrite("D1", &ModelSpec::D1)
      .def_readwrite("D2", &ModelSpec::D2)
      .def_readwrite("N1", &ModelSpec::N1)
      .def_readwrite("N2", &ModelSpec::N2)
      .def_readwrite("beta", &ModelSpec::beta)
      .def_readwrite("mu", &ModelSpec::mu)
      .def_readwrite("h0", &ModelSpec::h0)
      .def("validate", &ModelSpec::validate)
      .def("jacobian_at_zero", [](const ModelSpec& s, double x, double t) {
        return jacobian_at_zero(s, x, t);
      });
  m.def("default_paper_spec", &default_paper_spec);

  py::class_<InitialData>(m, "InitialData")
      .def_static("cosine", &InitialData::cosine, py::arg("amp_u"), py::arg("amp_v"))
      .def_static("sampled", &InitialData::sampled, py::arg("u"), py::arg("v"))
      .def_readwrite("amp_u", &InitialData::amp_u)
      .def_readwrite("amp_v", &InitialData::amp_v);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("J", &SolverConfig::J)
      .def_readwrite("dt0", &SolverConfig::dt0)
      .def_readwrite("dt_min", &SolverConfig::dt_min)
      .def_readwrite("dt_max", &SolverConfig::dt_max)
      .def_readwrite("t_end", &SolverConfig::t_end)
      .def_readwrite("newton_tol", &SolverConfig::newton_tol)
      .def_readwrite("max_newton", &SolverConfig::max_newton)
      .def_readwrite("output_times", &SolverConfig::output_times)
      .def_readwrite("probe_points", &SolverConfig::probe_points);

  py::class_<LyapunovConfig>(m, "LyapunovConfig")
      .def(py::init<>())
      .def_readwrite("J", &LyapunovConfig::J)
      .def_readwrite("dt", &LyapunovConfig::dt)
      .def_readwrite("horizon", &LyapunovConfig::horizon)
      .def_readwrite("tol", &LyapunovConfig::tol);

  py::class_<RunConfig>(m, "RunConfig")
      .def_readwrite("model", &RunConfig::model)
      .def_readwrite("solver", &RunConfig::solver)
      .def_readwrite("lyapunov", &RunConfig::lyapunov)
      .def_property_readonly("init", [](const RunConfig& c) { return c.init.data; })
      .def("__eq__", [](const RunConfig& a, const RunConfig& b) { return a == b; });
  m.def("parse_config", [](const std::string& text) { return parse_config(text); });
  m.def("render_config", &render_config);

  py::class_<FrontGeometry>(m, "FrontGeometry")
      .def(py::init([](double g, double h) { return FrontGeometry{g, h, 0.0, 0.0}; }),
           py::arg("g"), py::arg("h"))
      .def_readwrite("g", &FrontGeometry::g)
      .def_readwrite("h", &FrontGeometry::h);
  m.def("x_to_y", &x_to_y);
  m.def("y_to_x", &y_to_x);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("status", [](const Trajectory& t) { return std::string(to_string(t.status)); })
      .def_property_readonly("accepted_steps", &Trajectory::accepted_steps)
      .def_readonly("rejected_steps", &Trajectory::rejected_steps)
      .def_readonly("highest_u", &Trajectory::highest_u)
      .def_readonly("highest_v", &Trajectory::highest_v)
      .def_readonly("lowest_value", &Trajectory::lowest_value)
      .def("summaries", &summaries)
      .def("snapshot", [](const Trajectory& t, std::size_t k) {
        const FrontState& s = t.snapshots.at(k);
        py::array_t<double> x(s.m.size()), u(s.m.size()), v(s.n.size());
        auto wx = x.mutable_unchecked<1>();
        auto wu = u.mutable_unchecked<1>();
        auto wv = v.mutable_unchecked<1>();
        for (int j = 0; j <= s.cells(); ++j) {
          wx(j) = y_to_x(s.geom, s.y(j));
          wu(j) = s.m[j];
          wv(j) = s.n[j];
        }
        return py::make_tuple(s.t, x, u, v);
      })
      .def_property_readonly("snapshot_count", [](const Trajectory& t) { return t.snapshots.size(); });

  m.def("simulate",
        [](const ModelSpec& spec, const InitialData& init, const SolverConfig& cfg) {
          py::gil_scoped_release release;
          return simulate(spec, init, cfg);
        },
        py::arg("spec"), py::arg("init"), py::arg("cfg"));

  m.def("classify",
        [](const Trajectory& traj, double L_star) {
          const Classification c = classify(traj, L_star);
          py::dict d;
          d["verdict"] = std::string(to_string(c.verdict));
          d["final_width"] = c.evidence.final_width;
          d["max_width"] = c.evidence.max_width;
          d["window_norm_peak"] = c.evidence.window_norm_peak;
          d["window_norm_floor"] = c.evidence.window_norm_floor;
          return d;
        },
        py::arg("traj"), py::arg("L_star"));

  py::class_<LyapunovEstimate>(m, "LyapunovEstimate")
      .def_readonly("lambda_", &LyapunovEstimate::lambda)
      .def_readonly("ci_low", &LyapunovEstimate::ci_low)
      .def_readonly("ci_high", &LyapunovEstimate::ci_high)
      .def_readonly("renorm_count", &LyapunovEstimate::renorm_count)
      .def_readonly("converged", &LyapunovEstimate::converged)
      .def_readonly("cone_preserved", &LyapunovEstimate::cone_preserved);

  m.def("lyapunov_exponent_constant",
        [](const Mat2& a0, double L, const Diffusivities& D, const LyapunovConfig& cfg) {
          py::gil_scoped_release release;
          return lyapunov_exponent(LinearizationMatrix::constant(a0), L, D, cfg);
        },
        py::arg("a0"), py::arg("L"), py::arg("D"), py::arg("cfg"));
  m.def("lyapunov_exponent",
        [](const ModelSpec& spec, double L, double shift, const LyapunovConfig& cfg) {
          py::gil_scoped_release release;
          return lyapunov_exponent(linearization(spec).shifted_x(shift), L, {spec.D1, spec.D2}, cfg);
        },
        py::arg("spec"), py::arg("L"), py::arg("shift") = 0.0, py::arg("cfg"));
  m.def("lyapunov_constant_oracle", &lyapunov_constant_oracle, py::arg("a0"), py::arg("L"),
        py::arg("D"));

  m.def("spatial_convergence",
        [](const ModelSpec& spec) {
          const ConvergenceStudy s = spatial_convergence(spec);
          py::list rows;
          for (const auto& r : s.rows) rows.append(py::make_tuple(r.J, r.dt, r.error, r.order));
          return rows;
        },
        py::arg("spec"));
}
