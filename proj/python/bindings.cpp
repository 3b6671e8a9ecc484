#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rpdepth/bounds.hpp"
#include "rpdepth/depth.hpp"
#include "rpdepth/io.hpp"
#include "rpdepth/sim.hpp"

namespace py = pybind11;
using namespace rpdepth;

namespace {

Modulus modulus_from_name(const std::string& name, double p, int d,
                          const Model* model) {
  if (name == "ellipt1") return Modulus::elliptical1();
  if (name == "ellipt2") return Modulus::elliptical2();
  if (name == "psym1") return Modulus::psym1(p, d);
  if (name == "psym2") return Modulus::psym2(p, d);
  if (name == "tight") {
    if (!model) throw std::invalid_argument("tight modulus needs a model");
    return Modulus::tight(*model);
  }
  throw std::invalid_argument("unknown modulus: " + name);
}

py::dict bound_to_dict(const BoundResult& r) {
  py::dict d;
  d["n"] = r.n;
  d["d"] = r.d;
  d["rate_argument"] = r.rate_argument;
  d["polar_angle"] = r.polar_angle;
  d["bound"] = r.bound;
  d["saturated"] = r.saturated;
  return d;
}

py::dict report_to_dict(const SimReport& r) {
  py::dict d;
  d["protocol"] = r.protocol;
  d["seed"] = r.master_seed;
  d["columns"] = r.data.columns;
  d["rows"] = r.data.rows;
  d["summary_columns"] = r.summary.columns;
  d["summary_rows"] = r.summary.rows;
  d["notes"] = r.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Randomized halfspace/projection depth with uniform error bounds";

  py::class_<Model>(m, "Model")
      .def_static("gaussian", &Model::gaussian_std, py::arg("d"))
      .def_static("student_t", &Model::student_t, py::arg("d"), py::arg("nu"))
      .def_static("uniform_ball", &Model::uniform_ball, py::arg("d"))
      .def_static(
          "p_symmetric",
          [](int d, double p, const std::string& marginal) {
            if (marginal == "gaussian") return Model::p_symmetric(d, p, gaussian_marginal());
            if (marginal == "cauchy") return Model::p_symmetric(d, p, cauchy_marginal());
            throw std::invalid_argument("built-in marginals: gaussian, cauchy");
          },
          py::arg("d"), py::arg("p"), py::arg("marginal"))
      .def_static(
          "elliptical",
          [](const Model& base, const Vec& mu, const Mat& sigma) {
            return Model::elliptical(base, mu, sigma);
          },
          py::arg("base"), py::arg("mu"), py::arg("sigma"))
      .def_static("from_json", &io::parse_model_json, py::arg("text"))
      .def_property_readonly("d", [](const Model& m) { return m.d; })
      .def_property_readonly("family", &Model::family_name)
      .def("__repr__", [](const Model& m) {
        return "<Model family=" + m.family_name() + " d=" + std::to_string(m.d) + ">";
      });

  py::class_<DirectionSet>(m, "DirectionSet")
      .def_property_readonly("directions",
                             [](const DirectionSet& s) { return s.directions; })
      .def_property_readonly("seed", [](const DirectionSet& s) { return s.seed; })
      .def_property_readonly("n", &DirectionSet::n)
      .def_static("from_rows", &DirectionSet::from_rows, py::arg("rows"),
                  py::arg("seed") = 0);

  m.def("sample_directions", &sample_directions, py::arg("n"), py::arg("d"),
        py::arg("seed"));
  m.def("great_circle_distance", &great_circle_distance, py::arg("u"), py::arg("v"));
  m.def("cap_area", &cap_area, py::arg("d"), py::arg("phi"));
  m.def("cap_area_inv", &cap_area_inv, py::arg("d"), py::arg("a"));
  m.def("max_spacing", &max_spacing, py::arg("directions"), py::arg("resolution"));

  m.def("exact_halfspace_depth", &exact_halfspace_depth, py::arg("model"), py::arg("x"));
  m.def("halfspace_function", &halfspace_function, py::arg("model"), py::arg("x"),
        py::arg("u"));
  m.def("whiten", &whiten, py::arg("sigma"), py::arg("mu"), py::arg("x"));
  m.def("marginal_cdf", &marginal_cdf, py::arg("model"), py::arg("t"));
  m.def("marginal_mad", &marginal_mad, py::arg("model"));

  m.def(
      "approx_halfspace_depth",
      [](const Model& model, const Vec& x, const DirectionSet& dirs) {
        const DepthResult r = approx_halfspace_depth(DepthTarget::of(model), x, dirs);
        return py::make_tuple(r.value, r.minimizing_index);
      },
      py::arg("model"), py::arg("x"), py::arg("directions"));
  m.def(
      "approx_halfspace_depth_data",
      [](const Mat& points, const Vec& x, const DirectionSet& dirs) {
        const Dataset data(points);
        const DepthResult r = approx_halfspace_depth(DepthTarget::of(data), x, dirs);
        return py::make_tuple(r.value, r.minimizing_index);
      },
      py::arg("points"), py::arg("x"), py::arg("directions"));
  m.def(
      "exact_halfspace_depth_2d",
      [](const Mat& points, const Vec& x) {
        return exact_halfspace_depth_2d(Dataset(points), x);
      },
      py::arg("points"), py::arg("x"));
  m.def("location_scale", &location_scale, py::arg("values"));
  m.def(
      "approx_projection_depth",
      [](const Model& model, const Vec& x, const DirectionSet& dirs, int k,
         std::optional<double> scale) {
        ProjectionDepthSpec spec;
        spec.k = k;
        spec.scale = scale;
        return approx_projection_depth(DepthTarget::of(model), x, dirs, spec).value;
      },
      py::arg("model"), py::arg("x"), py::arg("directions"), py::arg("k") = 2,
      py::arg("scale") = std::nullopt);
  m.def(
      "approx_projection_depth_data",
      [](const Mat& points, const Vec& x, const DirectionSet& dirs, int k) {
        ProjectionDepthSpec spec;
        spec.k = k;
        const Dataset data(points);
        return approx_projection_depth(DepthTarget::of(data), x, dirs, spec).value;
      },
      py::arg("points"), py::arg("x"), py::arg("directions"), py::arg("k") = 2);
  m.def(
      "approx_outlyingness",
      [](const Model& model, const Vec& x, const DirectionSet& dirs,
         std::optional<double> scale) {
        ProjectionDepthSpec spec;
        spec.scale = scale;
        return approx_outlyingness(DepthTarget::of(model), x, dirs, spec);
      },
      py::arg("model"), py::arg("x"), py::arg("directions"),
      py::arg("scale") = std::nullopt);

  m.def("tight_modulus", &tight_modulus, py::arg("model"), py::arg("eps"));
  m.def("zeta", &zeta, py::arg("tau"), py::arg("k"));
  m.def("zeta_inv", &zeta_inv, py::arg("z"), py::arg("k"));
  m.def("lipschitz_bounded_density", &lipschitz_bounded_density, py::arg("M"),
        py::arg("diam"), py::arg("d"));
  m.def("affine_condition_constant", &affine_condition_constant, py::arg("A"));
  m.def(
      "error_bound",
      [](long long n, int d, const std::string& modulus, double p, const Model* model) {
        return bound_to_dict(error_bound(n, d, modulus_from_name(modulus, p, d, model)));
      },
      py::arg("n"), py::arg("d"), py::arg("modulus") = "ellipt1", py::arg("p") = 2.0,
      py::arg("model") = nullptr);
  m.def(
      "plan_directions",
      [](double eps, int d, const std::string& modulus, long long n_max, double p,
         const Model* model) {
        const PlanResult r =
            plan_directions(eps, d, modulus_from_name(modulus, p, d, model), n_max);
        py::dict out;
        out["target_epsilon"] = r.target_epsilon;
        out["achievable"] = r.achievable;
        out["n_required"] = r.n_required;
        out["achieved_bound"] = r.achieved_bound;
        return out;
      },
      py::arg("eps"), py::arg("d"), py::arg("modulus") = "ellipt1",
      py::arg("n_max") = 10000000, py::arg("p") = 2.0, py::arg("model") = nullptr);
  m.def("projection_error_bound",
        [](long long n, int d, int k) { return bound_to_dict(projection_error_bound(n, d, k)); },
        py::arg("n"), py::arg("d"), py::arg("k") = 2);
  m.def(
      "empirical_total_bound",
      [](long long N, long long n, int d, const std::string& modulus, double slack,
         double p, const Model* model) {
        return empirical_total_bound(N, n, d, modulus_from_name(modulus, p, d, model),
                                     slack);
      },
      py::arg("N"), py::arg("n"), py::arg("d"), py::arg("modulus") = "ellipt1",
      py::arg("slack") = 0.0, py::arg("p") = 2.0, py::arg("model") = nullptr);

  m.def(
      "estimate_sup_error",
      [](const Model& model, const std::vector<long long>& n_grid, int runs,
         int points, std::uint64_t seed) {
        SimConfig cfg;
        cfg.model = model;
        cfg.n_grid = n_grid;
        cfg.runs = runs;
        cfg.points_per_run = points;
        cfg.master_seed = seed;
        return report_to_dict(estimate_sup_error(cfg));
      },
      py::arg("model"), py::arg("n_grid"), py::arg("runs") = 100,
      py::arg("points") = 500, py::arg("seed") = 1);
  m.def(
      "empirical_trajectory",
      [](const Model& model, long long N, const std::vector<long long>& n_grid,
         int runs, int points, std::uint64_t seed, double slack) {
        SimConfig cfg;
        cfg.model = model;
        cfg.N = N;
        cfg.n_grid = n_grid;
        cfg.runs = runs;
        cfg.points_per_run = points;
        cfg.master_seed = seed;
        cfg.slack_eps = slack;
        return report_to_dict(empirical_trajectory(cfg));
      },
      py::arg("model"), py::arg("N"), py::arg("n_grid"), py::arg("runs") = 20,
      py::arg("points") = 100, py::arg("seed") = 1, py::arg("slack") = 0.0);
  m.def("spacing_lil_diagnostic",
        [](int d, const std::vector<long long>& n_grid, int runs, std::uint64_t seed,
           int resolution) {
          return report_to_dict(spacing_lil_diagnostic(d, n_grid, runs, seed, resolution));
        },
        py::arg("d"), py::arg("n_grid"), py::arg("runs") = 100, py::arg("seed") = 1,
        py::arg("resolution") = 400000);
  m.def("atomic_nonuniformity_demo",
        [](const std::vector<double>& weights, const std::vector<long long>& n_grid,
           std::uint64_t seed) {
          return report_to_dict(atomic_nonuniformity_demo(weights, n_grid, seed));
        },
        py::arg("weights"), py::arg("n_grid"), py::arg("seed") = 1);
  m.def("outlyingness_divergence_demo",
        [](double S, const std::vector<long long>& n_grid,
           const std::vector<double>& x1_grid, std::uint64_t seed, int k) {
          return report_to_dict(outlyingness_divergence_demo(S, n_grid, x1_grid, seed, k));
        },
        py::arg("S"), py::arg("n_grid"), py::arg("x1_grid"), py::arg("seed") = 1,
        py::arg("k") = 2);

#ifdef VERSION_INFO
#define RPDEPTH_STR_(x) #x
#define RPDEPTH_STR(x) RPDEPTH_STR_(x)
  m.attr("__version__") = RPDEPTH_STR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
