#include "rpdepth/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rpdepth/depth.hpp"
#include "rpdepth/rng.hpp"
#include "rpdepth/special.hpp"

namespace rpdepth {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_grid(const std::vector<long long>& n_grid) {
  if (n_grid.empty()) throw std::invalid_argument("n_grid must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1 || (i > 0 && n_grid[i] <= n_grid[i - 1])) {
      throw std::invalid_argument("n_grid must be strictly increasing and positive");
    }
  }
}

void validate_common(const SimConfig& cfg) {
  validate_grid(cfg.n_grid);
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (cfg.points_per_run < 1) throw std::invalid_argument("points_per_run must be >= 1");
}

// Runs tasks 0..count-1 on the worker pool; each task writes only its own
// output slot, so the aggregate is independent of scheduling.
void parallel_runs(int count, const std::function<void(int)>& task) {
  const int workers = std::min(count, thread_count());
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Theoretical bound column: the tight envelope when available.
std::vector<double> tight_bounds(const Model& model, int d,
                                 const std::vector<long long>& n_grid) {
  std::vector<double> bounds(n_grid.size(), kNaN);
  if (!model.has_spherical_marginal()) return bounds;
  const Modulus tight = Modulus::tight(model);
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    if (n_grid[g] >= 16) bounds[g] = error_bound(n_grid[g], d, tight).bound;
  }
  return bounds;
}

void append_summaries(SimReport& report, const std::vector<long long>& n_grid,
                      const std::vector<double>& bounds,
                      const std::vector<std::vector<double>>& per_n_values) {
  report.summary.columns = {"n", "mean", "max", "q50", "q90", "bound"};
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    std::vector<double> v = per_n_values[g];
    std::sort(v.begin(), v.end());
    const double mean =
        std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    auto quantile = [&](double q) {
      const double pos = q * (static_cast<double>(v.size()) - 1.0);
      const std::size_t lo = static_cast<std::size_t>(pos);
      const std::size_t hi = std::min(lo + 1, v.size() - 1);
      return v[lo] + (pos - lo) * (v[hi] - v[lo]);
    };
    report.summary.rows.push_back({static_cast<double>(n_grid[g]), mean, v.back(),
                                   quantile(0.5), quantile(0.9), bounds[g]});
  }
}

}  // namespace

double SimTable::cell(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == column) return rows.at(row).at(c);
  }
  throw std::invalid_argument("SimTable: no column named " + column);
}

int thread_count() {
  if (const char* env = std::getenv("DEPTH_APPROX_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

SimReport estimate_sup_error(const SimConfig& cfg) {
  validate_common(cfg);
  if (!cfg.model.samplable()) {
    throw std::invalid_argument("estimate_sup_error: model has no sampler / exact depth");
  }
  const int d = cfg.model.d;
  const long long n_max = cfg.n_grid.back();
  const auto bounds = tight_bounds(cfg.model, d, cfg.n_grid);

  std::vector<std::vector<double>> max_err(cfg.runs,
                                           std::vector<double>(cfg.n_grid.size(), 0.0));
  parallel_runs(cfg.runs, [&](int run) {
    const std::uint64_t run_seed = substream_seed(cfg.master_seed, run);
    Rng point_rng(substream_seed(run_seed, 0));
    const Mat points = sample_points(cfg.model, cfg.points_per_run, point_rng);
    const DirectionSet dirs =
        sample_directions(static_cast<int>(n_max), d, substream_seed(run_seed, 1));

    std::vector<double> worst(cfg.n_grid.size(), 0.0);
    for (int pt = 0; pt < cfg.points_per_run; ++pt) {
      const Vec x = points.row(pt).transpose();
      const double exact = exact_halfspace_depth(cfg.model, x);
      double running = std::numeric_limits<double>::infinity();
      std::size_t grid_pos = 0;
      for (long long i = 0; i < n_max; ++i) {
        running = std::min(running, halfspace_function(cfg.model, x,
                                                       dirs.directions.row(i).transpose()));
        if (i + 1 == cfg.n_grid[grid_pos]) {
          worst[grid_pos] = std::max(worst[grid_pos], std::fabs(running - exact));
          if (++grid_pos == cfg.n_grid.size()) break;
        }
      }
    }
    max_err[run] = std::move(worst);
  });

  SimReport report;
  report.protocol = "figure4";
  report.master_seed = cfg.master_seed;
  report.notes.push_back(
      "max over sampled test points; a lower bound on the true supremum");
  report.data.columns = {"run", "n", "max_error", "bound"};
  std::vector<std::vector<double>> per_n(cfg.n_grid.size());
  for (int run = 0; run < cfg.runs; ++run) {
    for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
      report.data.rows.push_back({static_cast<double>(run),
                                  static_cast<double>(cfg.n_grid[g]),
                                  max_err[run][g], bounds[g]});
      per_n[g].push_back(max_err[run][g]);
    }
  }
  append_summaries(report, cfg.n_grid, bounds, per_n);
  return report;
}

SimReport empirical_trajectory(const SimConfig& cfg) {
  validate_common(cfg);
  if (cfg.N < 1) throw std::invalid_argument("empirical_trajectory: N must be set");
  if (!cfg.model.samplable()) {
    throw std::invalid_argument("empirical_trajectory: model has no sampler");
  }
  const int d = cfg.model.d;
  const long long n_max = cfg.n_grid.back();
  const bool exact_reference = d == 2;

  std::vector<double> bounds(cfg.n_grid.size(), kNaN);
  if (cfg.model.has_spherical_marginal() && cfg.N >= 16) {
    const Modulus tight = Modulus::tight(cfg.model);
    for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
      if (cfg.n_grid[g] >= 16) {
        bounds[g] = empirical_total_bound(cfg.N, cfg.n_grid[g], d, tight, cfg.slack_eps);
      }
    }
  }

  std::vector<std::vector<double>> max_err(cfg.runs,
                                           std::vector<double>(cfg.n_grid.size(), 0.0));
  parallel_runs(cfg.runs, [&](int run) {
    const std::uint64_t run_seed = substream_seed(cfg.master_seed, run);
    Rng sample_rng(substream_seed(run_seed, 0));
    const Dataset data(sample_points(cfg.model, static_cast<int>(cfg.N), sample_rng));
    const int q = static_cast<int>(std::min<long long>(cfg.points_per_run, cfg.N));
    const Mat queries = data.points.topRows(q);
    const DirectionSet dirs =
        sample_directions(static_cast<int>(n_max), d, substream_seed(run_seed, 1));

    const Eigen::MatrixXi approx =
        empirical_prefix_min_counts(data, queries, dirs, cfg.n_grid);

    std::vector<long long> reference(q);
    if (exact_reference) {
      for (int k = 0; k < q; ++k) {
        reference[k] = exact_halfspace_depth_2d_count(data, queries.row(k).transpose());
      }
    } else {
      // Surrogate reference: a dense 10^6-direction approximation.
      const DirectionSet dense =
          sample_directions(1000000, d, substream_seed(run_seed, 2));
      const Eigen::MatrixXi ref =
          empirical_prefix_min_counts(data, queries, dense, {1000000});
      for (int k = 0; k < q; ++k) reference[k] = ref(k, 0);
    }

    for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
      long long worst = 0;
      for (int k = 0; k < q; ++k) {
        worst = std::max(worst, std::llabs(approx(k, static_cast<int>(g)) - reference[k]));
      }
      max_err[run][g] = static_cast<double>(worst) / static_cast<double>(cfg.N);
    }
  });

  SimReport report;
  report.protocol = "figure6";
  report.master_seed = cfg.master_seed;
  report.notes.push_back(exact_reference ? "reference=exact_sweep_2d"
                                         : "reference=surrogate_1e6_directions");
  report.notes.push_back(
      "max over sampled test points; a lower bound on the true supremum");
  report.data.columns = {"run", "n", "max_error", "bound"};
  std::vector<std::vector<double>> per_n(cfg.n_grid.size());
  for (int run = 0; run < cfg.runs; ++run) {
    for (std::size_t g = 0; g < cfg.n_grid.size(); ++g) {
      report.data.rows.push_back({static_cast<double>(run),
                                  static_cast<double>(cfg.n_grid[g]),
                                  max_err[run][g], bounds[g]});
      per_n[g].push_back(max_err[run][g]);
    }
  }
  append_summaries(report, cfg.n_grid, bounds, per_n);
  return report;
}

SimReport spacing_lil_diagnostic(int d, const std::vector<long long>& n_grid,
                                 int runs, std::uint64_t master_seed,
                                 int resolution) {
  if (d != 2 && d != 3) {
    throw std::invalid_argument("spacing_lil_diagnostic: estimator is restricted to d in {2, 3}");
  }
  validate_grid(n_grid);
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  const long long n_max = n_grid.back();

  std::vector<std::vector<std::pair<double, double>>> results(
      runs, std::vector<std::pair<double, double>>(n_grid.size()));
  parallel_runs(runs, [&](int run) {
    const std::uint64_t run_seed = substream_seed(master_seed, run);
    const DirectionSet dirs =
        sample_directions(static_cast<int>(n_max), d, substream_seed(run_seed, 1));
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
      const long long n = n_grid[g];
      const DirectionSet prefix =
          DirectionSet{dirs.directions.topRows(n), dirs.seed};
      const double spacing = max_spacing(prefix, resolution);
      const double ln = std::log(static_cast<double>(n));
      const double ratio = (n * cap_area(d, spacing) - ln) / std::log(ln);
      results[run][g] = {ratio, spacing};
    }
  });

  SimReport report;
  report.protocol = "spacing";
  report.master_seed = master_seed;
  report.data.columns = {"run", "n", "ratio", "spacing"};
  std::vector<std::vector<double>> per_n(n_grid.size());
  std::vector<double> bounds(n_grid.size(), kNaN);
  for (int run = 0; run < runs; ++run) {
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
      report.data.rows.push_back({static_cast<double>(run),
                                  static_cast<double>(n_grid[g]),
                                  results[run][g].first, results[run][g].second});
      per_n[g].push_back(results[run][g].first);
    }
  }
  append_summaries(report, n_grid, bounds, per_n);
  return report;
}

SimReport atomic_nonuniformity_demo(const std::vector<double>& weights,
                                    const std::vector<long long>& n_grid,
                                    std::uint64_t seed) {
  const int m = static_cast<int>(weights.size());
  if (m < 3) throw std::invalid_argument("atomic_nonuniformity_demo: need at least 3 atoms");
  double total = 0.0;
  double min_weight = std::numeric_limits<double>::infinity();
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("atomic_nonuniformity_demo: weights must be positive");
    total += w;
    min_weight = std::min(min_weight, w);
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("atomic_nonuniformity_demo: weights must sum to 1");
  }
  validate_grid(n_grid);

  // Atoms on the unit circle; x sits on the midpoint of the facet between
  // atoms 0 and 1 and is pushed outward along the facet normal.
  Mat atoms(m, 2);
  for (int j = 0; j < m; ++j) {
    const double a = 2.0 * M_PI * j / m;
    atoms(j, 0) = std::cos(a);
    atoms(j, 1) = std::sin(a);
  }
  Vec x0 = 0.5 * (atoms.row(0) + atoms.row(1)).transpose();
  Vec outward = x0 / x0.norm();

  // Logarithmic eps grid in (1e-8, 1).
  std::vector<double> eps_grid;
  for (int j = 0; j < 40; ++j) eps_grid.push_back(std::pow(10.0, -8.0 + 0.2 * j));

  const long long n_max = n_grid.back();
  const DirectionSet dirs = sample_directions(static_cast<int>(n_max), 2, seed);

  SimReport report;
  report.protocol = "atomic";
  report.master_seed = seed;
  report.data.columns = {"n", "sup_deficit", "min_weight"};
  for (long long n : n_grid) {
    double sup = 0.0;
    for (double eps : eps_grid) {
      const Vec xe = x0 + eps * outward;
      // D(x_eps) = 0 outside the hull, so the deficit is D_n itself.
      double dn = 1.0;
      for (long long i = 0; i < n; ++i) {
        const Vec u = dirs.directions.row(i).transpose();
        const double t = u.dot(xe);
        double mass = 0.0;
        for (int j = 0; j < m; ++j) {
          if (u.dot(atoms.row(j).transpose()) <= t) mass += weights[j];
        }
        dn = std::min(dn, mass);
        if (dn == 0.0) break;
      }
      sup = std::max(sup, dn);
    }
    report.data.rows.push_back({static_cast<double>(n), sup, min_weight});
  }
  return report;
}

SimReport outlyingness_divergence_demo(double S,
                                       const std::vector<long long>& n_grid,
                                       const std::vector<double>& x1_grid,
                                       std::uint64_t seed, int k) {
  if (!(S > 0.0)) throw std::invalid_argument("outlyingness_divergence_demo: S must be positive");
  if (x1_grid.empty()) throw std::invalid_argument("outlyingness_divergence_demo: empty x1 grid");
  for (double x1 : x1_grid) {
    if (!(x1 > 0.0)) throw std::invalid_argument("outlyingness_divergence_demo: x1 values must be positive");
  }
  validate_grid(n_grid);

  const long long n_max = n_grid.back();
  const DirectionSet dirs = sample_directions(static_cast<int>(n_max), 2, seed);

  SimReport report;
  report.protocol = "outlyingness";
  report.master_seed = seed;
  report.data.columns = {"n", "o_deficit_sup", "pd_deficit_sup", "pd_bound", "x1_max"};

  double max_cos = -1.0;
  std::size_t grid_pos = 0;
  for (long long i = 0; i < n_max && grid_pos < n_grid.size(); ++i) {
    max_cos = std::max(max_cos, dirs.directions(i, 0));
    if (i + 1 != n_grid[grid_pos]) continue;
    const long long n = n_grid[grid_pos++];
    // For x = (x1, 0): O(x) = x1/S, O_n(x) = x1 max_cos / S, and the
    // projection depths are the c_k transforms of the two.
    double o_sup = 0.0, pd_sup = 0.0, x1_max = 0.0;
    for (double x1 : x1_grid) {
      const double o = x1 / S;
      const double on = x1 * max_cos / S;
      o_sup = std::max(o_sup, o - on);
      pd_sup = std::max(pd_sup, c_transform(on, k) - c_transform(o, k));
      x1_max = std::max(x1_max, x1);
    }
    const double pd_bound = n >= 16 ? projection_error_bound(n, 2, k).bound : kNaN;
    report.data.rows.push_back({static_cast<double>(n), o_sup, pd_sup, pd_bound, x1_max});
  }
  return report;
}

}  // namespace rpdepth
