#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpdepth/bounds.hpp"
#include "rpdepth/models.hpp"

namespace rpdepth {

// Monte Carlo verification harness. All protocols derive per-run seeds from
// the master seed with a counter split, so reports are bit-identical for a
// given config regardless of thread count, and adding runs never perturbs
// earlier ones.

struct SimConfig {
  Model model;
  std::vector<long long> n_grid;  // strictly increasing direction counts
  int runs = 100;
  int points_per_run = 500;
  std::uint64_t master_seed = 1;
  long long N = 0;         // empirical sample size (trajectory protocol)
  double slack_eps = 0.0;  // epsilon slack in the combined empirical bound
  int k = 2;               // c_k exponent where projection depth is involved
};

struct SimTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  double cell(std::size_t row, const std::string& column) const;
};

struct SimReport {
  std::string protocol;
  std::uint64_t master_seed = 0;
  SimTable data;
  SimTable summary;
  std::vector<std::string> notes;
};

// Figure-4 protocol: per run sample points_per_run points from the model and
// record max_i |D(x_i) - D_n(x_i)| for each n in n_grid (nested direction
// prefixes). Data columns: run, n, max_error, bound (tight bound when the
// model has a spherical marginal, NaN otherwise).
SimReport estimate_sup_error(const SimConfig& cfg);

// Figure-6 protocol: per run draw an N-sample, evaluate
// |D_n(x_i; P_hat) - D(x_i; P_hat)| at the first points_per_run sample points
// with the exact bivariate sweep as reference (d = 2; other d fall back to a
// labelled 10^6-direction surrogate). Errors are integer multiples of 1/N.
// Data columns: run, n, max_error, bound.
SimReport empirical_trajectory(const SimConfig& cfg);

// Spacing diagnostic: estimates R(n) = (n a_d(S_n) - log n)/log log n per run
// from the probe-grid maximal-spacing estimator. d must be 2 or 3.
// Data columns: run, n, ratio, spacing.
SimReport spacing_lil_diagnostic(int d, const std::vector<long long>& n_grid,
                                 int runs, std::uint64_t master_seed,
                                 int resolution = 400000);

// Atomic non-uniformity demo: atoms with the given weights on a regular
// polygon, x on a facet midpoint pushed outward by eps over a logarithmic
// grid in (1e-8, 1). Reports sup_eps D_n(x_eps) per n, which stays at or
// above the smallest weight. Data columns: n, sup_deficit, min_weight.
SimReport atomic_nonuniformity_demo(const std::vector<double>& weights,
                                    const std::vector<long long>& n_grid,
                                    std::uint64_t seed);

// Outlyingness divergence demo on the uniform circle (scale constant S):
// the O-deficit sup_{x1} (1 - cos gap) x1 / S grows linearly in x1 at fixed
// n while the projection-depth deficit stays below the zeta envelope.
// Data columns: n, o_deficit_sup, pd_deficit_sup, pd_bound, x1_max.
SimReport outlyingness_divergence_demo(double S,
                                       const std::vector<long long>& n_grid,
                                       const std::vector<double>& x1_grid,
                                       std::uint64_t seed, int k = 2);

// Worker count: DEPTH_APPROX_THREADS when set, hardware concurrency otherwise.
int thread_count();

}  // namespace rpdepth
