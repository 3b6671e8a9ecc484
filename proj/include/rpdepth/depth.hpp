#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rpdepth/models.hpp"
#include "rpdepth/sphere.hpp"

namespace rpdepth {

// What the depth is taken with respect to: an analytic model or an empirical
// point cloud. Non-owning view; the referee must outlive the target.
struct DepthTarget {
  const Model* model = nullptr;
  const Dataset* data = nullptr;

  static DepthTarget of(const Model& m) { return DepthTarget{&m, nullptr}; }
  static DepthTarget of(const Dataset& ds) { return DepthTarget{nullptr, &ds}; }
  int dim() const;
};

// Parameters of the generalized projection depth PD = c(outlyingness) for the
// transform family c_k(x) = 1/(1 + (x)_+^k). Location is the median and scale
// the MAD for empirical targets; analytic targets use the constant scale
// `scale` (marginal MAD when unset). A custom transform c may be supplied;
// the bound machinery only covers the c_k family.
struct ProjectionDepthSpec {
  int k = 2;
  std::optional<double> scale;
  std::function<double(double)> c_custom;
};

struct DepthResult {
  double value = 0.0;
  int n_directions = 0;
  int minimizing_index = -1;  // which direction realized the min
};

// The transform c_k: 1 for x <= 0, 1/(1 + x^k) for x > 0 (0 at +infinity).
double c_transform(double x, int k);

// Randomized halfspace depth D_n(x) = min_i phi_x(U_i). For empirical targets
// phi_x(U_i) counts <U_i, X_j> <= <U_i, x> with ties inside.
DepthResult approx_halfspace_depth(const DepthTarget& target, const Vec& x,
                                   const DirectionSet& dirs);

// Exact bivariate empirical halfspace depth by an angular sweep, O(N log N).
double exact_halfspace_depth_2d(const Dataset& data, const Vec& x);
// Same, returned as the integer count of points in the minimizing halfplane.
long long exact_halfspace_depth_2d_count(const Dataset& data, const Vec& x);

// Median and MAD with the midpoint rule for even counts.
std::pair<double, double> location_scale(std::vector<double> values);

DepthResult approx_projection_depth(const DepthTarget& target, const Vec& x,
                                    const DirectionSet& dirs,
                                    const ProjectionDepthSpec& spec);

// Randomized Stahel-Donoho outlyingness O_n(x) = max_i of the standardized
// projections; +infinity when some direction has zero scale and positive
// numerator.
double approx_outlyingness(const DepthTarget& target, const Vec& x,
                           const DirectionSet& dirs,
                           const ProjectionDepthSpec& spec);

// Batched empirical randomized depth: for every query row and every prefix
// length in n_grid (ascending), the minimal halfspace count over the first n
// directions. Entry (q, g) * 1/N equals approx_halfspace_depth with the
// prefix direction set; computed by sorting projections once per direction.
Eigen::MatrixXi empirical_prefix_min_counts(const Dataset& data,
                                            const Mat& queries,
                                            const DirectionSet& dirs,
                                            const std::vector<long long>& n_grid);

}  // namespace rpdepth
