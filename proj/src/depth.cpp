#include "rpdepth/depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rpdepth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(int target_d, const Vec& x, const DirectionSet& dirs) {
  if (x.size() != target_d) throw std::invalid_argument("query dimension does not match target");
  if (dirs.d() != target_d) throw std::invalid_argument("direction dimension does not match target");
}

// Empirical halfspace count #{j : <u, X_j> <= <u, x>}; ties at equality are
// inside (closed halfspaces).
long long halfspace_count(const Dataset& data, const Vec& x, const Vec& u) {
  const double t = u.dot(x);
  long long count = 0;
  for (int j = 0; j < data.n(); ++j) {
    if (u.dot(data.points.row(j).transpose()) <= t) ++count;
  }
  return count;
}

// Standardized projection (<u, x> - m)/s with the zero-scale conventions:
// +inf for positive numerator, 0 otherwise.
double standardized(double proj, double m, double s) {
  const double num = proj - m;
  if (s > 0.0) return num / s;
  return num > 0.0 ? kInf : 0.0;
}

// Per-direction outlyingness for analytic targets: <u, x> / (||u||_p S).
// Covers the spherical families (p = 2, ||u||_p = 1) and p-symmetric ones,
// whose projections satisfy m_u = 0 and s_u = ||u||_p MAD(X_1).
struct AnalyticProjection {
  double S = 0.0;
  double p = 2.0;

  static AnalyticProjection prepare(const Model& model, const ProjectionDepthSpec& spec) {
    if (model.family == Family::elliptical) {
      throw std::invalid_argument(
          "projection depth: analytic path needs a spherical or p-symmetric model; "
          "whiten or supply samples");
    }
    AnalyticProjection ap;
    ap.p = model.family == Family::p_symmetric ? model.p : 2.0;
    ap.S = spec.scale ? *spec.scale : marginal_mad(model);
    if (!(ap.S > 0.0)) throw std::invalid_argument("projection depth: scale must be positive");
    return ap;
  }

  double value(const Vec& x, const Vec& u) const {
    return x.dot(u) / (lq_norm(u, p) * S);
  }
};

double transform(const ProjectionDepthSpec& spec, double outlyingness) {
  if (spec.c_custom) return spec.c_custom(outlyingness);
  return c_transform(outlyingness, spec.k);
}

}  // namespace

int DepthTarget::dim() const {
  if (model) return model->d;
  if (data) return data->d();
  throw std::invalid_argument("DepthTarget: empty target");
}

double c_transform(double x, int k) {
  if (k < 1) throw std::invalid_argument("c_transform: k must be >= 1");
  if (!(x > 0.0)) return 1.0;  // c = 1 on (-inf, 0]
  if (std::isinf(x)) return 0.0;
  return 1.0 / (1.0 + std::pow(x, k));
}

DepthResult approx_halfspace_depth(const DepthTarget& target, const Vec& x,
                                   const DirectionSet& dirs) {
  check_dims(target.dim(), x, dirs);
  DepthResult res;
  res.n_directions = dirs.n();
  res.value = kInf;
  for (int i = 0; i < dirs.n(); ++i) {
    const Vec u = dirs.directions.row(i).transpose();
    const double phi = target.model
                           ? halfspace_function(*target.model, x, u)
                           : static_cast<double>(halfspace_count(*target.data, x, u)) /
                                 target.data->n();
    if (phi < res.value) {
      res.value = phi;
      res.minimizing_index = i;
    }
  }
  return res;
}

long long exact_halfspace_depth_2d_count(const Dataset& data, const Vec& x) {
  if (data.d() != 2) throw std::invalid_argument("exact_halfspace_depth_2d: d must be 2");
  if (x.size() != 2) throw std::invalid_argument("exact_halfspace_depth_2d: query must be 2-dimensional");

  // Points coincident with x lie in every closed halfplane through x; the
  // others are classified by their angle around x. A halfplane with normal at
  // angle alpha contains exactly the angles in the closed semicircle
  // [alpha + pi/2, alpha + 3pi/2], so the depth is the minimal closed
  // semicircle count. The count is piecewise constant in the semicircle start
  // with breakpoints at theta_j and theta_j - pi; minima are attained on open
  // intervals, so evaluating at midpoints between consecutive breakpoints is
  // exact.
  long long coincident = 0;
  std::vector<double> angles;
  angles.reserve(data.n());
  for (int j = 0; j < data.n(); ++j) {
    const double vx = data.points(j, 0) - x[0];
    const double vy = data.points(j, 1) - x[1];
    if (vx == 0.0 && vy == 0.0) {
      ++coincident;
      continue;
    }
    double a = std::atan2(vy, vx);
    if (a < 0) a += 2.0 * M_PI;
    angles.push_back(a);
  }
  if (angles.empty()) return coincident;

  std::sort(angles.begin(), angles.end());
  std::vector<double> breaks;
  breaks.reserve(2 * angles.size());
  for (double a : angles) {
    breaks.push_back(a);
    double b = a - M_PI;
    if (b < 0) b += 2.0 * M_PI;
    breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Doubled angle array for wrap-free range counting.
  std::vector<double> doubled(angles);
  for (double a : angles) doubled.push_back(a + 2.0 * M_PI);

  auto semicircle_count = [&](double s) {
    if (s >= 2.0 * M_PI) s -= 2.0 * M_PI;
    const auto lo = std::lower_bound(doubled.begin(), doubled.end(), s);
    const auto hi = std::upper_bound(doubled.begin(), doubled.end(), s + M_PI);
    return static_cast<long long>(hi - lo);
  };

  long long best = std::numeric_limits<long long>::max();
  const std::size_t m = breaks.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double left = breaks[i];
    const double right = i + 1 < m ? breaks[i + 1] : breaks[0] + 2.0 * M_PI;
    if (right <= left) continue;
    best = std::min(best, semicircle_count(0.5 * (left + right)));
  }
  return coincident + best;
}

double exact_halfspace_depth_2d(const Dataset& data, const Vec& x) {
  return static_cast<double>(exact_halfspace_depth_2d_count(data, x)) / data.n();
}

std::pair<double, double> location_scale(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("location_scale: empty sample");
  auto median_inplace = [](std::vector<double>& v) {
    const std::size_t n = v.size();
    const std::size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double m = v[mid];
    if (n % 2 == 0) {
      // Midpoint of the two central order statistics.
      const double lower = *std::max_element(v.begin(), v.begin() + mid);
      m = 0.5 * (lower + m);
    }
    return m;
  };
  const double m = median_inplace(values);
  for (double& v : values) v = std::fabs(v - m);
  const double s = median_inplace(values);
  return {m, s};
}

DepthResult approx_projection_depth(const DepthTarget& target, const Vec& x,
                                    const DirectionSet& dirs,
                                    const ProjectionDepthSpec& spec) {
  check_dims(target.dim(), x, dirs);
  DepthResult res;
  res.n_directions = dirs.n();
  res.value = kInf;

  if (target.model) {
    const auto ap = AnalyticProjection::prepare(*target.model, spec);
    for (int i = 0; i < dirs.n(); ++i) {
      const Vec u = dirs.directions.row(i).transpose();
      const double depth = transform(spec, ap.value(x, u));
      if (depth < res.value) {
        res.value = depth;
        res.minimizing_index = i;
      }
    }
    return res;
  }

  std::vector<double> projections(target.data->n());
  for (int i = 0; i < dirs.n(); ++i) {
    const Vec u = dirs.directions.row(i).transpose();
    for (int j = 0; j < target.data->n(); ++j) {
      projections[j] = u.dot(target.data->points.row(j).transpose());
    }
    const auto [m, s] = location_scale(projections);
    const double depth = transform(spec, standardized(u.dot(x), m, s));
    if (depth < res.value) {
      res.value = depth;
      res.minimizing_index = i;
    }
  }
  return res;
}

double approx_outlyingness(const DepthTarget& target, const Vec& x,
                           const DirectionSet& dirs,
                           const ProjectionDepthSpec& spec) {
  check_dims(target.dim(), x, dirs);
  double best = -kInf;

  if (target.model) {
    const auto ap = AnalyticProjection::prepare(*target.model, spec);
    for (int i = 0; i < dirs.n(); ++i) {
      best = std::max(best, ap.value(x, dirs.directions.row(i).transpose()));
    }
    return best;
  }

  std::vector<double> projections(target.data->n());
  for (int i = 0; i < dirs.n(); ++i) {
    const Vec u = dirs.directions.row(i).transpose();
    for (int j = 0; j < target.data->n(); ++j) {
      projections[j] = u.dot(target.data->points.row(j).transpose());
    }
    const auto [m, s] = location_scale(projections);
    best = std::max(best, standardized(u.dot(x), m, s));
  }
  return best;
}

Eigen::MatrixXi empirical_prefix_min_counts(const Dataset& data,
                                            const Mat& queries,
                                            const DirectionSet& dirs,
                                            const std::vector<long long>& n_grid) {
  if (queries.cols() != data.d() || dirs.d() != data.d()) {
    throw std::invalid_argument("empirical_prefix_min_counts: dimension mismatch");
  }
  if (n_grid.empty()) throw std::invalid_argument("empirical_prefix_min_counts: empty n_grid");
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    if (n_grid[g] < 1 || n_grid[g] > dirs.n() || (g > 0 && n_grid[g] <= n_grid[g - 1])) {
      throw std::invalid_argument("empirical_prefix_min_counts: n_grid must be increasing and within the direction count");
    }
  }

  const int q = static_cast<int>(queries.rows());
  Eigen::MatrixXi out(q, static_cast<int>(n_grid.size()));
  std::vector<int> running(q, data.n() + 1);
  std::vector<double> proj(data.n());
  std::size_t grid_pos = 0;

  for (int i = 0; i < dirs.n() && grid_pos < n_grid.size(); ++i) {
    const Vec u = dirs.directions.row(i).transpose();
    for (int j = 0; j < data.n(); ++j) {
      proj[j] = u.dot(data.points.row(j).transpose());
    }
    std::sort(proj.begin(), proj.end());
    for (int k = 0; k < q; ++k) {
      const double t = u.dot(queries.row(k).transpose());
      const int count = static_cast<int>(
          std::upper_bound(proj.begin(), proj.end(), t) - proj.begin());
      running[k] = std::min(running[k], count);
    }
    if (i + 1 == n_grid[grid_pos]) {
      for (int k = 0; k < q; ++k) out(k, static_cast<int>(grid_pos)) = running[k];
      ++grid_pos;
    }
  }
  return out;
}

}  // namespace rpdepth
