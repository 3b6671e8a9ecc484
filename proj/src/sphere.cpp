#include "rpdepth/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "rpdepth/rng.hpp"
#include "rpdepth/special.hpp"

namespace rpdepth {

namespace {

void check_unit_rows(const Mat& rows) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    if (std::fabs(rows.row(i).norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("direction rows must have unit norm");
    }
  }
}

double chord_to_geodesic(double chord2) {
  const double half = 0.5 * std::sqrt(std::max(0.0, chord2));
  return 2.0 * std::asin(std::min(1.0, half));
}

// Nearest-neighbor queries against a fixed set of unit vectors. Sorted angles
// for d = 2, a bucket grid over the unit cube for large d = 3 sets, brute
// force otherwise.
class NnIndex {
 public:
  explicit NnIndex(const Mat& pts) : pts_(pts), d_(static_cast<int>(pts.cols())) {
    const int n = static_cast<int>(pts.rows());
    if (d_ == 2) {
      angles_.reserve(n);
      for (int i = 0; i < n; ++i) {
        double a = std::atan2(pts(i, 1), pts(i, 0));
        if (a < 0) a += 2.0 * M_PI;
        angles_.push_back(a);
      }
      std::sort(angles_.begin(), angles_.end());
    } else if (d_ == 3 && n > 512) {
      h_ = std::max(0.02, 2.0 * std::sqrt(4.0 * M_PI / n));
      m_ = static_cast<int>(std::ceil(2.0 / h_));
      std::vector<int> counts(static_cast<std::size_t>(m_) * m_ * m_ + 1, 0);
      for (int i = 0; i < n; ++i) counts[cell_of(pts.row(i)) + 1]++;
      for (std::size_t c = 1; c < counts.size(); ++c) counts[c] += counts[c - 1];
      order_.resize(n);
      std::vector<int> cursor(counts.begin(), counts.end() - 1);
      for (int i = 0; i < n; ++i) order_[cursor[cell_of(pts.row(i))]++] = i;
      cell_start_ = std::move(counts);
    }
  }

  double min_geodesic(const Vec& q) const {
    if (d_ == 2) {
      double a = std::atan2(q[1], q[0]);
      if (a < 0) a += 2.0 * M_PI;
      auto it = std::lower_bound(angles_.begin(), angles_.end(), a);
      double best = 2.0 * M_PI;
      auto consider = [&](double b) {
        double delta = std::fabs(a - b);
        best = std::min(best, std::min(delta, 2.0 * M_PI - delta));
      };
      consider(it == angles_.end() ? angles_.front() : *it);
      consider(it == angles_.begin() ? angles_.back() : *(it - 1));
      return best;
    }
    if (!cell_start_.empty()) return grid_query(q);
    double best2 = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < pts_.rows(); ++i) {
      best2 = std::min(best2, (pts_.row(i).transpose() - q).squaredNorm());
    }
    return chord_to_geodesic(best2);
  }

 private:
  int coord_cell(double x) const {
    int c = static_cast<int>((x + 1.0) / h_);
    return std::clamp(c, 0, m_ - 1);
  }
  std::size_t cell_index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * m_ + j) * m_ + k;
  }
  std::size_t cell_of(const Eigen::RowVector3d& p) const {
    return cell_index(coord_cell(p[0]), coord_cell(p[1]), coord_cell(p[2]));
  }

  double grid_query(const Vec& q) const {
    const int qi = coord_cell(q[0]), qj = coord_cell(q[1]), qk = coord_cell(q[2]);
    double best2 = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring < m_; ++ring) {
      if (ring > 0) {
        const double reach = (ring - 1) * h_;
        if (reach * reach > best2) break;
      }
      for (int di = -ring; di <= ring; ++di) {
        const int i = qi + di;
        if (i < 0 || i >= m_) continue;
        for (int dj = -ring; dj <= ring; ++dj) {
          const int j = qj + dj;
          if (j < 0 || j >= m_) continue;
          const bool face = std::abs(di) == ring || std::abs(dj) == ring;
          const int step = face ? 1 : 2 * ring;
          for (int dk = -ring; dk <= ring; dk += std::max(1, step)) {
            if (!face && std::abs(dk) != ring) continue;
            const int k = qk + dk;
            if (k < 0 || k >= m_) continue;
            const std::size_t c = cell_index(i, j, k);
            for (int idx = cell_start_[c]; idx < cell_start_[c + 1]; ++idx) {
              const int row = order_[idx];
              const double d2 = (pts_.row(row).transpose() - q).squaredNorm();
              best2 = std::min(best2, d2);
            }
          }
        }
      }
    }
    return chord_to_geodesic(best2);
  }

  const Mat& pts_;
  int d_;
  std::vector<double> angles_;     // d = 2
  double h_ = 0.0;                 // d = 3 grid
  int m_ = 0;
  std::vector<int> cell_start_;
  std::vector<int> order_;
};

// Keeps the K probes with the largest nearest-neighbor distance.
class TopProbes {
 public:
  explicit TopProbes(std::size_t k) : k_(k) {}
  void push(double value, const Vec& p) {
    if (k_ == 0) return;
    if (heap_.size() < k_) {
      heap_.emplace(value, p);
    } else if (value > heap_.top().first) {
      heap_.pop();
      heap_.emplace(value, p);
    }
  }
  std::vector<Vec> take() {
    std::vector<Vec> out;
    out.reserve(heap_.size());
    while (!heap_.empty()) {
      out.push_back(heap_.top().second);
      heap_.pop();
    }
    return out;
  }

 private:
  using Entry = std::pair<double, Vec>;
  struct Cmp {
    bool operator()(const Entry& a, const Entry& b) const { return a.first > b.first; }
  };
  std::size_t k_;
  std::priority_queue<Entry, std::vector<Entry>, Cmp> heap_;
};

// Deterministic coordinate hill-climb maximizing the NN distance around p.
double refine_probe(const NnIndex& idx, Vec p, double h) {
  p.normalize();
  double best = idx.min_geodesic(p);
  for (int it = 0; it < 80 && h > 1e-10; ++it) {
    double cand_val = best;
    Vec cand;
    for (Eigen::Index a = 0; a < p.size(); ++a) {
      for (double s : {1.0, -1.0}) {
        Vec c = p;
        c[a] += s * h;
        c.normalize();
        const double v = idx.min_geodesic(c);
        if (v > cand_val) {
          cand_val = v;
          cand = c;
        }
      }
    }
    if (cand_val > best) {
      best = cand_val;
      p = cand;
    } else {
      h *= 0.5;
    }
  }
  return best;
}

}  // namespace

Direction::Direction(Vec c) : coords(std::move(c)) {
  if (coords.size() < 1) throw std::invalid_argument("Direction: dimension must be >= 1");
  if (std::fabs(coords.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("Direction: coordinates must have unit norm");
  }
}

DirectionSet DirectionSet::from_rows(Mat rows, std::uint64_t seed) {
  if (rows.rows() < 1) throw std::invalid_argument("DirectionSet: need at least one direction");
  check_unit_rows(rows);
  return DirectionSet{std::move(rows), seed};
}

DirectionSet sample_directions(int n, int d, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_directions: n must be >= 1");
  if (d < 2) throw std::invalid_argument("sample_directions: d must be >= 2");
  Rng rng(seed);
  Mat m(n, d);
  Vec g(d);
  for (int i = 0; i < n; ++i) {
    double norm = 0.0;
    do {
      for (int j = 0; j < d; ++j) g[j] = rng.normal();
      norm = g.norm();
    } while (norm < 1e-8);
    m.row(i) = g.transpose() / norm;
  }
  return DirectionSet{std::move(m), seed};
}

double great_circle_distance(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("great_circle_distance: dimension mismatch");
  const double dot = std::clamp(u.dot(v), -1.0, 1.0);
  return std::acos(dot);
}

double cap_area(int d, double phi) {
  if (d < 2) throw std::invalid_argument("cap_area: d must be >= 2");
  if (!(phi >= 0.0 && phi <= M_PI + 1e-12)) {
    throw std::invalid_argument("cap_area: phi must lie in [0, pi]");
  }
  phi = std::min(phi, M_PI);
  if (d == 2) return phi / M_PI;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double base = 0.5 * reg_inc_beta_xc(0.5 * (d - 1), 0.5, s * s, c * c);
  return phi <= M_PI_2 ? base : 1.0 - base;
}

double cap_area_inv(int d, double a) {
  if (d < 2) throw std::invalid_argument("cap_area_inv: d must be >= 2");
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("cap_area_inv: a must lie in [0, 1]");
  if (a == 0.0) return 0.0;
  if (a == 1.0) return M_PI;
  if (d == 2) return a * M_PI;
  return invert_increasing([d](double p) { return cap_area(d, p); }, 0.0, M_PI, a, 1e-13);
}

double max_spacing(const DirectionSet& dirs, int resolution) {
  if (dirs.n() < 1) throw std::invalid_argument("max_spacing: empty direction set");
  if (resolution < 1) throw std::invalid_argument("max_spacing: resolution must be >= 1");
  const int d = dirs.d();
  const NnIndex idx(dirs.directions);

  double best = 0.0;
  TopProbes top(d == 3 ? 256 : (d == 2 ? 64 : 0));
  auto consider = [&](const Vec& p) {
    const double g = idx.min_geodesic(p);
    if (g > best) best = g;
    top.push(g, p);
  };

  Vec probe(d);
  if (d == 2) {
    for (int j = 0; j < resolution; ++j) {
      const double a = 2.0 * M_PI * j / resolution;
      probe[0] = std::cos(a);
      probe[1] = std::sin(a);
      consider(probe);
    }
  } else if (d == 3) {
    // Fibonacci spiral.
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < resolution; ++j) {
      const double z = 1.0 - 2.0 * (j + 0.5) / resolution;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * j;
      probe[0] = r * std::cos(a);
      probe[1] = r * std::sin(a);
      probe[2] = z;
      consider(probe);
    }
  } else {
    // No quasi-uniform construction is attempted for d >= 4; seeded random
    // probes keep the estimator a deterministic lower bound.
    Rng rng(substream_seed(0x5eedf00dULL, static_cast<std::uint64_t>(d)));
    for (int j = 0; j < resolution; ++j) {
      double norm = 0.0;
      do {
        for (int c = 0; c < d; ++c) probe[c] = rng.normal();
        norm = probe.norm();
      } while (norm < 1e-8);
      probe /= norm;
      consider(probe);
    }
  }
  for (int i = 0; i < dirs.n(); ++i) {
    consider(-dirs.directions.row(i).transpose());
  }

  if (d <= 3) {
    const double h0 = d == 2 ? 2.0 * M_PI / resolution
                             : 2.0 * std::sqrt(4.0 * M_PI / resolution);
    for (const Vec& p : top.take()) {
      best = std::max(best, refine_probe(idx, p, h0));
    }
  }
  return std::min(best, M_PI);
}

}  // namespace rpdepth
