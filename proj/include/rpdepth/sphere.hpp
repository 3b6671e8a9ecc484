#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace rpdepth {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A unit vector in R^d. Construction validates the norm (1e-12 relative).
struct Direction {
  Vec coords;
  explicit Direction(Vec c);
  int d() const { return static_cast<int>(coords.size()); }
};

// An ordered sample of unit vectors, one per row. Regenerating with the same
// (seed, n, d) reproduces the identical matrix bit-for-bit.
struct DirectionSet {
  Mat directions;  // n x d
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(directions.rows()); }
  int d() const { return static_cast<int>(directions.cols()); }

  // Wraps explicit rows (tests, d=1 reductions). Validates unit norms.
  static DirectionSet from_rows(Mat rows, std::uint64_t seed = 0);
};

// n i.i.d. uniform directions on S^{d-1}, generated by normalizing d-variate
// standard Gaussian draws. Requires n >= 1, d >= 2.
DirectionSet sample_directions(int n, int d, std::uint64_t seed);

// arccos of the clamped inner product; the geodesic distance in [0, pi].
double great_circle_distance(const Vec& u, const Vec& v);

// Fraction of the sphere's surface covered by a cap of polar angle phi,
// evaluated through the regularized incomplete beta identity
//   a_d(phi) = I_{sin^2 phi}((d-1)/2, 1/2) / 2   for phi <= pi/2,
// reflected for phi > pi/2. Strictly increasing, a_d(pi) = 1.
double cap_area(int d, double phi);

// Inverse of cap_area in phi, to absolute tolerance 1e-12.
double cap_area_inv(int d, double a);

// Lower-bound estimate of the maximal spacing
//   S_n = sup_u min_i ||u - U_i||_g,
// computed by maximizing the nearest-neighbor geodesic distance over
// `resolution` quasi-uniform probe points plus all antipodes of the sample,
// followed by a deterministic local refinement of the best probes (d <= 3).
// Never exceeds pi and never underestimates the spacing restricted to the
// probe set.
double max_spacing(const DirectionSet& dirs, int resolution);

}  // namespace rpdepth
