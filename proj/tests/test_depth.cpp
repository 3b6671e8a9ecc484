#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "rpdepth/depth.hpp"
#include "rpdepth/rng.hpp"
#include "rpdepth/special.hpp"

using namespace rpdepth;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Mat triangle() {
  Mat pts(3, 2);
  pts << 0, 0, 1, 0, 0.2, 1.1;
  return pts;
}

}  // namespace

TEST_SUITE_BEGIN("depth");

TEST_CASE("model approx depth: center and monotone prefixes") {
  const Model g2 = Model::gaussian_std(2);
  const DepthTarget target = DepthTarget::of(g2);
  const DirectionSet dirs = sample_directions(200, 2, 3);
  CHECK(approx_halfspace_depth(target, vec2(0, 0), dirs).value == doctest::Approx(0.5));

  Rng rng(8);
  for (int rep = 0; rep < 10; ++rep) {
    const Vec x = vec2(1.5 * rng.normal(), 1.5 * rng.normal());
    const double exact = exact_halfspace_depth(g2, x);
    double prev = 1.0;
    for (int n : {1, 2, 5, 10, 50, 200}) {
      const DirectionSet prefix =
          DirectionSet::from_rows(dirs.directions.topRows(n), dirs.seed);
      const double dn = approx_halfspace_depth(target, x, prefix).value;
      CHECK(dn <= prev + 1e-15);  // D_n non-increasing under extension
      CHECK(dn >= exact - 1e-13);  // never below the exact depth
      prev = dn;
    }
  }
}

TEST_CASE("approx depth exceeds exact depth at random points for analytic models") {
  const Model models[] = {Model::gaussian_std(3), Model::student_t(3, 1),
                          Model::uniform_ball(3)};
  const DirectionSet dirs = sample_directions(300, 3, 5);
  Rng rng(6);
  for (const Model& m : models) {
    const DepthTarget target = DepthTarget::of(m);
    for (int rep = 0; rep < 1000; ++rep) {
      Vec x(3);
      for (int i = 0; i < 3; ++i) x[i] = 1.2 * rng.normal();
      const DepthResult r = approx_halfspace_depth(target, x, dirs);
      CHECK(r.value >= exact_halfspace_depth(m, x) - 1e-13);
      CHECK(r.minimizing_index >= 0);
      CHECK(r.minimizing_index < dirs.n());
    }
  }
}

TEST_CASE("empirical approx depth: vertex of a triangle") {
  const Dataset data(triangle());
  const DirectionSet dirs = sample_directions(10000, 2, 12);
  const double dn =
      approx_halfspace_depth(DepthTarget::of(data), vec2(0, 0), dirs).value;
  // The vertex has exact depth 1/3, found once a direction falls inside the
  // open normal cone; the grid oracle agrees.
  CHECK(dn == doctest::Approx(1.0 / 3.0));
  CHECK(oracle::brute_depth_2d(triangle(), Eigen::Vector2d(0, 0)) ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("dimension mismatches are argument errors") {
  const Dataset data(triangle());
  const DirectionSet dirs = sample_directions(8, 3, 1);
  CHECK_THROWS_AS(approx_halfspace_depth(DepthTarget::of(data), vec2(0, 0), dirs),
                  std::invalid_argument);
  Vec x3(3);
  x3 << 0, 0, 0;
  CHECK_THROWS_AS(
      approx_halfspace_depth(DepthTarget::of(data), x3, sample_directions(8, 2, 1)),
      std::invalid_argument);
}

TEST_CASE("exact 2-d depth: hand geometries") {
  Mat square(4, 2);
  square << 0, 0, 1, 0, 0, 1, 1, 1;
  const Dataset sq(square);
  CHECK(exact_halfspace_depth_2d(sq, vec2(0.5, 0.5)) == doctest::Approx(0.5));
  CHECK(exact_halfspace_depth_2d(sq, vec2(5, 5)) == doctest::Approx(0.0));

  const Dataset tri(triangle());
  const Vec centroid = vec2((0 + 1 + 0.2) / 3.0, (0 + 0 + 1.1) / 3.0);
  CHECK(exact_halfspace_depth_2d(tri, centroid) == doctest::Approx(1.0 / 3.0));

  // All points coincident with the query.
  Mat same(3, 2);
  same << 1, 1, 1, 1, 1, 1;
  CHECK(exact_halfspace_depth_2d(Dataset(same), vec2(1, 1)) == doctest::Approx(1.0));

  Mat one_d(2, 3);
  one_d.setZero();
  CHECK_THROWS_AS(exact_halfspace_depth_2d(Dataset(one_d), vec2(0, 0)),
                  std::invalid_argument);
}

TEST_CASE("exact 2-d depth equals the brute-force oracle on random instances") {
  Rng rng(77);
  for (int instance = 0; instance < 30; ++instance) {
    const int n = 3 + static_cast<int>(rng.uniform01() * 9);
    Mat pts(n, 2);
    for (int i = 0; i < n; ++i) {
      pts(i, 0) = rng.normal();
      pts(i, 1) = rng.normal();
    }
    const Dataset data(pts);
    for (int q = 0; q < 6; ++q) {
      Eigen::Vector2d x;
      if (q < 3) {
        x << rng.normal(), rng.normal();
      } else {
        x = pts.row(q - 3).transpose();  // query on a data point
      }
      const double sweep = exact_halfspace_depth_2d(data, Vec(x));
      const double brute = oracle::brute_depth_2d(pts, x);
      CHECK(sweep == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("one-dimensional reduction with directions {+1, -1}") {
  Mat values(6, 1);
  values << 0.1, 0.4, 0.4, 0.9, 1.3, 2.0;
  const Dataset data(values);
  Mat rows(2, 1);
  rows << 1, -1;
  const DirectionSet pm = DirectionSet::from_rows(rows);
  for (double x : {0.0, 0.1, 0.4, 0.65, 1.3, 2.0, 3.0}) {
    Vec q(1);
    q << x;
    const double dn = approx_halfspace_depth(DepthTarget::of(data), q, pm).value;
    int below_eq = 0, above_eq = 0;
    for (int i = 0; i < 6; ++i) {
      if (values(i, 0) <= x) ++below_eq;
      if (values(i, 0) >= x) ++above_eq;
    }
    CHECK(dn == doctest::Approx(std::min(below_eq, above_eq) / 6.0));
  }
}

TEST_CASE("location and scale: median/MAD with the midpoint rule") {
  auto [m1, s1] = location_scale({1, 2, 3});
  CHECK(m1 == doctest::Approx(2.0));
  CHECK(s1 == doctest::Approx(1.0));

  auto [m2, s2] = location_scale({5, 5, 5, 5});
  CHECK(m2 == doctest::Approx(5.0));
  CHECK(s2 == doctest::Approx(0.0));

  // Hand enumeration: median = 3, |v - 3| = {2, 1, 1, 5}, MAD = (1 + 2)/2.
  auto [m3, s3] = location_scale({1, 2, 4, 8});
  CHECK(m3 == doctest::Approx(3.0));
  CHECK(s3 == doctest::Approx(1.5));

  CHECK_THROWS_AS(location_scale(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("location/scale equivariance under affine maps") {
  Rng rng(12);
  std::vector<double> v;
  for (int i = 0; i < 23; ++i) v.push_back(rng.normal());
  const auto [m, s] = location_scale(v);
  const double a = 2.7, b = -1.3;
  std::vector<double> w;
  for (double x : v) w.push_back(a * x + b);
  const auto [mw, sw] = location_scale(w);
  CHECK(mw == doctest::Approx(a * m + b).epsilon(1e-12));
  CHECK(sw == doctest::Approx(a * s).epsilon(1e-12));
}

TEST_CASE("projection depth: spherical analytic path") {
  const Model g2 = Model::gaussian_std(2);
  const DepthTarget target = DepthTarget::of(g2);
  const DirectionSet dirs = sample_directions(500, 2, 9);
  ProjectionDepthSpec spec;
  spec.k = 1;

  CHECK(approx_projection_depth(target, vec2(0, 0), dirs, spec).value ==
        doctest::Approx(1.0));

  // With the minimizing direction included exactly, PD_n equals the closed
  // form c(||x||/S) with S the Gaussian MAD.
  Mat rows(3, 2);
  rows << 1, 0, 0, 1, -1, 0;
  const DirectionSet exact_dirs = DirectionSet::from_rows(rows);
  const double S = 0.6744897501960817;
  for (double r : {0.5, 1.0, 2.0}) {
    const double pd =
        approx_projection_depth(target, vec2(r, 0), exact_dirs, spec).value;
    CHECK(pd == doctest::Approx(1.0 / (1.0 + r / S)).epsilon(1e-10));
  }

  // PD_n >= PD for spherical models.
  Rng rng(14);
  ProjectionDepthSpec spec2;
  spec2.k = 2;
  for (int rep = 0; rep < 100; ++rep) {
    const Vec x = vec2(2.0 * rng.normal(), 2.0 * rng.normal());
    const double pd_exact = c_transform(x.norm() / S, spec2.k);
    const double pd_n = approx_projection_depth(target, x, dirs, spec2).value;
    CHECK(pd_n >= pd_exact - 1e-12);
  }

  const Model ell = Model::elliptical(Model::gaussian_std(2), Vec::Zero(2),
                                      Mat::Identity(2, 2));
  CHECK_THROWS_AS(approx_projection_depth(DepthTarget::of(ell), vec2(0, 0), dirs, spec),
                  std::invalid_argument);
}

TEST_CASE("projection depth: degenerate empirical scale") {
  Mat pts(4, 2);
  pts << 1, 1, 1, 1, 1, 1, 1, 1;  // every projection has MAD 0
  const Dataset data(pts);
  Mat rows(1, 2);
  rows << 1, 0;
  const DirectionSet e1 = DirectionSet::from_rows(rows);
  ProjectionDepthSpec spec;

  // Positive numerator: outlyingness +inf, depth 0.
  CHECK(approx_projection_depth(DepthTarget::of(data), vec2(2, 0), e1, spec).value ==
        doctest::Approx(0.0));
  CHECK(std::isinf(approx_outlyingness(DepthTarget::of(data), vec2(2, 0), e1, spec)));
  // Non-positive numerator: outlyingness 0, depth 1.
  CHECK(approx_projection_depth(DepthTarget::of(data), vec2(0, 0), e1, spec).value ==
        doctest::Approx(1.0));
  CHECK(approx_outlyingness(DepthTarget::of(data), vec2(0, 0), e1, spec) ==
        doctest::Approx(0.0));
}

TEST_CASE("outlyingness: center, exact direction, monotone prefixes") {
  const Model g2 = Model::gaussian_std(2);
  const DepthTarget target = DepthTarget::of(g2);
  ProjectionDepthSpec spec;
  const DirectionSet dirs = sample_directions(400, 2, 21);

  CHECK(approx_outlyingness(target, vec2(0, 0), dirs, spec) == doctest::Approx(0.0));

  Mat rows(2, 2);
  rows << 1, 0, 0, 1;
  const DirectionSet with_e1 = DirectionSet::from_rows(rows);
  const double S = 0.6744897501960817;
  const double o = approx_outlyingness(target, vec2(1, 0), with_e1, spec);
  CHECK(o == doctest::Approx(1.0 / S).epsilon(1e-12));
  CHECK(o == doctest::Approx(1.48260).epsilon(1e-4));

  // O_n <= O and O_n non-decreasing in n.
  const Vec x = vec2(1.3, -0.4);
  const double o_exact = x.norm() / S;
  double prev = -std::numeric_limits<double>::infinity();
  for (int n : {1, 3, 10, 100, 400}) {
    const DirectionSet prefix =
        DirectionSet::from_rows(dirs.directions.topRows(n), dirs.seed);
    const double on = approx_outlyingness(target, x, prefix, spec);
    CHECK(on >= prev - 1e-15);
    CHECK(on <= o_exact + 1e-12);
    prev = on;
  }
}

TEST_CASE("coordinate permutation leaves depths unchanged") {
  Rng rng(33);
  Mat pts(15, 2);
  for (int i = 0; i < 15; ++i) {
    pts(i, 0) = rng.normal();
    pts(i, 1) = rng.normal();
  }
  Mat swapped(15, 2);
  swapped.col(0) = pts.col(1);
  swapped.col(1) = pts.col(0);
  for (int rep = 0; rep < 10; ++rep) {
    const Vec x = vec2(rng.normal(), rng.normal());
    CHECK(exact_halfspace_depth_2d(Dataset(pts), x) ==
          doctest::Approx(exact_halfspace_depth_2d(Dataset(swapped), vec2(x[1], x[0]))));
  }
}

TEST_CASE("batched prefix counts agree with the direct evaluation") {
  Rng rng(44);
  Mat pts(25, 2);
  for (int i = 0; i < 25; ++i) {
    pts(i, 0) = rng.normal();
    pts(i, 1) = rng.normal();
  }
  const Dataset data(pts);
  Mat queries(5, 2);
  for (int i = 0; i < 5; ++i) {
    queries(i, 0) = rng.normal();
    queries(i, 1) = rng.normal();
  }
  const DirectionSet dirs = sample_directions(64, 2, 5);
  const std::vector<long long> grid = {1, 8, 64};
  const Eigen::MatrixXi counts = empirical_prefix_min_counts(data, queries, dirs, grid);
  for (int k = 0; k < 5; ++k) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const DirectionSet prefix = DirectionSet::from_rows(
          dirs.directions.topRows(grid[g]), dirs.seed);
      const double direct =
          approx_halfspace_depth(DepthTarget::of(data), queries.row(k).transpose(), prefix)
              .value;
      CHECK(counts(k, static_cast<int>(g)) == doctest::Approx(direct * 25.0));
    }
  }
}

TEST_SUITE_END();
