#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rpdepth/rng.hpp"
#include "rpdepth/sphere.hpp"

using namespace rpdepth;

namespace {

// Exact maximal spacing on the circle: half of the widest angular gap.
double exact_spacing_2d(const Mat& dirs) {
  std::vector<double> angles;
  for (Eigen::Index i = 0; i < dirs.rows(); ++i) {
    double a = std::atan2(dirs(i, 1), dirs(i, 0));
    if (a < 0) a += 2.0 * M_PI;
    angles.push_back(a);
  }
  std::sort(angles.begin(), angles.end());
  double widest = 2.0 * M_PI - angles.back() + angles.front();
  for (std::size_t i = 1; i < angles.size(); ++i) {
    widest = std::max(widest, angles[i] - angles[i - 1]);
  }
  return std::min(M_PI, 0.5 * widest);
}

}  // namespace

TEST_SUITE_BEGIN("sphere");

TEST_CASE("direction validation") {
  CHECK_THROWS_AS(Direction(Vec::Zero(3)), std::invalid_argument);
  Vec ok(2);
  ok << 1.0, 0.0;
  CHECK_NOTHROW((void)Direction(ok));
  CHECK_THROWS_AS(DirectionSet::from_rows(Mat::Zero(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(DirectionSet::from_rows(Mat(0, 2)), std::invalid_argument);
}

TEST_CASE("sampling: unit norms, determinism, argument errors") {
  const DirectionSet a = sample_directions(5, 3, 7);
  const DirectionSet b = sample_directions(5, 3, 7);
  CHECK(a.directions == b.directions);  // bit-for-bit
  for (int i = 0; i < a.n(); ++i) {
    CHECK(std::fabs(a.directions.row(i).norm() - 1.0) <= 1e-12);
  }
  const DirectionSet c = sample_directions(5, 3, 8);
  CHECK(a.directions != c.directions);
  CHECK_THROWS_AS(sample_directions(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_directions(5, 1, 1), std::invalid_argument);
}

TEST_CASE("sampling: empirical mean of 1e5 directions is near zero") {
  const DirectionSet dirs = sample_directions(100000, 2, 1);
  const Vec mean = dirs.directions.colwise().mean().transpose();
  CHECK(mean.norm() < 0.02);
}

TEST_CASE("great circle distance") {
  Vec e1(2), e2(2), me1(2);
  e1 << 1, 0;
  e2 << 0, 1;
  me1 << -1, 0;
  CHECK(great_circle_distance(e1, e1) == doctest::Approx(0.0));
  CHECK(great_circle_distance(e1, e2) == doctest::Approx(M_PI_2));
  CHECK(great_circle_distance(e1, me1) == doctest::Approx(M_PI));
  Vec e3(3);
  e3 << 1, 0, 0;
  CHECK_THROWS_AS(great_circle_distance(e1, e3), std::invalid_argument);
}

TEST_CASE("chord identity over random pairs") {
  Rng rng(99);
  for (int rep = 0; rep < 10000; ++rep) {
    Vec u(3), v(3);
    for (int i = 0; i < 3; ++i) {
      u[i] = rng.normal();
      v[i] = rng.normal();
    }
    u.normalize();
    v.normalize();
    const double g = great_circle_distance(u, v);
    CHECK(std::fabs((u - v).norm() - 2.0 * std::sin(0.5 * g)) <= 1e-10);
  }
}

TEST_CASE("cap area closed forms") {
  CHECK(cap_area(2, M_PI_2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cap_area(3, M_PI_2) == doctest::Approx(0.5).epsilon(1e-15));
  // d = 3 is sin^2(phi/2).
  for (double phi = 0.0; phi <= M_PI; phi += 0.1) {
    const double s = std::sin(0.5 * phi);
    CHECK(cap_area(3, phi) == doctest::Approx(s * s).epsilon(1e-12));
  }
  // d = 4 is (2 phi - sin 2 phi)/(2 pi).
  const double phi = M_PI / 3.0;
  const double closed = (2.0 * phi - std::sin(2.0 * phi)) / (2.0 * M_PI);
  CHECK(cap_area(4, phi) == doctest::Approx(closed).epsilon(1e-12));
  CHECK(cap_area(4, phi) == doctest::Approx(0.19550110947788).epsilon(1e-10));
  for (int d : {2, 3, 5, 9, 20}) {
    CHECK(cap_area(d, M_PI) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(cap_area(d, 0.0) == 0.0);
  }
  CHECK_THROWS_AS(cap_area(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(cap_area(3, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(cap_area(3, 3.3), std::invalid_argument);
}

TEST_CASE("cap area against quadrature of sin^{d-2}") {
  for (int d : {3, 4, 7, 12, 20}) {
    const double coef = std::exp(std::lgamma(0.5 * d) - std::lgamma(0.5 * (d - 1)) -
                                 0.5 * std::log(M_PI));
    for (double phi : {0.2, 0.9, M_PI_2, 2.2, 3.0}) {
      const double quad = coef * oracle::integrate(
                                     [d](double t) {
                                       return std::pow(std::sin(t), d - 2);
                                     },
                                     0.0, phi, 1e-14);
      CHECK(cap_area(d, phi) == doctest::Approx(quad).epsilon(1e-11));
    }
  }
}

TEST_CASE("cap area strictly increasing and hemisphere symmetric") {
  for (int d = 2; d <= 20; ++d) {
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double a = cap_area(d, M_PI * i / 1000.0);
      // Strict until the value saturates in double precision (for large d
      // the cap fraction is within an ulp of 1 well before phi = pi).
      if (prev < 1.0 - 1e-12) {
        CHECK(a > prev);
      } else {
        CHECK(a >= prev);
      }
      prev = a;
    }
    CHECK(cap_area(d, M_PI_2) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("cap area inverse round trips") {
  CHECK(cap_area_inv(2, 0.25) == doctest::Approx(M_PI_4).epsilon(1e-13));
  CHECK(cap_area_inv(3, 0.5) == doctest::Approx(M_PI_2).epsilon(1e-10));
  for (int d = 2; d <= 20; ++d) {
    for (double a : {0.01, 0.1, 0.5, 0.9}) {
      CHECK(cap_area(d, cap_area_inv(d, a)) == doctest::Approx(a).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(cap_area_inv(3, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(cap_area_inv(3, 1.1), std::invalid_argument);
}

TEST_CASE("max spacing: degenerate configurations") {
  Mat one(1, 2);
  one << 1, 0;
  CHECK(max_spacing(DirectionSet::from_rows(one), 1000) == doctest::Approx(M_PI));

  Mat two(2, 2);
  two << 1, 0, -1, 0;
  // Probes at multiples of 2 pi / 1000 include the poles exactly.
  CHECK(max_spacing(DirectionSet::from_rows(two), 1000) == doctest::Approx(M_PI_2));
  CHECK_THROWS_AS(max_spacing(DirectionSet::from_rows(two), 0), std::invalid_argument);
}

TEST_CASE("max spacing: circle estimate matches the exact gap and the iterated-logarithm scale") {
  const DirectionSet dirs = sample_directions(1000, 2, 1);
  const double est = max_spacing(dirs, 4000);
  const double exact = exact_spacing_2d(dirs.directions);
  CHECK(est <= exact + 1e-12);         // lower-bound estimator
  CHECK(est >= 0.995 * exact);         // refinement reaches the gap midpoint
  const double scale =
      cap_area_inv(2, (std::log(1000.0) + 2.0 * std::log(std::log(1000.0))) / 1000.0);
  CHECK(exact >= 0.5 * scale);
  CHECK(exact <= 2.0 * scale);
}

TEST_CASE("max spacing: sphere estimator stays below pi and is a max over probes") {
  const DirectionSet dirs = sample_directions(500, 3, 11);
  const double est = max_spacing(dirs, 5000);
  CHECK(est > 0.0);
  CHECK(est <= M_PI);
  // Sample antipodes are part of the probe set, so each one's
  // nearest-neighbor distance is a lower bound for the estimate.
  for (int k : {0, 17, 236}) {
    const Vec probe = -dirs.directions.row(k).transpose();
    double nn = M_PI;
    for (int i = 0; i < dirs.n(); ++i) {
      nn = std::min(nn, great_circle_distance(probe, dirs.directions.row(i).transpose()));
    }
    CHECK(est >= nn - 1e-12);
  }
}

TEST_SUITE_END();
