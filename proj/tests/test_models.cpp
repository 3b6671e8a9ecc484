#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rpdepth/depth.hpp"
#include "rpdepth/models.hpp"
#include "rpdepth/rng.hpp"
#include "rpdepth/special.hpp"

using namespace rpdepth;

namespace {

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("models");

TEST_CASE("construction and validation") {
  CHECK_THROWS_AS(Model::gaussian_std(1), std::invalid_argument);
  CHECK_THROWS_AS(Model::student_t(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(Model::p_symmetric(3, 2.5, gaussian_marginal()), std::invalid_argument);
  Mat bad(2, 2);
  bad << 1, 2, 2, 1;  // indefinite
  CHECK_THROWS_AS(Model::elliptical(Model::gaussian_std(2), Vec::Zero(2), bad),
                  std::invalid_argument);
  Mat notsym(2, 2);
  notsym << 1, 0.5, 0.2, 1;
  CHECK_THROWS_AS(Model::elliptical(Model::gaussian_std(2), Vec::Zero(2), notsym),
                  std::invalid_argument);
  CHECK(Model::gaussian_std(4).has_spherical_marginal());
  CHECK(Model::p_symmetric(2, 2.0, gaussian_marginal()).has_spherical_marginal());
  CHECK_FALSE(Model::p_symmetric(2, 1.0, cauchy_marginal()).has_spherical_marginal());
}

TEST_CASE("marginal cdf per family") {
  CHECK(marginal_cdf(Model::gaussian_std(3), 0.0) == doctest::Approx(0.5));
  CHECK(marginal_cdf(Model::student_t(3, 1), 1.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(marginal_cdf(Model::uniform_ball(3), 0.5) == doctest::Approx(0.84375).epsilon(1e-13));
  CHECK(marginal_cdf(Model::uniform_ball(3), 1.0) == doctest::Approx(1.0));
  const Model ell = Model::elliptical(Model::gaussian_std(2), Vec::Zero(2),
                                      Mat::Identity(2, 2));
  CHECK_THROWS_AS(marginal_cdf(ell, 0.0), std::invalid_argument);
}

TEST_CASE("marginal cdfs are non-decreasing and symmetric on a grid") {
  const Model models[] = {Model::gaussian_std(2), Model::student_t(2, 1),
                          Model::student_t(2, 4), Model::uniform_ball(5),
                          Model::p_symmetric(3, 1.0, cauchy_marginal())};
  for (const Model& m : models) {
    double prev = -1.0;
    for (int i = 0; i <= 10000; ++i) {
      const double t = -6.0 + 12.0 * i / 10000.0;
      const double v = marginal_cdf(m, t);
      CHECK(v >= prev);
      prev = v;
      if (i % 100 == 0) {
        CHECK(v + marginal_cdf(m, -t) == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("conjugate index and lq norms") {
  CHECK(std::isinf(conjugate_index(1.0)));
  CHECK(std::isinf(conjugate_index(0.5)));
  CHECK(conjugate_index(2.0) == doctest::Approx(2.0));
  CHECK(conjugate_index(1.5) == doctest::Approx(3.0));
  CHECK(lq_norm(vec2(3, -4), 2.0) == doctest::Approx(5.0));
  CHECK(lq_norm(vec2(3, -4), std::numeric_limits<double>::infinity()) == doctest::Approx(4.0));
  CHECK(lq_norm(vec2(3, -4), 1.0) == doctest::Approx(7.0));
}

TEST_CASE("exact halfspace depth") {
  const Model g3 = Model::gaussian_std(3);
  Vec zero = Vec::Zero(3);
  CHECK(exact_halfspace_depth(g3, zero) == doctest::Approx(0.5));

  Vec x(3);
  x << 1, 0, 0;
  const double quad = oracle::integrate(
      [](double s) { return std::exp(-0.5 * s * s) / std::sqrt(2.0 * M_PI); },
      -10.0, -1.0, 1e-15);
  CHECK(exact_halfspace_depth(g3, x) == doctest::Approx(quad).epsilon(1e-12));
  CHECK(exact_halfspace_depth(g3, x) == doctest::Approx(0.158655253931).epsilon(1e-10));

  // ||x||_inf = 1 for the 1-symmetric Cauchy model: depth F(-1) = 1/4.
  const Model c1 = Model::p_symmetric(2, 1.0, cauchy_marginal());
  CHECK(exact_halfspace_depth(c1, vec2(1, 0)) == doctest::Approx(0.25).epsilon(1e-13));

  const Model ell = Model::elliptical(Model::gaussian_std(2), Vec::Zero(2),
                                      4.0 * Mat::Identity(2, 2));
  CHECK(exact_halfspace_depth(ell, vec2(2, 0)) ==
        doctest::Approx(0.158655253931).epsilon(1e-10));
}

TEST_CASE("depth is non-increasing along rays and bounded by 1/2") {
  Rng rng(5);
  const Model models[] = {Model::gaussian_std(3), Model::student_t(3, 2),
                          Model::uniform_ball(3),
                          Model::p_symmetric(3, 1.5, gaussian_marginal())};
  for (const Model& m : models) {
    for (int rep = 0; rep < 20; ++rep) {
      Vec dir(3);
      for (int i = 0; i < 3; ++i) dir[i] = rng.normal();
      dir.normalize();
      double prev = 0.5;
      for (double r = 0.0; r <= 3.0; r += 0.1) {
        const double depth = exact_halfspace_depth(m, Vec(r * dir));
        CHECK(depth <= prev + 1e-12);
        CHECK(depth <= 0.5);
        CHECK(depth >= 0.0);
        prev = depth;
      }
    }
  }
}

TEST_CASE("halfspace function") {
  const Model g2 = Model::gaussian_std(2);
  CHECK(halfspace_function(g2, vec2(1, 0), vec2(1, 0)) ==
        doctest::Approx(0.841344746069).epsilon(1e-11));
  // At x = 0 every direction gives 1/2.
  for (double a = 0.0; a < 6.28; a += 0.5) {
    CHECK(halfspace_function(g2, vec2(0, 0), vec2(std::cos(a), std::sin(a))) ==
          doctest::Approx(0.5));
  }
  // The minimizer is -x/||x||, where the value equals the exact depth.
  Vec x = vec2(0.7, -1.1);
  const Vec u_star = -x / x.norm();
  CHECK(halfspace_function(g2, x, u_star) ==
        doctest::Approx(exact_halfspace_depth(g2, x)).epsilon(1e-13));
  double best = 1e300;
  double best_angle = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double a = 2.0 * M_PI * i / 20000;
    const double v = halfspace_function(g2, x, vec2(std::cos(a), std::sin(a)));
    if (v < best) {
      best = v;
      best_angle = a;
    }
  }
  const Vec u_grid = vec2(std::cos(best_angle), std::sin(best_angle));
  CHECK(great_circle_distance(u_grid, u_star) <= 2.0 * M_PI / 20000 + 1e-12);
  CHECK(best >= exact_halfspace_depth(g2, x) - 1e-13);
}

TEST_CASE("p-symmetric halfspace function uses the p-norm of the direction") {
  const Model c1 = Model::p_symmetric(2, 1.0, cauchy_marginal());
  const Vec u = vec2(M_SQRT1_2, M_SQRT1_2);
  // <x, u>/||u||_1 with ||u||_1 = sqrt(2).
  const Vec x = vec2(1.0, 1.0);
  const double expected = cauchy_cdf(x.dot(u) / (2.0 * M_SQRT1_2));
  CHECK(halfspace_function(c1, x, u) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("whiten") {
  Mat I = Mat::Identity(2, 2);
  const Vec x = vec2(0.3, -0.8);
  CHECK((whiten(I, Vec::Zero(2), x) - x).norm() == doctest::Approx(0.0));
  CHECK((whiten(4.0 * I, Vec::Zero(2), vec2(2, 0)) - vec2(1, 0)).norm() ==
        doctest::Approx(0.0));
  Mat d41(2, 2);
  d41 << 4, 0, 0, 1;
  CHECK((whiten(d41, vec2(1, 1), vec2(3, 1)) - vec2(1, 0)).norm() ==
        doctest::Approx(0.0));
  Mat sing(2, 2);
  sing << 1, 1, 1, 1;
  CHECK_THROWS_AS(whiten(sing, Vec::Zero(2), x), std::invalid_argument);
}

TEST_CASE("2-symmetric with gaussian marginal equals the standard gaussian") {
  const Model g = Model::gaussian_std(3);
  const Model p2 = Model::p_symmetric(3, 2.0, gaussian_marginal());
  Rng rng(17);
  for (int rep = 0; rep < 200; ++rep) {
    Vec x(3);
    for (int i = 0; i < 3; ++i) x[i] = 2.0 * rng.normal();
    CHECK(exact_halfspace_depth(g, x) ==
          doctest::Approx(exact_halfspace_depth(p2, x)).epsilon(1e-12));
  }
}

TEST_CASE("affine invariance: exact identity and Monte Carlo agreement") {
  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    Mat A(2, 2);
    for (int i = 0; i < 4; ++i) A(i / 2, i % 2) = rng.normal();
    Mat sigma = A * A.transpose() + 0.05 * Mat::Identity(2, 2);
    Vec mu = vec2(rng.normal(), rng.normal());
    const Model base = Model::gaussian_std(2);
    const Model ell = Model::elliptical(base, mu, sigma);
    Vec x = vec2(2.0 * rng.normal(), 2.0 * rng.normal());
    CHECK(exact_halfspace_depth(ell, x) ==
          doctest::Approx(exact_halfspace_depth(base, whiten(sigma, mu, x)))
              .epsilon(1e-12));
  }

  // Monte Carlo: the empirical depth of an elliptical sample at x matches the
  // model depth within sampling error.
  Mat A(2, 2);
  A << 1.2, 0.4, 0.0, 0.7;
  const Mat sigma = A * A.transpose();
  const Vec mu = vec2(0.5, -0.25);
  const Model ell = Model::elliptical(Model::gaussian_std(2), mu, sigma);
  Rng sample_rng(31);
  const Dataset sample(sample_points(ell, 4000, sample_rng));
  const Vec x = mu + Vec(A * vec2(0.8, -0.3));
  const double exact = exact_halfspace_depth(ell, x);
  const double empirical = exact_halfspace_depth_2d(sample, x);
  CHECK(std::fabs(empirical - exact) < 0.025);  // ~3 sigma at N = 4000
}

TEST_CASE("marginal mad") {
  CHECK(marginal_mad(Model::gaussian_std(2)) ==
        doctest::Approx(0.674489750196).epsilon(1e-10));
  CHECK(marginal_mad(Model::student_t(2, 1)) == doctest::Approx(1.0).epsilon(1e-10));
  const double ball_mad = marginal_mad(Model::uniform_ball(3));
  CHECK(uniform_ball_proj_cdf(ball_mad, 3) == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("samplers are deterministic and respect support") {
  const Model ball = Model::uniform_ball(3);
  Rng r1(4), r2(4);
  const Mat a = sample_points(ball, 200, r1);
  const Mat b = sample_points(ball, 200, r2);
  CHECK(a == b);
  for (int i = 0; i < a.rows(); ++i) CHECK(a.row(i).norm() <= 1.0 + 1e-12);

  const Model p7 = Model::p_symmetric(2, 0.7, cauchy_marginal());
  Rng r3(4);
  CHECK_THROWS_AS(sample_point(p7, r3), std::invalid_argument);
}

TEST_SUITE_END();
