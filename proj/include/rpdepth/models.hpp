#pragma once

#include <functional>
#include <memory>
#include <string>

#include "rpdepth/rng.hpp"
#include "rpdepth/sphere.hpp"

namespace rpdepth {

// Marginal distribution function of a projection <u, X>, with enough metadata
// to evaluate tail-accurate survival probabilities and quantiles.
struct MarginalCdf {
  std::string name;
  std::function<double(double)> cdf;
  std::function<double(double)> sf;        // defaults to 1 - cdf
  std::function<double(double)> quantile;  // defaults to bisection on cdf

  double operator()(double t) const { return cdf(t); }
};

MarginalCdf gaussian_marginal();
MarginalCdf cauchy_marginal();
MarginalCdf student_t_marginal(int nu);
MarginalCdf uniform_ball_marginal(int d);

enum class Family { gaussian, student_t, uniform_ball, p_symmetric, elliptical };

// Analytic distribution families with known projection CDFs and closed-form
// halfspace depths. Immutable value object.
struct Model {
  Family family = Family::gaussian;
  int d = 2;
  int nu = 1;      // student_t
  double p = 2.0;  // p_symmetric
  MarginalCdf marginal;

  // elliptical affine wrapper: X = mu + A Z with A A^T = sigma
  std::shared_ptr<const Model> base;
  Vec mu;
  Mat sigma;
  Mat chol;  // lower-triangular Cholesky factor of sigma

  static Model gaussian_std(int d);
  static Model student_t(int d, int nu);
  static Model uniform_ball(int d);
  static Model p_symmetric(int d, double p, MarginalCdf marginal);
  static Model elliptical(Model base, Vec mu, Mat sigma);

  // True when every projection <u, X> has the same marginal law (the
  // spherical families; p_symmetric only for p = 2).
  bool has_spherical_marginal() const;
  bool samplable() const;
  std::string family_name() const;
};

// N x d point cloud.
struct Dataset {
  Mat points;
  explicit Dataset(Mat pts);
  int n() const { return static_cast<int>(points.rows()); }
  int d() const { return static_cast<int>(points.cols()); }
};

// Projection CDF F_p(t) for the non-elliptical variants; the elliptical
// wrapper has no direction-free marginal, callers must whiten first.
double marginal_cdf(const Model& model, double t);

// Conjugate index q of p: infinity for p <= 1, p/(p-1) otherwise.
double conjugate_index(double p);

// l_q norm with q possibly infinity.
double lq_norm(const Vec& x, double q);

// Exact halfspace depth: F_p(-||x||) for spherical families, F(-||x||_q) for
// p-symmetric ones, and the whitened base depth for elliptical models.
double exact_halfspace_depth(const Model& model, const Vec& x);

// Halfspace function phi_x(u) = P(<u, X> <= <u, x>). u need not be exactly
// unit; the value only depends on its span.
double halfspace_function(const Model& model, const Vec& x, const Vec& u);

// sigma^{-1/2}(x - mu) via the Cholesky factor of sigma.
Vec whiten(const Mat& sigma, const Vec& mu, const Vec& x);

// MAD of the model's marginal, i.e. its 3/4 quantile (symmetric marginals).
// Defined for the non-elliptical variants.
double marginal_mad(const Model& model);

// Draw points from the model. Supported: gaussian, student_t, uniform_ball,
// p_symmetric with p = 2 (Gaussian marginal) or p = 1 (Cauchy marginal), and
// elliptical wrappers of those.
Vec sample_point(const Model& model, Rng& rng);
Mat sample_points(const Model& model, int count, Rng& rng);

}  // namespace rpdepth
