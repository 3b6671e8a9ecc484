#pragma once

#include <functional>

// Special functions and small numeric utilities used throughout the library.
// Accuracy contract: every CDF here is good to ~1e-13 absolute or better,
// which is what the bound computations require.

namespace rpdepth {

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
double reg_inc_beta(double a, double b, double x);

// Same, with the complement cx = 1 - x supplied exactly by the caller; keeps
// full precision when x is close to 1 (e.g. x = sin^2 phi near phi = pi/2).
double reg_inc_beta_xc(double a, double b, double x, double cx);

double normal_cdf(double t);
double normal_sf(double t);
double normal_pdf(double t);

double cauchy_cdf(double t);
double cauchy_sf(double t);

// CDF of the univariate Student t distribution with nu >= 1 degrees of freedom.
double student_t_cdf(double t, int nu);
double student_t_sf(double t, int nu);

// CDF of <u, X> for X uniform on the unit ball in R^d and any unit u.
double uniform_ball_proj_cdf(double t, int d);
double uniform_ball_proj_sf(double t, int d);

// Generalized inverse of a non-decreasing function f on [lo, hi]: smallest x
// with f(x) >= target, located by bisection to absolute tolerance xtol.
double invert_increasing(const std::function<double(double)>& f, double lo,
                         double hi, double target, double xtol = 1e-13);

// Argmax of a unimodal function on [lo, hi] by golden-section search.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol);

// MAD of the standard normal distribution, Phi^{-1}(3/4).
double gaussian_mad();

}  // namespace rpdepth
