#include "rpdepth/special.hpp"

#include <cmath>
#include <stdexcept>

namespace rpdepth {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace

double reg_inc_beta_xc(double a, double b, double x, double cx) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("reg_inc_beta: a, b must be positive");
  if (std::isnan(x) || std::isnan(cx)) throw std::invalid_argument("reg_inc_beta: x is NaN");
  if (x <= 0.0) return 0.0;
  if (cx <= 0.0) return 1.0;
  const double lfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        a * std::log(x) + b * std::log(cx);
  const double front = std::exp(lfront);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_cf(a, b, x) / a;
  }
  return 1.0 - front * beta_cf(b, a, cx) / b;
}

double reg_inc_beta(double a, double b, double x) {
  return reg_inc_beta_xc(a, b, x, 1.0 - x);
}

double normal_cdf(double t) { return 0.5 * std::erfc(-t / M_SQRT2); }
double normal_sf(double t) { return 0.5 * std::erfc(t / M_SQRT2); }
double normal_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); }

double cauchy_cdf(double t) {
  // atan(-1/t)/pi for t < 0 keeps full relative precision in the lower tail.
  if (t < 0.0) return std::atan(-1.0 / t) / M_PI;
  return 0.5 + std::atan(t) / M_PI;
}

double cauchy_sf(double t) { return cauchy_cdf(-t); }

double student_t_sf(double t, int nu) {
  if (nu < 1) throw std::invalid_argument("student_t: nu must be >= 1");
  if (nu == 1) return cauchy_sf(t);
  if (t < 0.0) return 1.0 - student_t_sf(-t, nu);
  if (t == 0.0) return 0.5;
  const double t2 = t * t;
  return 0.5 * reg_inc_beta_xc(0.5 * nu, 0.5, nu / (nu + t2), t2 / (nu + t2));
}

double student_t_cdf(double t, int nu) { return student_t_sf(-t, nu); }

double uniform_ball_proj_cdf(double t, int d) {
  if (d < 2) throw std::invalid_argument("uniform_ball_proj_cdf: d must be >= 2");
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t == 0.0) return 0.5;
  const double a = 0.5 * (d + 1);
  return reg_inc_beta_xc(a, a, 0.5 * (1.0 + t), 0.5 * (1.0 - t));
}

double uniform_ball_proj_sf(double t, int d) { return uniform_ball_proj_cdf(-t, d); }

double invert_increasing(const std::function<double(double)>& f, double lo,
                         double hi, double target, double xtol) {
  if (!(lo <= hi)) throw std::invalid_argument("invert_increasing: empty bracket");
  double a = lo, b = hi;
  for (int i = 0; i < 200 && (b - a) > xtol; ++i) {
    const double m = 0.5 * (a + b);
    if (f(m) >= target) {
      b = m;
    } else {
      a = m;
    }
  }
  return 0.5 * (a + b);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double xtol) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 300 && (b - a) > xtol; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double gaussian_mad() {
  static const double value =
      invert_increasing([](double t) { return normal_cdf(t); }, 0.0, 2.0, 0.75, 1e-15);
  return value;
}

}  // namespace rpdepth
