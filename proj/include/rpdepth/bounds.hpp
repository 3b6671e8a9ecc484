#pragma once

#include <memory>
#include <string>

#include "rpdepth/models.hpp"

namespace rpdepth {

// Monotone error modulus delta: [0, pi] -> [0, inf), delta(0) = 0. The tight
// variant evaluates sup_t (F_p(t) - F_p(t cos eps)) for a spherical model.
struct Modulus {
  enum class Kind { lipschitz, holder, elliptical1, elliptical2, psym1, psym2, tight };

  Kind kind = Kind::elliptical1;
  double L = 0.0;      // lipschitz
  double K = 0.0;      // holder
  double alpha = 1.0;  // holder
  double p = 2.0;      // psym
  int d = 2;           // psym
  std::shared_ptr<const Model> model;  // tight

  static Modulus lipschitz(double L);
  static Modulus holder(double K, double alpha);
  static Modulus elliptical1();  // (1 - cos t)/2
  static Modulus elliptical2();  // t^2/4
  static Modulus psym1(double p, int d);
  static Modulus psym2(double p, int d);
  static Modulus tight(Model spherical_model);

  std::string name() const;
};

// delta(t) for t in [0, pi]. The tight modulus is defined on [0, pi/2); past
// pi/2 its objective degenerates and the evaluation falls back to the
// elliptical (1 - cos t)/2 envelope.
double modulus_eval(const Modulus& m, double t);

// Tight modulus sup_{t>=0}(F_p(t) - F_p(t cos eps)) for a model with a
// spherical marginal and eps in (0, pi/2). Uses the closed-form maximizer t*
// for the Gaussian, Cauchy, t_3 and uniform-ball (d = 2, 3) marginals and
// golden-section maximization otherwise.
double tight_modulus(const Model& model, double eps);

// Lipschitz constant M pi^{d/2-1} diam^d / Gamma(d/2 + 1) for densities
// bounded by M supported in a set of the given diameter.
double lipschitz_bounded_density(double M, double diam, int d);

// Affine conditioning constant K = (pi/2)(l1/ld)(1 + l1/ld) from the extreme
// singular values of A; composing a modulus with K*t bounds the depth
// approximation error for affine images.
double affine_condition_constant(const Mat& A);

struct BoundResult {
  long long n = 0;
  int d = 0;
  double rate_argument = 0.0;  // (d log log n + log n)/n
  double polar_angle = 0.0;    // a_d^{-1} of the clamped rate
  double bound = 0.0;
  bool saturated = false;      // rate exceeded 1 and the angle clamped to pi
};

// The uniform error envelope Delta_n <= delta(a_d^{-1}((d log log n + log n)/n)).
// Natural logarithms; requires n >= 16 so that log log n > 0. `bound` is the
// raw modulus value (Table-style); for halfspace depth differences it may be
// clamped to 1/2 by the caller.
BoundResult error_bound(long long n, int d, const Modulus& m);

inline double clamped_depth_bound(const BoundResult& b) {
  return b.bound < 0.5 ? b.bound : 0.5;
}

struct PlanResult {
  double target_epsilon = 0.0;
  long long n_required = 0;  // 0 when unachievable
  double achieved_bound = 0.0;
  bool achievable = false;
};

// Smallest n in [16, n_max] with error_bound(n, d, m).bound <= target_eps,
// found by exponential bracketing plus binary search (the bound is
// non-increasing in n on this domain). Unachievable targets yield a typed
// result, not an error.
PlanResult plan_directions(double target_eps, int d, const Modulus& m,
                           long long n_max);

// Multiplicative modulus of c_k: zeta(tau) = (1 - tau^{k/2})/(1 + tau^{k/2}).
double zeta(double tau, int k);
double zeta_inv(double z, int k);

// Projection-depth envelope zeta(1 - a_d^{-1}(rate)) for spherical targets;
// saturated when the polar angle reaches 1.
BoundResult projection_error_bound(long long n, int d, int k);

// sqrt(log log N / (2N)) + slack + error_bound(n, d, m).bound: the combined
// envelope for randomized depth of an empirical measure of size N.
double empirical_total_bound(long long N, long long n, int d, const Modulus& m,
                             double slack_eps);

}  // namespace rpdepth
