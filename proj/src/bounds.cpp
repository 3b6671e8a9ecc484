#include "rpdepth/bounds.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "rpdepth/special.hpp"
#include "rpdepth/sphere.hpp"

namespace rpdepth {

namespace {

void check_angle(double t) {
  if (!(t >= 0.0 && t <= M_PI)) throw std::invalid_argument("modulus argument must lie in [0, pi]");
}

// delta_1/delta_2 coefficients of the p-symmetric rate. For p in [1, 2] the
// bound is coef * sin(t/2) (resp. coef * t/2) with
// coef = d^{1/p - 1/2} (d^{1/2 - 1/q} + 1).
double psym_coef(double p, int d) {
  const double q = conjugate_index(p);
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  return std::pow(d, 1.0 / p - 0.5) * (std::pow(d, 0.5 - inv_q) + 1.0);
}

double psym_eval(double p, int d, double s, double s_p) {
  // s is sin(t/2) for delta_1 and t/2 for delta_2; s_p its p-th power term.
  if (p >= 1.0) return psym_coef(p, d) * s;
  return std::pow(d, 1.0 / p) * s + std::pow(d, 1.0 / p - 0.5) / p * s_p;
}

void validate_psym(double p, int d) {
  if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("Modulus: p must lie in (0, 2]");
  if (d < 2) throw std::invalid_argument("Modulus: d must be >= 2");
}

// Closed-form maximizer t* of t -> F_p(t) - F_p(t cos(eps)), when known.
// Returns a negative value when no closed form applies.
double tight_argmax_closed_form(const Model& model, double eps) {
  const double c = std::cos(eps);
  const bool gaussian = model.family == Family::gaussian ||
                        (model.family == Family::p_symmetric && model.p == 2.0 &&
                         model.marginal.name == "gaussian");
  if (gaussian) {
    // -2 log cos(eps) evaluated as -2 log1p(-2 sin^2(eps/2)) for stability.
    const double sh = std::sin(0.5 * eps);
    const double m2logc = -2.0 * std::log1p(-2.0 * sh * sh);
    return std::sqrt(m2logc) / std::sin(eps);
  }
  if (model.family == Family::student_t && model.nu == 1) return 1.0 / std::sqrt(c);
  if (model.family == Family::student_t && model.nu == 3) {
    const double rc = std::sqrt(c);
    return std::sqrt(3.0 * (rc - 1.0) / (c * c - rc));
  }
  if (model.family == Family::uniform_ball && model.d == 2) {
    return std::sqrt(2.0 / (std::cos(2.0 * eps) + 3.0));
  }
  if (model.family == Family::uniform_ball && model.d == 3) {
    return std::sqrt((c - 1.0) / (c * c * c - 1.0));
  }
  return -1.0;
}

}  // namespace

Modulus Modulus::lipschitz(double L) {
  if (!(L >= 0.0)) throw std::invalid_argument("Modulus: L must be non-negative");
  Modulus m;
  m.kind = Kind::lipschitz;
  m.L = L;
  return m;
}

Modulus Modulus::holder(double K, double alpha) {
  if (!(K > 0.0)) throw std::invalid_argument("Modulus: K must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("Modulus: alpha must lie in (0, 1]");
  Modulus m;
  m.kind = Kind::holder;
  m.K = K;
  m.alpha = alpha;
  return m;
}

Modulus Modulus::elliptical1() {
  Modulus m;
  m.kind = Kind::elliptical1;
  return m;
}

Modulus Modulus::elliptical2() {
  Modulus m;
  m.kind = Kind::elliptical2;
  return m;
}

Modulus Modulus::psym1(double p, int d) {
  validate_psym(p, d);
  Modulus m;
  m.kind = Kind::psym1;
  m.p = p;
  m.d = d;
  return m;
}

Modulus Modulus::psym2(double p, int d) {
  validate_psym(p, d);
  Modulus m;
  m.kind = Kind::psym2;
  m.p = p;
  m.d = d;
  return m;
}

Modulus Modulus::tight(Model spherical_model) {
  if (!spherical_model.has_spherical_marginal()) {
    throw std::invalid_argument("Modulus::tight requires a model with a spherical marginal");
  }
  Modulus m;
  m.kind = Kind::tight;
  m.model = std::make_shared<const Model>(std::move(spherical_model));
  return m;
}

std::string Modulus::name() const {
  switch (kind) {
    case Kind::lipschitz: return "lipschitz";
    case Kind::holder: return "holder";
    case Kind::elliptical1: return "ellipt1";
    case Kind::elliptical2: return "ellipt2";
    case Kind::psym1: return "psym1";
    case Kind::psym2: return "psym2";
    case Kind::tight: return "tight";
  }
  return "?";
}

double modulus_eval(const Modulus& m, double t) {
  check_angle(t);
  const double sh = std::sin(0.5 * t);
  switch (m.kind) {
    case Modulus::Kind::lipschitz: return m.L * t;
    case Modulus::Kind::holder: return m.K * std::pow(t, m.alpha);
    case Modulus::Kind::elliptical1: return sh * sh;  // (1 - cos t)/2
    case Modulus::Kind::elliptical2: return 0.25 * t * t;
    case Modulus::Kind::psym1: return psym_eval(m.p, m.d, sh, std::pow(2.0 * sh, m.p) / 2.0);
    case Modulus::Kind::psym2: return psym_eval(m.p, m.d, 0.5 * t, std::pow(t, m.p) / 2.0);
    case Modulus::Kind::tight:
      if (t == 0.0) return 0.0;
      // Past pi/2 the tight objective degenerates (cos t <= 0); fall back to
      // the elliptical envelope, which the tight modulus never exceeds.
      if (t >= M_PI_2) return sh * sh;
      return tight_modulus(*m.model, t);
  }
  throw std::logic_error("unreachable");
}

double tight_modulus(const Model& model, double eps) {
  if (!model.has_spherical_marginal()) {
    throw std::invalid_argument("tight_modulus requires a model with a spherical marginal");
  }
  if (!(eps > 0.0 && eps < M_PI_2)) {
    throw std::invalid_argument("tight_modulus: eps must lie in (0, pi/2)");
  }
  const double c = std::cos(eps);
  const auto& marginal = model.marginal;
  auto objective = [&](double t) { return marginal.sf(t * c) - marginal.sf(t); };

  double tstar = tight_argmax_closed_form(model, eps);
  if (tstar < 0.0) {
    // Bracket [0, T] with the objective's tail below 1e-14, then golden
    // section (the objective is unimodal for unimodal marginals).
    double T = 1.0;
    while (marginal.sf(T * c) > 1e-14 && T < 1e300) T *= 2.0;
    tstar = golden_max(objective, 0.0, T, std::max(1e-12, 1e-15 * T));
  }
  return objective(tstar);
}

double lipschitz_bounded_density(double M, double diam, int d) {
  if (!(M > 0.0) || !(diam > 0.0)) throw std::invalid_argument("lipschitz_bounded_density: M and diam must be positive");
  if (d < 1) throw std::invalid_argument("lipschitz_bounded_density: d must be >= 1");
  return std::exp(std::log(M) + (0.5 * d - 1.0) * std::log(M_PI) +
                  d * std::log(diam) - std::lgamma(0.5 * d + 1.0));
}

double affine_condition_constant(const Mat& A) {
  if (A.rows() != A.cols() || A.rows() < 1) throw std::invalid_argument("affine_condition_constant: A must be square");
  Eigen::JacobiSVD<Mat> svd(A);
  const double l1 = svd.singularValues()(0);
  const double ld = svd.singularValues()(A.rows() - 1);
  if (!(ld > l1 * 1e-12) || !(l1 > 0.0)) {
    throw std::invalid_argument("affine_condition_constant: A is numerically singular");
  }
  const double r = l1 / ld;
  return 0.5 * M_PI * r * (1.0 + r);
}

namespace {

void check_rate_domain(long long n, int d) {
  if (n < 16) throw std::invalid_argument("error_bound: n must be >= 16 (log log n > 0)");
  if (d < 2) throw std::invalid_argument("error_bound: d must be >= 2");
}

struct Rate {
  double rate;
  double phi;
  bool saturated;
};

Rate rate_angle(long long n, int d) {
  const double ln = std::log(static_cast<double>(n));
  const double rate = (d * std::log(ln) + ln) / static_cast<double>(n);
  const bool saturated = rate > 1.0;
  return {rate, cap_area_inv(d, saturated ? 1.0 : rate), saturated};
}

}  // namespace

BoundResult error_bound(long long n, int d, const Modulus& m) {
  check_rate_domain(n, d);
  const Rate r = rate_angle(n, d);
  return BoundResult{n, d, r.rate, r.phi, modulus_eval(m, r.phi), r.saturated};
}

PlanResult plan_directions(double target_eps, int d, const Modulus& m,
                           long long n_max) {
  if (!(target_eps > 0.0 && target_eps < 0.5)) {
    throw std::invalid_argument("plan_directions: target_eps must lie in (0, 1/2)");
  }
  if (n_max < 16) throw std::invalid_argument("plan_directions: n_max must be >= 16");

  auto bound_at = [&](long long n) { return error_bound(n, d, m).bound; };
  if (bound_at(16) <= target_eps) return {target_eps, 16, bound_at(16), true};
  if (bound_at(n_max) > target_eps) return {target_eps, 0, bound_at(n_max), false};

  // The bound is non-increasing in n on [16, n_max]: exponential bracket,
  // then binary search for the smallest admissible n.
  long long lo = 16, hi = 16;
  while (bound_at(hi) > target_eps) {
    lo = hi;
    hi = std::min(n_max, hi * 2);
  }
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    if (bound_at(mid) <= target_eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {target_eps, hi, bound_at(hi), true};
}

double zeta(double tau, int k) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("zeta: tau must lie in (0, 1]");
  if (k < 1) throw std::invalid_argument("zeta: k must be >= 1");
  const double y = std::pow(tau, 0.5 * k);
  return (1.0 - y) / (1.0 + y);
}

double zeta_inv(double z, int k) {
  if (!(z >= 0.0 && z < 1.0)) throw std::invalid_argument("zeta_inv: z must lie in [0, 1)");
  if (k < 1) throw std::invalid_argument("zeta_inv: k must be >= 1");
  return std::pow((1.0 - z) / (1.0 + z), 2.0 / k);
}

BoundResult projection_error_bound(long long n, int d, int k) {
  check_rate_domain(n, d);
  if (k < 1) throw std::invalid_argument("projection_error_bound: k must be >= 1");
  const Rate r = rate_angle(n, d);
  // The polar angle enters as the contraction 1 - phi; it must stay below 1.
  if (r.phi >= 1.0) return BoundResult{n, d, r.rate, r.phi, 1.0, true};
  return BoundResult{n, d, r.rate, r.phi, zeta(1.0 - r.phi, k), r.saturated};
}

double empirical_total_bound(long long N, long long n, int d, const Modulus& m,
                             double slack_eps) {
  if (N < 16) throw std::invalid_argument("empirical_total_bound: N must be >= 16");
  if (!(slack_eps >= 0.0)) throw std::invalid_argument("empirical_total_bound: slack must be non-negative");
  const double lN = std::log(static_cast<double>(N));
  return std::sqrt(std::log(lN) / (2.0 * static_cast<double>(N))) + slack_eps +
         error_bound(n, d, m).bound;
}

}  // namespace rpdepth
