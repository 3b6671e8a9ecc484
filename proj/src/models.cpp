#include "rpdepth/models.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "rpdepth/special.hpp"

namespace rpdepth {

namespace {

MarginalCdf with_defaults(MarginalCdf m) {
  if (!m.cdf) throw std::invalid_argument("MarginalCdf: cdf handle is required");
  if (!m.sf) {
    auto cdf = m.cdf;
    m.sf = [cdf](double t) { return 1.0 - cdf(t); };
  }
  if (!m.quantile) {
    auto cdf = m.cdf;
    m.quantile = [cdf](double q) {
      if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile: q must lie in (0, 1)");
      double lo = -1.0, hi = 1.0;
      while (cdf(lo) > q && lo > -1e300) lo *= 2.0;
      while (cdf(hi) < q && hi < 1e300) hi *= 2.0;
      return invert_increasing(cdf, lo, hi, q, 1e-13);
    };
  }
  return m;
}

void check_dimension(const Model& model, const Vec& x) {
  if (x.size() != model.d) throw std::invalid_argument("point dimension does not match model");
}

// Whitening against the model's cached Cholesky factor.
Vec whiten_cached(const Model& model, const Vec& x) {
  return model.chol.triangularView<Eigen::Lower>().solve(x - model.mu);
}

Mat cholesky_lower(const Mat& sigma) {
  if (sigma.rows() != sigma.cols()) throw std::invalid_argument("sigma must be square");
  const double scale = sigma.cwiseAbs().maxCoeff();
  if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, scale)) {
    throw std::invalid_argument("sigma must be symmetric");
  }
  Eigen::LLT<Mat> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("sigma must be positive definite (Cholesky failed)");
  }
  return llt.matrixL();
}

}  // namespace

MarginalCdf gaussian_marginal() {
  return with_defaults({"gaussian",
                        [](double t) { return normal_cdf(t); },
                        [](double t) { return normal_sf(t); },
                        nullptr});
}

MarginalCdf cauchy_marginal() {
  return with_defaults({"cauchy",
                        [](double t) { return cauchy_cdf(t); },
                        [](double t) { return cauchy_sf(t); },
                        [](double q) { return std::tan(M_PI * (q - 0.5)); }});
}

MarginalCdf student_t_marginal(int nu) {
  if (nu < 1) throw std::invalid_argument("student_t_marginal: nu must be >= 1");
  return with_defaults({"student_t",
                        [nu](double t) { return student_t_cdf(t, nu); },
                        [nu](double t) { return student_t_sf(t, nu); },
                        nullptr});
}

MarginalCdf uniform_ball_marginal(int d) {
  if (d < 2) throw std::invalid_argument("uniform_ball_marginal: d must be >= 2");
  return with_defaults({"uniform_ball",
                        [d](double t) { return uniform_ball_proj_cdf(t, d); },
                        [d](double t) { return uniform_ball_proj_sf(t, d); },
                        nullptr});
}

Model Model::gaussian_std(int d) {
  if (d < 2) throw std::invalid_argument("Model: d must be >= 2");
  Model m;
  m.family = Family::gaussian;
  m.d = d;
  m.marginal = gaussian_marginal();
  return m;
}

Model Model::student_t(int d, int nu) {
  if (d < 2) throw std::invalid_argument("Model: d must be >= 2");
  if (nu < 1) throw std::invalid_argument("Model: nu must be >= 1");
  Model m;
  m.family = Family::student_t;
  m.d = d;
  m.nu = nu;
  m.marginal = student_t_marginal(nu);
  return m;
}

Model Model::uniform_ball(int d) {
  if (d < 2) throw std::invalid_argument("Model: d must be >= 2");
  Model m;
  m.family = Family::uniform_ball;
  m.d = d;
  m.marginal = uniform_ball_marginal(d);
  return m;
}

Model Model::p_symmetric(int d, double p, MarginalCdf marginal) {
  if (d < 2) throw std::invalid_argument("Model: d must be >= 2");
  if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("Model: p must lie in (0, 2]");
  Model m;
  m.family = Family::p_symmetric;
  m.d = d;
  m.p = p;
  m.marginal = with_defaults(std::move(marginal));
  return m;
}

Model Model::elliptical(Model base, Vec mu, Mat sigma) {
  if (base.family == Family::elliptical) {
    throw std::invalid_argument("Model: elliptical base must not itself be elliptical");
  }
  if (mu.size() != base.d || sigma.rows() != base.d) {
    throw std::invalid_argument("Model: mu/sigma dimensions must match the base");
  }
  Model m;
  m.family = Family::elliptical;
  m.d = base.d;
  m.chol = cholesky_lower(sigma);
  m.sigma = std::move(sigma);
  m.mu = std::move(mu);
  m.base = std::make_shared<const Model>(std::move(base));
  return m;
}

bool Model::has_spherical_marginal() const {
  switch (family) {
    case Family::gaussian:
    case Family::student_t:
    case Family::uniform_ball:
      return true;
    case Family::p_symmetric:
      return p == 2.0;
    case Family::elliptical:
      return false;
  }
  return false;
}

bool Model::samplable() const {
  switch (family) {
    case Family::gaussian:
    case Family::student_t:
    case Family::uniform_ball:
      return true;
    case Family::p_symmetric:
      return (p == 2.0 && marginal.name == "gaussian") ||
             (p == 1.0 && marginal.name == "cauchy");
    case Family::elliptical:
      return base->samplable();
  }
  return false;
}

std::string Model::family_name() const {
  switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::student_t: return "student_t";
    case Family::uniform_ball: return "uniform_ball";
    case Family::p_symmetric: return "p_symmetric";
    case Family::elliptical: return "elliptical";
  }
  return "?";
}

Dataset::Dataset(Mat pts) : points(std::move(pts)) {
  if (points.rows() < 1) throw std::invalid_argument("Dataset: need at least one point");
  if (points.cols() < 1) throw std::invalid_argument("Dataset: need dimension >= 1");
}

double marginal_cdf(const Model& model, double t) {
  if (model.family == Family::elliptical) {
    throw std::invalid_argument("marginal_cdf: elliptical models have no direction-free marginal; whiten first");
  }
  return model.marginal.cdf(t);
}

double conjugate_index(double p) {
  if (!(p > 0.0 && p <= 2.0)) throw std::invalid_argument("conjugate_index: p must lie in (0, 2]");
  if (p <= 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

double lq_norm(const Vec& x, double q) {
  if (std::isinf(q)) return x.cwiseAbs().maxCoeff();
  if (q == 2.0) return x.norm();
  if (q == 1.0) return x.cwiseAbs().sum();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::fabs(x[i]), q);
  return std::pow(s, 1.0 / q);
}

double exact_halfspace_depth(const Model& model, const Vec& x) {
  check_dimension(model, x);
  // The true value lies in [0, 1/2]; the clamp removes sub-ulp overshoot of
  // the marginal CDF at the symmetry point.
  switch (model.family) {
    case Family::gaussian:
    case Family::student_t:
    case Family::uniform_ball:
      return std::min(0.5, model.marginal.cdf(-x.norm()));
    case Family::p_symmetric:
      return std::min(0.5, model.marginal.cdf(-lq_norm(x, conjugate_index(model.p))));
    case Family::elliptical:
      return exact_halfspace_depth(*model.base, whiten_cached(model, x));
  }
  throw std::logic_error("unreachable");
}

double halfspace_function(const Model& model, const Vec& x, const Vec& u) {
  check_dimension(model, x);
  if (u.size() != model.d) throw std::invalid_argument("direction dimension does not match model");
  const double un = u.norm();
  if (un <= 0.0) throw std::invalid_argument("halfspace_function: zero direction");
  switch (model.family) {
    case Family::gaussian:
    case Family::student_t:
    case Family::uniform_ball:
      return model.marginal.cdf(u.dot(x) / un);
    case Family::p_symmetric:
      return model.marginal.cdf(x.dot(u) / lq_norm(u, model.p));
    case Family::elliptical: {
      // P(<u, X> <= <u, x>) = P(<L^T u, Z> <= <u, x - mu>) for X = mu + L Z.
      const Vec w = model.chol.transpose() * u;
      return halfspace_function(*model.base, whiten_cached(model, x), w / w.norm());
    }
  }
  throw std::logic_error("unreachable");
}

Vec whiten(const Mat& sigma, const Vec& mu, const Vec& x) {
  if (mu.size() != x.size() || sigma.rows() != x.size()) {
    throw std::invalid_argument("whiten: dimension mismatch");
  }
  const Mat L = cholesky_lower(sigma);
  return L.triangularView<Eigen::Lower>().solve(x - mu);
}

double marginal_mad(const Model& model) {
  if (model.family == Family::elliptical) {
    throw std::invalid_argument("marginal_mad: elliptical models have no direction-free marginal");
  }
  return model.marginal.quantile(0.75);
}

Vec sample_point(const Model& model, Rng& rng) {
  switch (model.family) {
    case Family::gaussian: {
      Vec z(model.d);
      for (int i = 0; i < model.d; ++i) z[i] = rng.normal();
      return z;
    }
    case Family::student_t: {
      Vec z(model.d);
      for (int i = 0; i < model.d; ++i) z[i] = rng.normal();
      double chi2 = 0.0;
      for (int i = 0; i < model.nu; ++i) {
        const double g = rng.normal();
        chi2 += g * g;
      }
      return z * std::sqrt(model.nu / chi2);
    }
    case Family::uniform_ball: {
      Vec z(model.d);
      double norm = 0.0;
      do {
        for (int i = 0; i < model.d; ++i) z[i] = rng.normal();
        norm = z.norm();
      } while (norm < 1e-8);
      const double r = std::pow(rng.uniform01(), 1.0 / model.d);
      return z * (r / norm);
    }
    case Family::p_symmetric: {
      if (model.p == 2.0 && model.marginal.name == "gaussian") {
        Vec z(model.d);
        for (int i = 0; i < model.d; ++i) z[i] = rng.normal();
        return z;
      }
      if (model.p == 1.0 && model.marginal.name == "cauchy") {
        Vec z(model.d);
        for (int i = 0; i < model.d; ++i) z[i] = rng.cauchy();
        return z;
      }
      throw std::invalid_argument("sample_point: no sampler for this p-symmetric model");
    }
    case Family::elliptical:
      return model.mu + model.chol * sample_point(*model.base, rng);
  }
  throw std::logic_error("unreachable");
}

Mat sample_points(const Model& model, int count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("sample_points: count must be >= 1");
  Mat out(count, model.d);
  for (int i = 0; i < count; ++i) out.row(i) = sample_point(model, rng).transpose();
  return out;
}

}  // namespace rpdepth
