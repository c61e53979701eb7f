#include "treehardy/weights.hpp"

#include <cmath>
#include <cstdio>

namespace treehardy {

namespace {

// Endpoint slack for the parameter-range checks.  The beta = 1/2 family on
// the binary tree has a single admissible gamma (the range degenerates to
// the point q^{-1/2}), and callers routinely pass 8-significant-digit
// decimals of that endpoint; 1e-8 admits those without letting genuinely
// out-of-range parameters through.  The inequality itself holds for any
// gamma > 0 (the weight is the exact Schroedinger quotient of the
// supersolution); the range check only governs the sign of the weight near
// the root.
constexpr double kEndpointSlack = 1e-8;
constexpr radius_t kMonotoneHorizon = 65536;

void require_q(int q) {
  if (q < 2) throw DomainError("weight families on the homogeneous tree require q >= 2");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw DomainError(std::string(what) + " must be positive");
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

double log2_of(double v) { return std::log(v) / std::log(2.0); }

/** The inner bracket (1+1/n)^beta + (1-1/n)^beta of the tail formulas. */
double tail_bracket(double beta, radius_t n) {
  double inv = 1.0 / static_cast<double>(n);
  return std::pow(1.0 + inv, beta) + std::pow(1.0 - inv, beta);
}

ParamCheck violation(std::string msg) { return ParamCheck{false, std::move(msg)}; }

ParamCheck check_beta_gamma(int q, double beta, double gamma) {
  double sq = std::sqrt(static_cast<double>(q));
  double beta_hi = log2_of(sq);
  if (beta < -kEndpointSlack)
    return violation(fmt("beta = %.12g is below the lower bound 0", beta, 0.0));
  if (beta > beta_hi + kEndpointSlack)
    return violation(fmt("beta = %.12g exceeds log2(sqrt(q)) = %.12g", beta, beta_hi));
  double glo = 1.0 / sq;
  double ghi = 1.0 / sq + sq - std::pow(2.0, beta);
  if (gamma < glo - kEndpointSlack)
    return violation(fmt("gamma = %.12g is below q^(-1/2) = %.12g", gamma, glo));
  if (gamma > ghi + kEndpointSlack)
    return violation(
        fmt("gamma = %.12g exceeds q^(-1/2) + q^(1/2) - 2^beta = %.12g", gamma, ghi));
  return {};
}

ParamCheck check_remainder_beta_gamma(int q, double beta, double gamma) {
  double beta_hi = log2_of(1.5 - 0.5 / static_cast<double>(q));
  if (beta < -kEndpointSlack)
    return violation(fmt("beta = %.12g is below the lower bound 0", beta, 0.0));
  if (beta > beta_hi + kEndpointSlack)
    return violation(fmt("beta = %.12g exceeds log2(3/2 - 1/(2q)) = %.12g", beta, beta_hi));
  double glo = 0.5 + 0.5 / static_cast<double>(q);
  double ghi = 2.0 - std::pow(2.0, beta);
  if (gamma < glo - kEndpointSlack)
    return violation(fmt("gamma = %.12g is below 1/2 + 1/(2q) = %.12g", gamma, glo));
  if (gamma > ghi + kEndpointSlack)
    return violation(fmt("gamma = %.12g exceeds 2 - 2^beta = %.12g", gamma, ghi));
  return {};
}

ParamCheck check_radial_tree(const WeightSpec& w) {
  if (!w.tree) return violation("radial-tree family requires a branching profile");
  const RadialTreeSpec& tree = *w.tree;
  if (!(w.beta < 1.0))
    return violation(fmt("beta = %.12g must be strictly below 1", w.beta, 0.0));
  double m1 = static_cast<double>(tree.branching(1));
  double glo = 1.0 / std::sqrt(w.psi1);
  double upper_factor = m1 + 1.0 - std::sqrt(m1) * std::pow(2.0, w.beta);
  double ghi = glo * upper_factor;
  if (ghi < glo - kEndpointSlack)
    return violation(fmt("gamma range is empty: beta = %.12g exceeds log2(sqrt(branching(1))) = %.12g",
                         w.beta, log2_of(std::sqrt(m1))));
  if (w.gamma < glo - kEndpointSlack)
    return violation(fmt("gamma = %.12g is below Psi(1)^(-1/2) = %.12g", w.gamma, glo));
  if (w.gamma > ghi + kEndpointSlack)
    return violation(fmt(
        "gamma = %.12g exceeds Psi(1)^(-1/2) * (branching(1) + 1 - sqrt(branching(1)) * 2^beta) = %.12g",
        w.gamma, ghi));
  for (radius_t n = 1; n < kMonotoneHorizon; ++n) {
    if (tree.branching(n + 1) < tree.branching(n)) {
      char buf[128];
      std::snprintf(buf, sizeof buf,
                    "branching must be nondecreasing from radius 1; it decreases at radius %lld",
                    static_cast<long long>(n + 1));
      return violation(buf);
    }
  }
  return {};
}

void require_valid(const WeightSpec& w) {
  ParamCheck c = validate_params(w);
  if (!c.ok) throw InvalidParamError(c.message);
}

}  // namespace

WeightSpec WeightSpec::optimal(int q) {
  require_q(q);
  WeightSpec w;
  w.family = WeightFamily::Wopt;
  w.q = q;
  return w;
}

WeightSpec WeightSpec::beta_gamma(int q, double beta, double gamma) {
  require_q(q);
  require_positive(gamma, "gamma");
  WeightSpec w;
  w.family = WeightFamily::WbetaGamma;
  w.q = q;
  w.beta = beta;
  w.gamma = gamma;
  return w;
}

WeightSpec WeightSpec::half_gamma(int q, double gamma) {
  require_q(q);
  require_positive(gamma, "gamma");
  WeightSpec w;
  w.family = WeightFamily::WhalfGamma;
  w.q = q;
  w.beta = 0.5;
  w.gamma = gamma;
  return w;
}

WeightSpec WeightSpec::radial_tree(RadialTreeSpec spec, double beta, double gamma, double psi1) {
  require_positive(gamma, "gamma");
  require_positive(psi1, "psi1");
  WeightSpec w;
  w.family = WeightFamily::RadialTreeW;
  w.beta = beta;
  w.gamma = gamma;
  w.psi1 = psi1;
  w.tree = std::move(spec);
  return w;
}

WeightSpec WeightSpec::remainder_rq(int q) {
  require_q(q);
  WeightSpec w;
  w.family = WeightFamily::RemainderRq;
  w.q = q;
  return w;
}

WeightSpec WeightSpec::remainder_beta_gamma(int q, double beta, double gamma) {
  require_q(q);
  require_positive(gamma, "gamma");
  WeightSpec w;
  w.family = WeightFamily::RemainderBetaGamma;
  w.q = q;
  w.beta = beta;
  w.gamma = gamma;
  return w;
}

WeightSpec WeightSpec::remainder_bar(int q) {
  require_q(q);
  WeightSpec w;
  w.family = WeightFamily::RemainderBar;
  w.q = q;
  return w;
}

std::string WeightSpec::describe() const {
  char buf[256];
  switch (family) {
    case WeightFamily::Wopt:
      std::snprintf(buf, sizeof buf, "wopt:q=%d", q);
      return buf;
    case WeightFamily::WbetaGamma:
      std::snprintf(buf, sizeof buf, "wbg:q=%d,beta=%.17g,gamma=%.17g", q, beta, gamma);
      return buf;
    case WeightFamily::WhalfGamma:
      std::snprintf(buf, sizeof buf, "whg:q=%d,gamma=%.17g", q, gamma);
      return buf;
    case WeightFamily::RadialTreeW:
      std::snprintf(buf, sizeof buf, "wradial:spec=(%s),beta=%.17g,gamma=%.17g,psi1=%.17g",
                    tree->describe().c_str(), beta, gamma, psi1);
      return buf;
    case WeightFamily::RemainderRq:
      std::snprintf(buf, sizeof buf, "rq:q=%d", q);
      return buf;
    case WeightFamily::RemainderBetaGamma:
      std::snprintf(buf, sizeof buf, "rbg:q=%d,beta=%.17g,gamma=%.17g", q, beta, gamma);
      return buf;
    case WeightFamily::RemainderBar:
      std::snprintf(buf, sizeof buf, "rbar:q=%d", q);
      return buf;
  }
  throw DomainError("unknown weight family");
}

ParamCheck validate_params(const WeightSpec& w) {
  switch (w.family) {
    case WeightFamily::Wopt:
    case WeightFamily::RemainderRq:
    case WeightFamily::RemainderBar:
      return {};
    case WeightFamily::WbetaGamma:
      return check_beta_gamma(w.q, w.beta, w.gamma);
    case WeightFamily::WhalfGamma:
      return check_beta_gamma(w.q, 0.5, w.gamma);
    case WeightFamily::RemainderBetaGamma:
      return check_remainder_beta_gamma(w.q, w.beta, w.gamma);
    case WeightFamily::RadialTreeW:
      return check_radial_tree(w);
  }
  return violation("unknown weight family");
}

double lambda_q(int q) {
  require_q(q);
  double s = std::sqrt(static_cast<double>(q)) - 1.0;
  return s * s;
}

double evaluate_weight(const WeightSpec& w, radius_t n) {
  if (n < 0) throw DomainError("radius must be nonnegative");
  if (w.is_remainder())
    throw InvalidParamError("remainder families have no weight value; use evaluate_remainder");
  require_valid(w);
  switch (w.family) {
    case WeightFamily::Wopt: {
      double sq = std::sqrt(static_cast<double>(w.q));
      if (n == 0) return lambda_q(w.q) + sq - 1.0 / sq;
      return lambda_q(w.q);
    }
    case WeightFamily::WbetaGamma:
    case WeightFamily::WhalfGamma: {
      double q = static_cast<double>(w.q);
      double sq = std::sqrt(q);
      double beta = (w.family == WeightFamily::WhalfGamma) ? 0.5 : w.beta;
      if (n == 0) return q + 1.0 - (sq + 1.0 / sq) / w.gamma;
      if (n == 1) return q + 1.0 - sq * (std::pow(2.0, beta) + w.gamma);
      return q + 1.0 - sq * tail_bracket(beta, n);
    }
    case WeightFamily::RadialTreeW: {
      const RadialTreeSpec& tree = *w.tree;
      double sqrt_psi1 = std::sqrt(w.psi1);
      if (n == 0) {
        double m0p1 = static_cast<double>(tree.branching(0)) + 1.0;
        return m0p1 - m0p1 / (w.gamma * sqrt_psi1);
      }
      if (n == 1) {
        double m1 = static_cast<double>(tree.branching(1));
        return m1 + 1.0 - std::sqrt(m1) * std::pow(2.0, w.beta) - sqrt_psi1 * w.gamma;
      }
      double mn = static_cast<double>(tree.branching(n));
      double mprev = static_cast<double>(tree.branching(n - 1));
      double inv = 1.0 / static_cast<double>(n);
      return mn + 1.0 - std::sqrt(mn) * std::pow(1.0 + inv, w.beta) -
             std::sqrt(mprev) * std::pow(1.0 - inv, w.beta);
    }
    default:
      throw InvalidParamError("unknown weight family");
  }
}

double evaluate_remainder(const WeightSpec& w, radius_t n) {
  if (n < 0) throw DomainError("radius must be nonnegative");
  if (!w.is_remainder())
    throw InvalidParamError("weight families have no remainder value; use evaluate_weight");
  require_valid(w);
  double q = static_cast<double>(w.q);
  double sq = std::sqrt(q);
  switch (w.family) {
    case WeightFamily::RemainderRq:
      return n == 0 ? sq - 1.0 / sq : 0.0;
    case WeightFamily::RemainderBetaGamma:
      if (n == 0) return sq * (2.0 - 1.0 / w.gamma - 1.0 / (q * w.gamma));
      if (n == 1) return sq * (2.0 - std::pow(2.0, w.beta) - w.gamma);
      return sq * (2.0 - tail_bracket(w.beta, n));
    case WeightFamily::RemainderBar:
      if (n < 2) throw DomainError("this remainder is defined only on radii >= 2");
      return sq * (2.0 - tail_bracket(0.5, n));
    default:
      throw InvalidParamError("unknown weight family");
  }
}

double asymptotic_gap(const WeightSpec& w, radius_t n) {
  if (n < 2) throw DomainError("asymptotic_gap requires radius n >= 2");
  require_valid(w);
  double nn = static_cast<double>(n);
  switch (w.family) {
    case WeightFamily::Wopt:
      return 0.0;  // the weight equals the gap constant on every radius >= 1
    case WeightFamily::WbetaGamma:
    case WeightFamily::WhalfGamma: {
      double beta = (w.family == WeightFamily::WhalfGamma) ? 0.5 : w.beta;
      return nn * nn * (2.0 - tail_bracket(beta, n));
    }
    default:
      throw InvalidParamError("asymptotic_gap applies to the homogeneous-tree weight families");
  }
}

SupersolutionWeight weight_from_supersolution(const RadialTreeSpec& spec, const RadialFunction& f,
                                              radius_t lo, radius_t hi, double tol) {
  if (lo < 0 || hi < lo) throw DomainError("weight_from_supersolution needs 0 <= lo <= hi");
  SupersolutionWeight out;
  out.start = lo;
  out.values.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (radius_t n = lo; n <= hi; ++n) {
    double wv = laplacian_quotient(spec, f, n);
    if (wv < -tol && !out.first_negative) out.first_negative = n;
    out.values.push_back(wv);
  }
  return out;
}

RadialFn as_function(const WeightSpec& w) {
  require_valid(w);
  if (w.is_remainder()) {
    WeightSpec copy = w;
    return [copy](radius_t n) { return evaluate_remainder(copy, n); };
  }
  switch (w.family) {
    case WeightFamily::Wopt: {
      double sq = std::sqrt(static_cast<double>(w.q));
      double lam = lambda_q(w.q);
      double at0 = lam + sq - 1.0 / sq;
      return [lam, at0](radius_t n) { return n == 0 ? at0 : lam; };
    }
    case WeightFamily::WbetaGamma:
    case WeightFamily::WhalfGamma: {
      double q = static_cast<double>(w.q);
      double sq = std::sqrt(q);
      double beta = (w.family == WeightFamily::WhalfGamma) ? 0.5 : w.beta;
      double at0 = q + 1.0 - (sq + 1.0 / sq) / w.gamma;
      double at1 = q + 1.0 - sq * (std::pow(2.0, beta) + w.gamma);
      return [q, sq, beta, at0, at1](radius_t n) {
        if (n == 0) return at0;
        if (n == 1) return at1;
        return q + 1.0 - sq * tail_bracket(beta, n);
      };
    }
    case WeightFamily::RadialTreeW: {
      RadialTreeSpec tree = *w.tree;
      double beta = w.beta;
      double sqrt_psi1 = std::sqrt(w.psi1);
      double gamma = w.gamma;
      return [tree, beta, sqrt_psi1, gamma](radius_t n) {
        if (n == 0) {
          double m0p1 = static_cast<double>(tree.branching(0)) + 1.0;
          return m0p1 - m0p1 / (gamma * sqrt_psi1);
        }
        if (n == 1) {
          double m1 = static_cast<double>(tree.branching(1));
          return m1 + 1.0 - std::sqrt(m1) * std::pow(2.0, beta) - sqrt_psi1 * gamma;
        }
        double mn = static_cast<double>(tree.branching(n));
        double mprev = static_cast<double>(tree.branching(n - 1));
        double inv = 1.0 / static_cast<double>(n);
        return mn + 1.0 - std::sqrt(mn) * std::pow(1.0 + inv, beta) -
               std::sqrt(mprev) * std::pow(1.0 - inv, beta);
      };
    }
    default:
      throw InvalidParamError("unknown weight family");
  }
}

}  // namespace treehardy
