#include "treehardy/radial_functions.hpp"

#include <cmath>

namespace treehardy {

namespace {

constexpr radius_t kDeepRadius = 600;

void require_q(int q) {
  if (q < 2) throw DomainError("families on the homogeneous tree require q >= 2");
}

void require_positive_gamma(const std::optional<double>& g) {
  if (g && !(*g > 0.0)) throw DomainError("gamma must be positive");
}

double need_gamma(const std::optional<double>& g) {
  if (!g) throw DomainError("no value at radius 0: gamma was not provided");
  return *g;
}

}  // namespace

RadialFunction RadialFunction::green_sqrt(int q) {
  require_q(q);
  RadialFunction f(RadialFamily::GreenSqrt);
  f.q_ = q;
  return f;
}

RadialFunction RadialFunction::u_beta_gamma(int q, double beta, std::optional<double> gamma) {
  require_q(q);
  require_positive_gamma(gamma);
  RadialFunction f(RadialFamily::UBetaGamma);
  f.q_ = q;
  f.beta_ = beta;
  f.gamma_ = gamma;
  return f;
}

RadialFunction RadialFunction::u_alpha_beta_gamma(int q, double alpha, double beta,
                                                  std::optional<double> gamma) {
  require_q(q);
  require_positive_gamma(gamma);
  RadialFunction f(RadialFamily::UAlphaBetaGamma);
  f.q_ = q;
  f.alpha_ = alpha;
  f.beta_ = beta;
  f.gamma_ = gamma;
  return f;
}

RadialFunction RadialFunction::pair_u(int q, std::optional<double> gamma) {
  require_q(q);
  require_positive_gamma(gamma);
  RadialFunction f(RadialFamily::PairU);
  f.q_ = q;
  f.gamma_ = gamma;
  return f;
}

RadialFunction RadialFunction::pair_v(int q, std::optional<double> gamma) {
  require_q(q);
  require_positive_gamma(gamma);
  RadialFunction f(RadialFamily::PairV);
  f.q_ = q;
  f.gamma_ = gamma;
  return f;
}

RadialFunction RadialFunction::ground_z(int q, std::optional<double> gamma) {
  require_q(q);
  require_positive_gamma(gamma);
  RadialFunction f(RadialFamily::GroundZ);
  f.q_ = q;
  f.gamma_ = gamma;
  return f;
}

RadialFunction RadialFunction::quotient_u0() { return RadialFunction(RadialFamily::QuotientU0); }

RadialFunction RadialFunction::radial_tree_u(RadialTreeSpec spec, double psi1, double beta,
                                             std::optional<double> gamma) {
  if (!(psi1 > 0.0)) throw DomainError("psi1 must be positive");
  require_positive_gamma(gamma);
  RadialFunction f(RadialFamily::RadialTreeU);
  f.tree_ = std::move(spec);
  f.psi1_ = psi1;
  f.beta_ = beta;
  f.gamma_ = gamma;
  return f;
}

RadialFunction RadialFunction::tabulated(std::vector<double> values) {
  if (values.empty()) throw DomainError("tabulated function needs at least one value");
  RadialFunction f(RadialFamily::Tabulated);
  f.log_table_.reserve(values.size());
  for (double v : values) {
    if (!(v > 0.0)) throw DomainError("tabulated values must be positive");
    f.log_table_.push_back(std::log(v));
  }
  return f;
}

RadialFunction RadialFunction::tabulated_log(std::vector<double> log_values) {
  if (log_values.empty()) throw DomainError("tabulated function needs at least one value");
  RadialFunction f(RadialFamily::Tabulated);
  f.log_table_ = std::move(log_values);
  return f;
}

RadialFunction RadialFunction::constant(double c) {
  if (!(c > 0.0)) throw DomainError("constant must be positive");
  RadialFunction f(RadialFamily::Constant);
  f.const_ = c;
  return f;
}

double RadialFunction::log_value(radius_t n) const {
  if (n < 0) throw DomainError("radius must be nonnegative");
  double lq = std::log(static_cast<double>(q_));
  switch (family_) {
    case RadialFamily::GreenSqrt:
      return 0.5 * (lq - std::log(static_cast<double>(q_) - 1.0)) - 0.5 * static_cast<double>(n) * lq;
    case RadialFamily::UBetaGamma:
      if (n == 0) return std::log(need_gamma(gamma_));
      return -0.5 * static_cast<double>(n) * lq + beta_ * std::log(static_cast<double>(n));
    case RadialFamily::UAlphaBetaGamma:
      if (n == 0) return std::log(need_gamma(gamma_));
      return alpha_ * static_cast<double>(n) * lq + beta_ * std::log(static_cast<double>(n));
    case RadialFamily::PairU:
      if (n == 0) return std::log(need_gamma(gamma_));
      return -0.5 * static_cast<double>(n) * lq;
    case RadialFamily::PairV:
      if (n == 0) return std::log(need_gamma(gamma_));
      return std::log(static_cast<double>(n)) - 0.5 * static_cast<double>(n) * lq;
    case RadialFamily::GroundZ:
      if (n == 0) return std::log(need_gamma(gamma_));
      return 0.5 * std::log(static_cast<double>(n)) - 0.5 * static_cast<double>(n) * lq;
    case RadialFamily::QuotientU0:
      if (n == 0) return 0.0;
      return -std::log(static_cast<double>(n));
    case RadialFamily::RadialTreeU: {
      if (n == 0) return std::log(need_gamma(gamma_));
      double lpsi = psi_sequence(*tree_, psi1_, n).log_value();
      return beta_ * std::log(static_cast<double>(n)) - 0.5 * lpsi;
    }
    case RadialFamily::Tabulated:
      if (n >= static_cast<radius_t>(log_table_.size()))
        throw DomainError("radius beyond the tabulated range");
      return log_table_[static_cast<std::size_t>(n)];
    case RadialFamily::Constant:
      return std::log(const_);
  }
  throw DomainError("unknown family");
}

double RadialFunction::value(radius_t n) const {
  if (n < 0) throw DomainError("radius must be nonnegative");
  if (n > kDeepRadius) return std::exp(log_value(n));
  double q = static_cast<double>(q_);
  double nn = static_cast<double>(n);
  switch (family_) {
    case RadialFamily::GreenSqrt:
      return std::sqrt(q / (q - 1.0)) * std::pow(q, -0.5 * nn);
    case RadialFamily::UBetaGamma:
      if (n == 0) return need_gamma(gamma_);
      return std::pow(q, -0.5 * nn) * std::pow(nn, beta_);
    case RadialFamily::UAlphaBetaGamma:
      if (n == 0) return need_gamma(gamma_);
      return std::pow(q, alpha_ * nn) * std::pow(nn, beta_);
    case RadialFamily::PairU:
      if (n == 0) return need_gamma(gamma_);
      return std::pow(q, -0.5 * nn);
    case RadialFamily::PairV:
      if (n == 0) return need_gamma(gamma_);
      return nn * std::pow(q, -0.5 * nn);
    case RadialFamily::GroundZ:
      if (n == 0) return need_gamma(gamma_);
      return std::sqrt(nn) * std::pow(q, -0.5 * nn);
    case RadialFamily::QuotientU0:
      if (n == 0) return 1.0;
      return 1.0 / nn;
    case RadialFamily::RadialTreeU: {
      if (n == 0) return need_gamma(gamma_);
      PsiResult psi = psi_sequence(*tree_, psi1_, n);
      if (psi.log_space) return std::exp(log_value(n));
      return std::pow(nn, beta_) / std::sqrt(psi.v);
    }
    case RadialFamily::Tabulated:
    case RadialFamily::Constant:
      return std::exp(log_value(n));
  }
  throw DomainError("unknown family");
}

double RadialFunction::value_at_one() const {
  switch (family_) {
    case RadialFamily::GreenSqrt:
      return std::sqrt(static_cast<double>(q_) / (q_ - 1.0)) / std::sqrt(static_cast<double>(q_));
    case RadialFamily::UBetaGamma:
    case RadialFamily::PairU:
    case RadialFamily::PairV:
    case RadialFamily::GroundZ:
      return 1.0 / std::sqrt(static_cast<double>(q_));
    case RadialFamily::UAlphaBetaGamma:
      return std::pow(static_cast<double>(q_), alpha_);
    case RadialFamily::QuotientU0:
      return 1.0;
    case RadialFamily::RadialTreeU:
      return 1.0 / std::sqrt(psi1_);
    case RadialFamily::Tabulated:
    case RadialFamily::Constant:
      return value(1);
  }
  throw DomainError("unknown family");
}

double RadialFunction::ratio_up(radius_t n) const {
  if (n < 0) throw DomainError("radius must be nonnegative");
  double q = static_cast<double>(q_);
  double nn = static_cast<double>(n);
  if (n == 0) {
    switch (family_) {
      case RadialFamily::GreenSqrt:
        return 1.0 / std::sqrt(q);
      case RadialFamily::QuotientU0:
        return 1.0;
      case RadialFamily::Constant:
        return 1.0;
      case RadialFamily::Tabulated:
        return std::exp(log_value(1) - log_value(0));
      default:
        return value_at_one() / need_gamma(gamma_);
    }
  }
  switch (family_) {
    case RadialFamily::GreenSqrt:
    case RadialFamily::PairU:
      return 1.0 / std::sqrt(q);
    case RadialFamily::UBetaGamma:
      return std::pow(1.0 + 1.0 / nn, beta_) / std::sqrt(q);
    case RadialFamily::UAlphaBetaGamma:
      return std::pow(q, alpha_) * std::pow(1.0 + 1.0 / nn, beta_);
    case RadialFamily::PairV:
      return (1.0 + 1.0 / nn) / std::sqrt(q);
    case RadialFamily::GroundZ:
      return std::sqrt(1.0 + 1.0 / nn) / std::sqrt(q);
    case RadialFamily::QuotientU0:
      return nn / (nn + 1.0);
    case RadialFamily::RadialTreeU:
      return std::pow(1.0 + 1.0 / nn, beta_) / std::sqrt(static_cast<double>(tree_->branching(n)));
    case RadialFamily::Tabulated:
      return std::exp(log_value(n + 1) - log_value(n));
    case RadialFamily::Constant:
      return 1.0;
  }
  throw DomainError("unknown family");
}

double RadialFunction::ratio_down(radius_t n) const {
  if (n < 1) throw DomainError("ratio_down requires radius n >= 1");
  double q = static_cast<double>(q_);
  double nn = static_cast<double>(n);
  if (n == 1) {
    switch (family_) {
      case RadialFamily::GreenSqrt:
        return std::sqrt(q);
      case RadialFamily::QuotientU0:
        return 1.0;
      case RadialFamily::Constant:
        return 1.0;
      case RadialFamily::Tabulated:
        return std::exp(log_value(0) - log_value(1));
      default:
        return need_gamma(gamma_) / value_at_one();
    }
  }
  switch (family_) {
    case RadialFamily::GreenSqrt:
    case RadialFamily::PairU:
      return std::sqrt(q);
    case RadialFamily::UBetaGamma:
      return std::pow(1.0 - 1.0 / nn, beta_) * std::sqrt(q);
    case RadialFamily::UAlphaBetaGamma:
      return std::pow(q, -alpha_) * std::pow(1.0 - 1.0 / nn, beta_);
    case RadialFamily::PairV:
      return (1.0 - 1.0 / nn) * std::sqrt(q);
    case RadialFamily::GroundZ:
      return std::sqrt(1.0 - 1.0 / nn) * std::sqrt(q);
    case RadialFamily::QuotientU0:
      return nn / (nn - 1.0);
    case RadialFamily::RadialTreeU:
      return std::pow(1.0 - 1.0 / nn, beta_) *
             std::sqrt(static_cast<double>(tree_->branching(n - 1)));
    case RadialFamily::Tabulated:
      return std::exp(log_value(n - 1) - log_value(n));
    case RadialFamily::Constant:
      return 1.0;
  }
  throw DomainError("unknown family");
}

PotentialQ PotentialQ::zero() { return PotentialQ{}; }

PotentialQ PotentialQ::uv_pair(int q) {
  if (q < 2) throw DomainError("uv_pair potential requires q >= 2");
  PotentialQ p;
  p.kind_ = Kind::UVPair;
  p.q_ = q;
  return p;
}

PotentialQ PotentialQ::constant(double c) {
  PotentialQ p;
  p.kind_ = Kind::Constant;
  p.c_ = c;
  return p;
}

PotentialQ PotentialQ::from_fn(RadialFn fn) {
  if (!fn) throw DomainError("from_fn potential requires a callable");
  PotentialQ p;
  p.kind_ = Kind::Fn;
  p.fn_ = std::move(fn);
  return p;
}

double PotentialQ::operator()(radius_t n) const {
  if (n < 0) throw DomainError("radius must be nonnegative");
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return c_;
    case Kind::UVPair: {
      double sq = std::sqrt(static_cast<double>(q_));
      if (n == 0) return 0.0;
      if (n == 1) return sq;
      return -(sq - 1.0) * (sq - 1.0);
    }
    case Kind::Fn:
      return fn_(n);
  }
  return 0.0;
}

double laplacian_radial(const RadialTreeSpec& spec, const RadialFunction& f, radius_t n) {
  if (n < 0) throw DomainError("radius must be nonnegative");
  double m = static_cast<double>(spec.branching(n));
  if (n == 0) return (m + 1.0) * (f.value(0) - f.value(1));
  return (m + 1.0) * f.value(n) - m * f.value(n + 1) - f.value(n - 1);
}

double laplacian_quotient(const RadialTreeSpec& spec, const RadialFunction& f, radius_t n) {
  if (n < 0) throw DomainError("radius must be nonnegative");
  double m = static_cast<double>(spec.branching(n));
  if (n == 0) return (m + 1.0) * (1.0 - f.ratio_up(0));
  return (m + 1.0) - m * f.ratio_up(n) - f.ratio_down(n);
}

double schrodinger_apply(const RadialTreeSpec& spec, const PotentialQ& Q, const RadialFunction& f,
                         radius_t n) {
  return laplacian_radial(spec, f, n) + Q(n) * f.value(n);
}

double schrodinger_quotient(const RadialTreeSpec& spec, const PotentialQ& Q,
                            const RadialFunction& f, radius_t n) {
  return laplacian_quotient(spec, f, n) + Q(n);
}

SuperharmonicReport superharmonic_report(const RadialTreeSpec& spec, const PotentialQ& Q,
                                         const RadialFunction& f, radius_t lo, radius_t hi,
                                         double tol) {
  if (lo < 0 || hi < lo) throw DomainError("superharmonic_report needs 0 <= lo <= hi");
  SuperharmonicReport rep;
  bool first = true;
  for (radius_t n = lo; n <= hi; ++n) {
    double s = schrodinger_quotient(spec, Q, f, n);
    if (first || s < rep.min_quotient) {
      rep.min_quotient = s;
      rep.argmin = n;
      first = false;
    }
    if (s < -tol && !rep.first_violation) rep.first_violation = n;
  }
  return rep;
}

RatioPropernessReport ratio_properness_report(const RadialFunction& f, radius_t horizon) {
  if (horizon < 1) throw DomainError("ratio_properness_report needs horizon >= 1");
  RatioPropernessReport rep;
  for (radius_t n = 0; n < horizon; ++n) {
    double up = f.ratio_up(n);
    double r = up > 1.0 / up ? up : 1.0 / up;
    if (r > rep.sup_ratio) {
      rep.sup_ratio = r;
      rep.arg_sup = n;
    }
  }
  bool decreasing = true;
  for (radius_t n = 1; n < horizon && decreasing; ++n) {
    if (!(f.ratio_up(n) < 1.0)) decreasing = false;
  }
  rep.monotone_to_zero =
      decreasing && f.log_value(horizon) < f.log_value(1) + std::log(0.5);
  return rep;
}

}  // namespace treehardy
