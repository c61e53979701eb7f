#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "treehardy/tree.hpp"

namespace treehardy {

/** Radial scalar field, evaluated by radius. */
using RadialFn = std::function<double(radius_t)>;

enum class RadialFamily {
  GreenSqrt,        // sqrt of the Green function, sqrt(q/(q-1)) * q^(-n/2)
  UBetaGamma,       // gamma at 0, q^(-n/2) * n^beta for n >= 1
  UAlphaBetaGamma,  // gamma at 0, q^(alpha n) * n^beta for n >= 1
  PairU,            // gamma at 0, q^(-n/2)
  PairV,            // gamma at 0, n * q^(-n/2)
  GroundZ,          // gamma at 0, sqrt(n) * q^(-n/2)
  QuotientU0,       // 1 at 0, 1/n for n >= 1
  RadialTreeU,      // gamma at 0, n^beta * Psi(n)^(-1/2) on a general profile
  Tabulated,
  Constant,
};

/**
 * A strictly positive radial function from one of the closed-form families.
 *
 * Values at radius 0 that are a free parameter (gamma) stay unset unless
 * provided; evaluating at 0 without one raises DomainError. Evaluation
 * switches to a log-magnitude path for deep radii, and neighbor ratios
 * f(n+1)/f(n), f(n-1)/f(n) are available in closed form with the decaying
 * common factor cancelled, so Laplacian quotients never underflow.
 */
class RadialFunction {
 public:
  static RadialFunction green_sqrt(int q);
  static RadialFunction u_beta_gamma(int q, double beta,
                                     std::optional<double> gamma = std::nullopt);
  static RadialFunction u_alpha_beta_gamma(int q, double alpha, double beta,
                                           std::optional<double> gamma = std::nullopt);
  static RadialFunction pair_u(int q, std::optional<double> gamma = std::nullopt);
  static RadialFunction pair_v(int q, std::optional<double> gamma = std::nullopt);
  static RadialFunction ground_z(int q, std::optional<double> gamma = std::nullopt);
  static RadialFunction quotient_u0();
  static RadialFunction radial_tree_u(RadialTreeSpec spec, double psi1, double beta,
                                      std::optional<double> gamma = std::nullopt);
  static RadialFunction tabulated(std::vector<double> values);
  static RadialFunction tabulated_log(std::vector<double> log_values);
  static RadialFunction constant(double c);

  RadialFamily family() const { return family_; }
  std::optional<double> gamma() const { return gamma_; }

  double value(radius_t n) const;
  double log_value(radius_t n) const;

  /** f(n+1)/f(n); defined for n >= 0. */
  double ratio_up(radius_t n) const;

  /** f(n-1)/f(n); defined for n >= 1. */
  double ratio_down(radius_t n) const;

 private:
  explicit RadialFunction(RadialFamily f) : family_(f) {}
  double value_at_one() const;

  RadialFamily family_;
  int q_ = 2;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::optional<double> gamma_;
  std::optional<RadialTreeSpec> tree_;
  double psi1_ = 1.0;
  std::vector<double> log_table_;
  double const_ = 1.0;
};

/**
 * The radial potential attached to the supersolution pair construction:
 * 0 at the root, sqrt(q) at radius 1, -(sqrt(q)-1)^2 beyond.
 */
class PotentialQ {
 public:
  static PotentialQ zero();
  static PotentialQ uv_pair(int q);
  static PotentialQ constant(double c);
  /** Arbitrary radial potential, e.g. the negative of a weight when testing
   *  superharmonicity of a supersolution. */
  static PotentialQ from_fn(RadialFn fn);

  double operator()(radius_t n) const;

 private:
  enum class Kind { Zero, UVPair, Constant, Fn } kind_ = Kind::Zero;
  int q_ = 2;
  double c_ = 0.0;
  RadialFn fn_;
};

/** Radialized Laplacian value (m(0)+1)(f(0)-f(1)) at the root, else
 *  (m(n)+1) f(n) - m(n) f(n+1) - f(n-1). */
double laplacian_radial(const RadialTreeSpec& spec, const RadialFunction& f, radius_t n);

/** Laplacian quotient (Delta f)(n) / f(n), computed from neighbor ratios. */
double laplacian_quotient(const RadialTreeSpec& spec, const RadialFunction& f, radius_t n);

/** (Delta f + Q f)(n), as a raw value. */
double schrodinger_apply(const RadialTreeSpec& spec, const PotentialQ& Q,
                         const RadialFunction& f, radius_t n);

/** (Delta f + Q f)(n) / f(n), safe at any depth. */
double schrodinger_quotient(const RadialTreeSpec& spec, const PotentialQ& Q,
                            const RadialFunction& f, radius_t n);

struct SuperharmonicReport {
  double min_quotient = 0.0;       // minimum of (Delta f + Q f)/f over the range
  radius_t argmin = 0;
  std::optional<radius_t> first_violation;  // first n with quotient < -tol
  bool ok() const { return !first_violation.has_value(); }
};

/** Certify (Delta + Q) f >= -tol * f pointwise on radii [lo, hi]. */
SuperharmonicReport superharmonic_report(const RadialTreeSpec& spec, const PotentialQ& Q,
                                         const RadialFunction& f, radius_t lo, radius_t hi,
                                         double tol = 1e-12);

struct RatioPropernessReport {
  double sup_ratio = 0.0;   // max over adjacent radii of f(n)/f(n+1) and f(n+1)/f(n)
  radius_t arg_sup = 0;     // lower radius of the attaining edge
  bool monotone_to_zero = false;
};

/** Neighbor-ratio bound and decay-to-zero flag over radii [0, horizon]. */
RatioPropernessReport ratio_properness_report(const RadialFunction& f, radius_t horizon);

}  // namespace treehardy
