#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treehardy/radial_functions.hpp"
#include "treehardy/tree.hpp"

namespace treehardy {

enum class WeightFamily {
  Wopt,                // optimal weight from the Green-function square root
  WbetaGamma,          // two-parameter family on the homogeneous tree
  WhalfGamma,          // beta = 1/2 specialization (largest weight at infinity)
  RadialTreeW,         // supersolution weight on a general radial profile
  RemainderRq,         // root-only improvement of the Poincare constant
  RemainderBetaGamma,  // global improvement of the Poincare constant
  RemainderBar,        // sharp improvement outside the radius-2 ball
};

/**
 * A closed-form Hardy weight or Poincare remainder together with its
 * parameters. Construct through the factories; structural requirements
 * (q >= 2, gamma > 0, psi1 > 0) are enforced there, while the inequality's
 * parameter validity ranges are reported by validate_params.
 */
struct WeightSpec {
  WeightFamily family = WeightFamily::Wopt;
  int q = 2;
  double beta = 0.0;
  double gamma = 0.0;
  double psi1 = 1.0;
  std::optional<RadialTreeSpec> tree;

  static WeightSpec optimal(int q);
  static WeightSpec beta_gamma(int q, double beta, double gamma);
  static WeightSpec half_gamma(int q, double gamma);
  static WeightSpec radial_tree(RadialTreeSpec spec, double beta, double gamma,
                                double psi1 = 1.0);
  static WeightSpec remainder_rq(int q);
  static WeightSpec remainder_beta_gamma(int q, double beta, double gamma);
  static WeightSpec remainder_bar(int q);

  bool is_remainder() const {
    return family == WeightFamily::RemainderRq || family == WeightFamily::RemainderBetaGamma ||
           family == WeightFamily::RemainderBar;
  }

  /** Canonical descriptor text; parse_weight_spec round-trips it. */
  std::string describe() const;
};

struct ParamCheck {
  bool ok = true;
  std::string message;  // empty when ok; otherwise names the violated bound

  explicit operator bool() const { return ok; }
};

/**
 * Check the parameter ranges under which the family's inequality is proved.
 * Closed intervals are tested with absolute slack 1e-8 at the endpoints, so
 * boundary parameter values (where the weight can vanish at small radii) and
 * their short decimal roundings are accepted; the beta = 1/2 family's gamma
 * range is a single point, customarily written with 8 significant digits.
 * For RadialTreeW the branching profile must be nondecreasing from radius 1
 * onward; this is verified through radius 65536.
 */
ParamCheck validate_params(const WeightSpec& w);

/** The spectral-gap constant (sqrt(q) - 1)^2. */
double lambda_q(int q);

/**
 * Hardy weight value at radius n. Weight families only; throws
 * InvalidParamError when validate_params rejects the parameters or when the
 * spec is a remainder family.
 */
double evaluate_weight(const WeightSpec& w, radius_t n);

/**
 * Poincare remainder value at radius n. Remainder families only; RemainderBar
 * is defined on radii >= 2 and throws DomainError below that.
 */
double evaluate_remainder(const WeightSpec& w, radius_t n);

/**
 * n^2 * (W(n) - Lambda_q) / sqrt(q) for the homogeneous-tree weight families,
 * the scaled tail gap that converges to beta * (1 - beta) as n grows.
 * Requires n >= 2 (DomainError) and a homogeneous family (InvalidParamError).
 */
double asymptotic_gap(const WeightSpec& w, radius_t n);

struct SupersolutionWeight {
  radius_t start = 0;
  std::vector<double> values;              // (Delta f / f)(start + i)
  std::optional<radius_t> first_negative;  // first radius with value < -tol
};

/**
 * The weight a positive radial function generates through W = (Delta f)/f,
 * tabulated on radii [lo, hi]. Computed from neighbor ratios, so it stays
 * accurate at depths where f itself underflows. A radius where the quotient
 * drops below -tol is flagged; f then fails to be a supersolution for any
 * nonnegative weight.
 */
SupersolutionWeight weight_from_supersolution(const RadialTreeSpec& spec, const RadialFunction& f,
                                              radius_t lo, radius_t hi, double tol = 1e-12);

/**
 * The weight (or remainder) as a plain radial callable. Parameters are
 * validated once here, and the returned closure evaluates from precomputed
 * constants, so it is cheap enough for window sweeps.
 */
RadialFn as_function(const WeightSpec& w);

}  // namespace treehardy
