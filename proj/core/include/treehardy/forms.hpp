#pragma once

#include <cstdint>
#include <vector>

#include "treehardy/radial_functions.hpp"
#include "treehardy/tree.hpp"

namespace treehardy {

/**
 * Finitely supported radial vector: coefficients on the radius window [a, b),
 * implicitly zero outside.
 */
struct RadialVector {
  radius_t a = 0;
  radius_t b = 0;
  std::vector<double> values;  // size b - a

  double at(radius_t n) const {
    return (n >= a && n < b) ? values[static_cast<std::size_t>(n - a)] : 0.0;
  }
};

/**
 * Sign/log-magnitude representation of a radial vector, for windows so deep
 * that the values themselves leave the double range. Zero entries carry
 * sign 0 (the log magnitude is then ignored).
 */
struct LogRadialVector {
  radius_t a = 0;
  radius_t b = 0;
  std::vector<double> logmag;     // log |phi_n|
  std::vector<std::int8_t> sign;  // -1, 0, +1
};

/** Exact-value radial vector converted to the log representation. */
LogRadialVector to_log(const RadialVector& v);

/**
 * Quadratic form 1/2 * sum over ordered adjacent pairs of (phi(x)-phi(y))^2
 * on a truncated tree, with the zero extension outside: edges from the
 * outermost included sphere to its absent children contribute
 * branching * phi(x)^2 (Dirichlet convention). With strict_interior the
 * function must instead vanish on the outermost sphere
 * (SupportTouchesBoundaryError otherwise).
 */
double quadform_full(const TruncatedTree& tree, const std::vector<double>& phi,
                     bool strict_interior = false);

/**
 * Radialized form sum_n E_n (phi_n - phi_{n+1})^2 with zero extension, where
 * E_n counts the edges between spheres n and n+1. Edge counts are carried as
 * doubles, so the plain version is accurate while they stay inside the double
 * range (roughly radius 1000 on the binary tree); use the log variant beyond.
 */
double quadform_radial(const RadialTreeSpec& spec, const RadialVector& phi);

/** log of quadform_radial, computed term-by-term in log space; -inf for 0. */
double log_quadform_radial(const RadialTreeSpec& spec, const LogRadialVector& phi);

/** Weighted norm sum_n S_n * W(n) * phi_n^2 over the support window. */
double weighted_norm(const RadialTreeSpec& spec, const RadialFn& W, const RadialVector& phi);

/** log of the weighted norm, in log space; -inf for 0. Requires W >= 0 on the window. */
double log_weighted_norm(const RadialTreeSpec& spec, const RadialFn& W,
                         const LogRadialVector& phi);

/** Weighted norm sum_x W(|x|) * phi(x)^2 over all vertices of a truncation. */
double weighted_norm_vertex(const TruncatedTree& tree, const RadialFn& W,
                            const std::vector<double>& phi);

/** quadform_radial - weighted_norm: the slack in the Hardy inequality. */
double hardy_gap(const RadialTreeSpec& spec, const RadialFn& W, const RadialVector& phi);

/** quadform_full - weighted_norm_vertex on a truncation. */
double hardy_gap_vertex(const TruncatedTree& tree, const RadialFn& W,
                        const std::vector<double>& phi);

/** Realize a radial vector as a per-vertex function on a truncation (b <= depth). */
std::vector<double> vertex_from_radial(const TruncatedTree& tree, const RadialVector& phi);

enum class Dist {
  Gaussian,
  Rademacher,  // uniform +/-1
};

/**
 * Deterministic random vertex function supported on radii [a, b). Values are
 * derived from a counter-based generator keyed by (seed, vertex index), so a
 * fixed seed yields the same function on every platform and schedule. The
 * window must satisfy 0 <= a < b <= depth - 1, keeping the outermost sphere
 * zero (BudgetError otherwise).
 */
std::vector<double> random_vertex_function(const TruncatedTree& tree, std::uint64_t seed,
                                           radius_t a, radius_t b, Dist dist);

/** Deterministic random radial vector on [a, b), keyed by (seed, radius). */
RadialVector random_radial_vector(std::uint64_t seed, radius_t a, radius_t b, Dist dist);

namespace detail {

/** splitmix64 finalizer; the base of the counter-based generator. */
std::uint64_t mix64(std::uint64_t x);

/** Counter-based draws: deterministic in (seed, idx). */
double uniform01(std::uint64_t seed, std::uint64_t idx);   // [0, 1)
double gaussian(std::uint64_t seed, std::uint64_t idx);    // standard normal
double rademacher(std::uint64_t seed, std::uint64_t idx);  // +/-1

/** Compensated (Kahan) accumulator. */
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

/** log(sum of exp(terms)) over nonnegative summands given as logs; -inf when empty. */
double log_sum_exp(const std::vector<double>& log_terms);

}  // namespace detail

}  // namespace treehardy
