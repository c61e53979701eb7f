#pragma once

#include <cstdint>
#include <vector>

#include "treehardy/forms.hpp"
#include "treehardy/radial_functions.hpp"
#include "treehardy/tree.hpp"

namespace treehardy {

/**
 * Symmetric tridiagonal matrix obtained from the radialized form on the
 * radius window [a, b) by the congruence psi_n = sqrt(S_n) * phi_n.
 * Entries stay O(1) regardless of depth: the diagonal is
 * branching(n) + 1 - V(n) and the sub-diagonal couplings are
 * -sqrt(branching(0) + 1) at the root edge and -sqrt(branching(n)) deeper.
 */
struct JacobiSystem {
  radius_t a = 0;
  radius_t b = 0;
  std::vector<double> diag;
  std::vector<double> sub;  // coupling between window indices i and i+1

  std::size_t size() const { return diag.size(); }
};

/** Build the Jacobi system of quadform - sum S_n V(n) phi_n^2 on [a, b). */
JacobiSystem build_jacobi(const RadialTreeSpec& spec, const RadialFn& V, radius_t a, radius_t b);

/**
 * Smallest eigenvalue by Sturm-sequence bisection inside the Gershgorin
 * bracket, to absolute accuracy ~1e-13. O(window) per bisection step.
 */
double lambda_min(const JacobiSystem& J);

/**
 * Eigenvector for an eigenvalue estimate (inverse iteration, three rounds,
 * partial-pivoting tridiagonal solves, deterministic start). Normalized so
 * the largest-magnitude entry is +1.
 */
std::vector<double> bottom_eigenvector(const JacobiSystem& J, double lambda);

/** Exact Rayleigh quotient x'Jx / x'x; the certificate for eigenpairs. */
double rayleigh_quotient(const JacobiSystem& J, const std::vector<double>& x);

struct SweepPoint {
  radius_t window_end = 0;
  double lambda = 0.0;
};

struct LimitEstimate {
  double limit = 0.0;
  double uncertainty = 0.0;  // magnitude of the final extrapolation correction
  double rate = 0.0;         // fitted decay exponent p of lambda(N) = L + c N^-p
  bool extrapolated = false; // false when the fit fell back to the last point
};

/**
 * Power-law extrapolation from the last three sweep points: fits
 * lambda(N) = L + c N^-p and reports L. Falls back to the last point with
 * uncertainty |l_last - l_prev| when the three points do not fit a
 * decreasing power law.
 */
LimitEstimate richardson_limit(const std::vector<SweepPoint>& points);

struct SweepResult {
  std::vector<SweepPoint> points;
  bool strictly_decreasing = false;
  LimitEstimate limit;
};

/**
 * lambda_min of the Dirichlet Laplacian on the balls B_N for each window N:
 * decreasing, bounded below by the spectral bottom, with the extrapolated
 * limit reported. Windows must be strictly increasing and >= 1.
 */
SweepResult poincare_bottom_sweep(const RadialTreeSpec& spec,
                                  const std::vector<radius_t>& windows);

/**
 * lambda_min of (Delta - W) on the balls B_N. Nonnegative for a Hardy
 * weight; a value below -floor_tol throws NonnegativityViolation (it would
 * contradict the inequality and signals an implementation bug). A limit
 * estimate near 0 is evidence of criticality, not proof.
 */
SweepResult criticality_probe(const RadialTreeSpec& spec, const RadialFn& W,
                              const std::vector<radius_t>& windows, double floor_tol = 1e-9);

/**
 * inf over radial phi supported in [a, b) of quadform / W-norm, computed as
 * the smallest eigenvalue of the pencil reduced to standard form by the
 * congruence with sqrt(S_n W(n)). Weight values that vanish (|W| <= 1e-12)
 * at the window edges are removed by Schur deflation; negative values throw
 * NonpositiveWeightError. Exceeds 1 on finite windows for a valid Hardy
 * weight and decreases toward 1 for the optimal families.
 */
double hardy_ratio_inf(const RadialTreeSpec& spec, const RadialFn& W, radius_t a, radius_t b);

/** Same infimum for (quadform - V0-norm) / W-norm (shifted-numerator pencil). */
double hardy_ratio_inf_shifted(const RadialTreeSpec& spec, const RadialFn& V0, const RadialFn& W,
                               radius_t a, radius_t b);

struct Violator {
  bool found = false;
  radius_t window_start = 0;
  radius_t window_end = 0;   // window of the witness, or the last window tried
  double ratio = 0.0;        // certified Rayleigh ratio of the witness (when found)
  double last_ratio = 0.0;   // pencil infimum at the last window inspected
  bool symmetrized = false;  // witness below is psi = sqrt(S_n) phi_n, not phi
  RadialVector witness;      // raw phi for shallow windows; psi when symmetrized
  LogRadialVector log_witness;  // sign/log of phi, valid at any depth
};

inline constexpr radius_t kDefaultMaxWindow = 4194304;

/**
 * Search doubling windows [start, N) for a radial function with
 * quadform < C * W-norm. Each candidate is accepted only after its exact
 * Rayleigh quotient certifies the ratio. When no window up to max_window
 * goes below C, found=false and last_ratio reports the final infimum.
 */
Violator find_violator(const RadialTreeSpec& spec, const RadialFn& W, double C,
                       radius_t start = 2, radius_t max_window = kDefaultMaxWindow);

/** Same search for (quadform - V0-norm) < C * W-norm. */
Violator find_violator_shifted(const RadialTreeSpec& spec, const RadialFn& V0, const RadialFn& W,
                               double C, radius_t start = 2,
                               radius_t max_window = kDefaultMaxWindow);

/**
 * (quadform - V0-norm) / W-norm of a log-represented radial function,
 * evaluated through the log-space form primitives; pass V0 = nullptr for
 * the plain quadform / W-norm ratio. This is the deep-window re-verification
 * path for witnesses.
 */
double pencil_ratio_log(const RadialTreeSpec& spec, const RadialFn* V0, const RadialFn& W,
                        const LogRadialVector& phi);

struct NullCritSums {
  std::vector<double> partial;  // partial[k] = sum_{n <= k} S_n z(n)^2 W(n)

  /** Divergence diagnostic partial[2N] / partial[N] (requires 2N < size). */
  double ratio_at(radius_t N) const;
};

/**
 * Partial sums of S_n z(n)^2 W(n) for n = 0..N, each term assembled in log
 * space so that deep radii neither overflow nor underflow. Nonpositive
 * weight values contribute zero. Linear growth (ratio -> 2) or faster
 * signals z notin l^2_W, the null-criticality condition.
 */
NullCritSums null_criticality_sums(const RadialTreeSpec& spec, const RadialFn& W,
                                   const RadialFunction& z, radius_t N);

}  // namespace treehardy
