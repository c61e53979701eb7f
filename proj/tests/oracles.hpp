#pragma once

/**
 * Independent oracles for the test suite.
 *
 * Everything in this header is deliberately written WITHOUT using the
 * library's own algorithms: vertex counts come from an explicit FIFO
 * breadth-first walk, quadratic forms from a dense vertex Laplacian, and
 * eigenvalues from classical Jacobi rotations on dense matrices.  The
 * frozen constants were computed up front with an independent
 * high-precision tool and are pinned here as double literals; the tests
 * compare library output against these, not against the library itself.
 */

#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "treehardy/tree.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Frozen constants (independently computed, double-rounded).
// ---------------------------------------------------------------------------

// (sqrt(2) - 1)^2 and (sqrt(3) - 1)^2
inline constexpr double kLambda2 = 0.17157287525381;
inline constexpr double kLambda3 = 0.5358983848622453;
// Lambda_2 + sqrt(2) - 1/sqrt(2): the optimal weight at the root for q = 2
inline constexpr double kWopt0Q2 = 0.8786796564403576;
// 2 - sqrt(3): the beta = 1/2 weight at radius 1 canonical value marker (q = 3 uses 3 - sqrt(6))
inline constexpr double kTwoMinusSqrt3 = 0.2679491924311228;
inline constexpr double kThreeMinusSqrt6 = 0.5505102572168221;
// 3 - sqrt(5): Dirichlet bottom eigenvalue of the radius-3 ball in T_3
inline constexpr double kThreeMinusSqrt5 = 0.7639320225002102;
// sqrt(2) * (2 - sqrt(3/2) - sqrt(1/2)): sharp remainder at radius 2 for q = 2
inline constexpr double kRbar2Q2 = 0.09637631717731289;
// 1/sqrt(2): the single admissible gamma for the beta = 1/2 family at q = 2
inline constexpr double kInvSqrt2 = 0.7071067811865475;
// Dirichlet bottom eigenvalues of balls in T_3 (dense oracle)
inline constexpr double kLambdaBall1T3 = 3.0;
inline constexpr double kLambdaBall10T3 = 0.2587993813185997;
inline constexpr double kLambdaBall200T3 = 0.17191158070624563;
// Window-pencil infimum for the optimal weight on [2, 66), q = 2 (dense oracle)
inline constexpr double kRatioInfWopt266 = 1.0192510692503798;
// Quadratic form of the indicator of the sphere of radius 5 in T_3:
// 48 edges inward + 96 edges outward
inline constexpr double kIndicator56T3 = 144.0;

// ---------------------------------------------------------------------------
// Breadth-first vertex counting with an explicit queue.
// ---------------------------------------------------------------------------

/** Vertices per radius in the ball of radius < depth, by FIFO traversal. */
inline std::vector<std::int64_t> bfs_sphere_counts(const treehardy::RadialTreeSpec& spec,
                                                   treehardy::radius_t depth,
                                                   std::int64_t cap = 50'000'000) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(depth), 0);
  std::deque<treehardy::radius_t> queue;
  queue.push_back(0);
  std::int64_t seen = 0;
  while (!queue.empty()) {
    treehardy::radius_t r = queue.front();
    queue.pop_front();
    counts[static_cast<std::size_t>(r)] += 1;
    if (++seen > cap) throw std::runtime_error("bfs oracle cap exceeded");
    if (r + 1 < depth) {
      std::int64_t kids = r == 0 ? spec.branching(0) + 1 : spec.branching(r);
      for (std::int64_t c = 0; c < kids; ++c) queue.push_back(r + 1);
    }
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Dense vertex Laplacian quadratic form.
// ---------------------------------------------------------------------------

/**
 * phi^T L phi with L = diag(full tree degree) - adjacency, built densely
 * from the truncation's parent array.  The full degree of every vertex in
 * the infinite tree is branching-out + 1 (the root has no parent but
 * branching(0) + 1 children), which encodes the Dirichlet condition on the
 * first omitted sphere.
 */
inline double dense_quadform(const treehardy::TruncatedTree& tree,
                             const std::vector<double>& phi) {
  std::size_t n = static_cast<std::size_t>(tree.vertex_count());
  if (phi.size() != n) throw std::runtime_error("oracle size mismatch");
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (std::size_t v = 1; v < n; ++v) {
    auto p = static_cast<std::size_t>(tree.parent[v]);
    A[v][p] = A[p][v] = 1.0;
  }
  std::vector<double> deg(n);
  for (std::size_t v = 0; v < n; ++v) {
    treehardy::radius_t r = tree.radius[v];
    std::int64_t out = r == 0 ? tree.spec.branching(0) + 1 : tree.spec.branching(r);
    deg[static_cast<std::size_t>(v)] = static_cast<double>(out + (r == 0 ? 0 : 1));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = deg[i] * phi[i];
    for (std::size_t j = 0; j < n; ++j) row -= A[i][j] * phi[j];
    total += phi[i] * row;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Dense symmetric eigensolver: classical Jacobi rotations.
// ---------------------------------------------------------------------------

/** Smallest eigenvalue of a dense symmetric matrix (n <= a few hundred). */
inline double dense_lambda_min(std::vector<std::vector<double>> a) {
  std::size_t n = a.size();
  if (n == 0) throw std::runtime_error("oracle: empty matrix");
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  double best = a[0][0];
  for (std::size_t i = 1; i < n; ++i) best = std::min(best, a[i][i]);
  return best;
}

/** Dense vertex Dirichlet Laplacian of the ball of radius < depth. */
inline std::vector<std::vector<double>> dense_ball_laplacian(
    const treehardy::TruncatedTree& tree) {
  std::size_t n = static_cast<std::size_t>(tree.vertex_count());
  std::vector<std::vector<double>> L(n, std::vector<double>(n, 0.0));
  for (std::size_t v = 0; v < n; ++v) {
    treehardy::radius_t r = tree.radius[v];
    std::int64_t out = r == 0 ? tree.spec.branching(0) + 1 : tree.spec.branching(r);
    L[v][v] = static_cast<double>(out + (r == 0 ? 0 : 1));
  }
  for (std::size_t v = 1; v < n; ++v) {
    auto p = static_cast<std::size_t>(tree.parent[v]);
    L[v][p] = L[p][v] = -1.0;
  }
  return L;
}

/** Dense N x N radial reduction with potential V, written independently. */
template <typename VFn>
std::vector<std::vector<double>> dense_radial_matrix(const treehardy::RadialTreeSpec& spec,
                                                     VFn V, treehardy::radius_t N) {
  auto n = static_cast<std::size_t>(N);
  std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    auto r = static_cast<treehardy::radius_t>(i);
    M[i][i] = static_cast<double>(spec.branching(r)) + 1.0 - V(r);
    if (i + 1 < n) {
      double cnt = static_cast<double>(r == 0 ? spec.branching(0) + 1 : spec.branching(r));
      M[i][i + 1] = M[i + 1][i] = -std::sqrt(cnt);
    }
  }
  return M;
}

}  // namespace oracle
