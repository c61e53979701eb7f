#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "treehardy/errors.hpp"

namespace treehardy {

using radius_t = std::int64_t;
using big_count = unsigned __int128;

std::string to_string(big_count v);

/**
 * Branching profile of a rooted tree that is radially symmetric around its
 * root: every vertex at radius n has branching(n) forward neighbors, so the
 * root has degree branching(0) + 1 and a vertex at radius n >= 1 has degree
 * branching(n) + 1.
 *
 * Two kinds are supported. A homogeneous profile has branching(n) == q for
 * all n. A custom profile lists an explicit integer prefix (entries >= 2)
 * and extends it beyond the prefix either by repeating the last entry or by
 * the affine rule n -> round(a*n + b) clamped from below at 2.
 */
class RadialTreeSpec {
 public:
  enum class Extend { RepeatLast, Affine };

  static RadialTreeSpec homogeneous(int q);
  static RadialTreeSpec custom(std::vector<std::int64_t> prefix, Extend how,
                               double affine_a = 0.0, double affine_b = 0.0);

  /** Forward branching number at radius n (written m-bar elsewhere). */
  std::int64_t branching(radius_t n) const;

  bool is_homogeneous() const { return homogeneous_q_ != 0; }

  /** Homogeneous branching degree q; DomainError for custom profiles. */
  int q() const;

  /** True when branching(0..upto) is a nondecreasing sequence. */
  bool nondecreasing(radius_t upto) const;

  /** Canonical descriptor text; parse_tree_spec round-trips it. */
  std::string describe() const;

  bool operator==(const RadialTreeSpec&) const = default;

 private:
  RadialTreeSpec() = default;
  int homogeneous_q_ = 0;  // 0 marks a custom profile
  std::vector<std::int64_t> prefix_;
  Extend extend_ = Extend::RepeatLast;
  double affine_a_ = 0.0;
  double affine_b_ = 0.0;
};

/** Number of vertices at radius exactly n. Exact; OverflowError past 128 bits. */
big_count sphere_size(const RadialTreeSpec& spec, radius_t n);

/** Number of vertices at radius < n. Exact; OverflowError past 128 bits. */
big_count ball_volume(const RadialTreeSpec& spec, radius_t n);

/** Number of edges joining sphere n to sphere n+1. Equals sphere_size(n+1). */
big_count edge_count_between_spheres(const RadialTreeSpec& spec, radius_t n);

/** Natural log of sphere_size; never overflows. */
double log_sphere_size(const RadialTreeSpec& spec, radius_t n);

/** Natural log of edge_count_between_spheres; never overflows. */
double log_edge_count(const RadialTreeSpec& spec, radius_t n);

/** sphere_size as a double, via the exact count when it fits and exp(log) beyond. */
double sphere_size_approx(const RadialTreeSpec& spec, radius_t n);

/** edge count as a double, via the exact count when it fits and exp(log) beyond. */
double edge_count_approx(const RadialTreeSpec& spec, radius_t n);

/**
 * Value of the volume-growth sequence Psi at an integer radius n >= 1,
 * defined by Psi(1) = psi1 and Psi(n+1) = branching(n) * Psi(n). The result
 * switches to a log-space representation once log Psi exceeds a fixed
 * magnitude, so deep radii never overflow.
 */
struct PsiResult {
  bool log_space = false;
  double v = 0.0;  // the value itself, or its natural log when log_space

  double value() const;      // may be +inf when the value exceeds double range
  double log_value() const;  // always finite
};

PsiResult psi_sequence(const RadialTreeSpec& spec, double psi1, radius_t n);

/**
 * Explicit realization of the ball of radius < depth. Vertices are indexed
 * contiguously in breadth-first order, so all vertices of radius r occupy
 * the index range [sphere_begin[r], sphere_begin[r + 1]).
 */
struct TruncatedTree {
  RadialTreeSpec spec;
  radius_t depth = 0;                     // realized radii are 0 .. depth-1
  std::vector<std::int32_t> radius;       // per vertex
  std::vector<std::int64_t> parent;       // -1 for the root
  std::vector<std::int64_t> sphere_begin; // size depth + 1

  std::int64_t vertex_count() const { return static_cast<std::int64_t>(radius.size()); }
};

inline constexpr std::int64_t kDefaultVertexBudget = 2'000'000;

/** Build the depth-N truncation; BudgetError when ball_volume(spec, N) > budget. */
TruncatedTree build_truncated(const RadialTreeSpec& spec, radius_t depth,
                              std::int64_t budget = kDefaultVertexBudget);

}  // namespace treehardy
