#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "treehardy/errors.hpp"
#include "treehardy/tree.hpp"

using namespace treehardy;

TEST_CASE("homogeneous tree: descriptor and basics") {
  RadialTreeSpec t2 = RadialTreeSpec::homogeneous(2);
  CHECK(t2.is_homogeneous());
  CHECK(t2.q() == 2);
  CHECK(t2.branching(0) == 2);
  CHECK(t2.branching(1000) == 2);
  CHECK(t2.describe() == "homogeneous:q=2");
  CHECK(t2.nondecreasing(1000));
  CHECK_THROWS_AS(RadialTreeSpec::homogeneous(1), DomainError);
  CHECK_THROWS_AS(t2.branching(-1), DomainError);
}

TEST_CASE("custom tree: profile, extension, descriptor") {
  RadialTreeSpec c = RadialTreeSpec::custom({2, 3, 4}, RadialTreeSpec::Extend::RepeatLast);
  CHECK_FALSE(c.is_homogeneous());
  CHECK_THROWS_AS(c.q(), DomainError);
  CHECK(c.branching(0) == 2);
  CHECK(c.branching(2) == 4);
  CHECK(c.branching(7) == 4);
  CHECK(c.describe() == "custom:prefix=2,3,4;extend=repeat");
  CHECK(c.nondecreasing(100));

  RadialTreeSpec a =
      RadialTreeSpec::custom({2, 4, 5}, RadialTreeSpec::Extend::Affine, 1.0, 3.0);
  CHECK(a.branching(2) == 5);
  CHECK(a.branching(3) == 6);   // round(1*3 + 3)
  CHECK(a.branching(10) == 13);
  CHECK(a.nondecreasing(1000));

  RadialTreeSpec dec = RadialTreeSpec::custom({2, 4, 3}, RadialTreeSpec::Extend::RepeatLast);
  CHECK_FALSE(dec.nondecreasing(5));

  CHECK_THROWS_AS(RadialTreeSpec::custom({}, RadialTreeSpec::Extend::RepeatLast), DomainError);
  CHECK_THROWS_AS(RadialTreeSpec::custom({1, 3}, RadialTreeSpec::Extend::RepeatLast),
                  DomainError);
}

TEST_CASE("sphere sizes and ball volumes match frozen values") {
  RadialTreeSpec t2 = RadialTreeSpec::homogeneous(2);
  RadialTreeSpec t3 = RadialTreeSpec::homogeneous(3);
  const std::int64_t s2[] = {1, 3, 6, 12, 24, 48, 96, 192};
  const std::int64_t v2[] = {1, 4, 10, 22, 46, 94, 190, 382};
  const std::int64_t s3[] = {1, 4, 12, 36, 108, 324, 972, 2916};
  const std::int64_t v3[] = {1, 5, 17, 53, 161, 485, 1457, 4373};
  for (radius_t n = 0; n < 8; ++n) {
    CHECK(to_string(sphere_size(t2, n)) == std::to_string(s2[n]));
    CHECK(to_string(ball_volume(t2, n + 1)) == std::to_string(v2[n]));
    CHECK(to_string(sphere_size(t3, n)) == std::to_string(s3[n]));
    CHECK(to_string(ball_volume(t3, n + 1)) == std::to_string(v3[n]));
    CHECK(to_string(edge_count_between_spheres(t2, n)) == std::to_string(3LL << n));
  }
  // A value far beyond 64 bits: 3 * 2^119.
  CHECK(to_string(sphere_size(t2, 120)) == "1993841993677373809355710590420516864");
}

TEST_CASE("sphere counts match the queue-based breadth-first oracle") {
  std::vector<RadialTreeSpec> specs = {
      RadialTreeSpec::homogeneous(2), RadialTreeSpec::homogeneous(3),
      RadialTreeSpec::custom({2, 4, 5}, RadialTreeSpec::Extend::Affine, 1.0, 3.0),
      RadialTreeSpec::custom({4, 4, 6}, RadialTreeSpec::Extend::RepeatLast)};
  for (const auto& spec : specs) {
    auto counts = oracle::bfs_sphere_counts(spec, 8);
    for (radius_t n = 0; n < 8; ++n) {
      CHECK(to_string(sphere_size(spec, n)) ==
            std::to_string(counts[static_cast<std::size_t>(n)]));
    }
  }
}

TEST_CASE("overflow raises and the log/approx forms keep going") {
  RadialTreeSpec t2 = RadialTreeSpec::homogeneous(2);
  CHECK_THROWS_AS(sphere_size(t2, 300), OverflowError);
  double lg = log_sphere_size(t2, 300);
  CHECK(lg == doctest::Approx(std::log(3.0) + 299.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(sphere_size_approx(t2, 300) == doctest::Approx(std::exp(lg)).epsilon(1e-12));
  // Small radii: approx equals the exact count.
  CHECK(sphere_size_approx(t2, 7) == 192.0);
  CHECK(edge_count_approx(t2, 7) == 384.0);
  CHECK(log_sphere_size(t2, 0) == 0.0);
}

TEST_CASE("psi sequence: products of branching numbers, log space when huge") {
  RadialTreeSpec t2 = RadialTreeSpec::homogeneous(2);
  PsiResult p = psi_sequence(t2, 2.0, 10);
  CHECK(p.value() == doctest::Approx(1024.0).epsilon(1e-15));

  RadialTreeSpec a =
      RadialTreeSpec::custom({2, 4, 5}, RadialTreeSpec::Extend::Affine, 1.0, 3.0);
  double expected_log = std::log(1.0);
  for (radius_t n = 1; n < 500; ++n) expected_log += std::log(static_cast<double>(a.branching(n)));
  PsiResult big = psi_sequence(a, 1.0, 500);
  CHECK(big.log_value() == doctest::Approx(expected_log).epsilon(1e-12));
  CHECK_THROWS_AS(psi_sequence(t2, 0.0, 3), DomainError);
}

TEST_CASE("truncation layout agrees with the counts and the budget is enforced") {
  RadialTreeSpec t3 = RadialTreeSpec::homogeneous(3);
  TruncatedTree t = build_truncated(t3, 5);
  CHECK(t.vertex_count() == 161);
  CHECK(t.sphere_begin.size() == 6);
  for (radius_t n = 0; n < 5; ++n) {
    auto lo = t.sphere_begin[static_cast<std::size_t>(n)];
    auto hi = t.sphere_begin[static_cast<std::size_t>(n) + 1];
    CHECK(hi - lo == static_cast<std::int64_t>(sphere_size(t3, n)));
    for (std::int64_t v = lo; v < hi; ++v) {
      CHECK(t.radius[static_cast<std::size_t>(v)] == n);
      if (n == 0) {
        CHECK(t.parent[static_cast<std::size_t>(v)] == -1);
      } else {
        auto p = t.parent[static_cast<std::size_t>(v)];
        CHECK(t.radius[static_cast<std::size_t>(p)] == n - 1);
      }
    }
  }
  CHECK_THROWS_AS(build_truncated(RadialTreeSpec::homogeneous(9), 10), BudgetError);
  CHECK_THROWS_AS(build_truncated(t3, 0), DomainError);
  // Depth within the budget at a boosted limit still works.
  TruncatedTree d1 = build_truncated(t3, 1);
  CHECK(d1.vertex_count() == 1);
}
