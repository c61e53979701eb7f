#include "treehardy/tree.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace treehardy {

namespace {

constexpr double kLogSpaceThreshold = 600.0;

big_count checked_mul(big_count a, big_count b, radius_t at) {
  big_count out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError(at);
  return out;
}

big_count checked_add(big_count a, big_count b, radius_t at) {
  big_count out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError(at);
  return out;
}

}  // namespace

std::string to_string(big_count v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

RadialTreeSpec RadialTreeSpec::homogeneous(int q) {
  if (q < 2) throw DomainError("homogeneous branching requires q >= 2");
  RadialTreeSpec s;
  s.homogeneous_q_ = q;
  return s;
}

RadialTreeSpec RadialTreeSpec::custom(std::vector<std::int64_t> prefix, Extend how,
                                      double affine_a, double affine_b) {
  if (prefix.empty()) throw DomainError("custom branching requires a nonempty prefix");
  for (auto m : prefix) {
    if (m < 2) throw DomainError("branching entries must be >= 2");
  }
  RadialTreeSpec s;
  s.prefix_ = std::move(prefix);
  s.extend_ = how;
  s.affine_a_ = affine_a;
  s.affine_b_ = affine_b;
  return s;
}

std::int64_t RadialTreeSpec::branching(radius_t n) const {
  if (n < 0) throw DomainError("radius must be nonnegative");
  if (homogeneous_q_ != 0) return homogeneous_q_;
  if (n < static_cast<radius_t>(prefix_.size())) return prefix_[static_cast<std::size_t>(n)];
  if (extend_ == Extend::RepeatLast) return prefix_.back();
  double v = affine_a_ * static_cast<double>(n) + affine_b_;
  auto m = static_cast<std::int64_t>(std::llround(v));
  return m < 2 ? 2 : m;
}

int RadialTreeSpec::q() const {
  if (!is_homogeneous()) throw DomainError("branching profile is not homogeneous");
  return homogeneous_q_;
}

bool RadialTreeSpec::nondecreasing(radius_t upto) const {
  for (radius_t n = 1; n <= upto; ++n) {
    if (branching(n) < branching(n - 1)) return false;
  }
  return true;
}

std::string RadialTreeSpec::describe() const {
  std::ostringstream os;
  if (is_homogeneous()) {
    os << "homogeneous:q=" << homogeneous_q_;
    return os.str();
  }
  os << "custom:prefix=";
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i) os << ',';
    os << prefix_[i];
  }
  os << ";extend=";
  if (extend_ == Extend::RepeatLast) {
    os << "repeat";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "affine:%.17g,%.17g", affine_a_, affine_b_);
    os << buf;
  }
  return os.str();
}

big_count sphere_size(const RadialTreeSpec& spec, radius_t n) {
  if (n < 0) throw DomainError("radius must be nonnegative");
  if (n == 0) return 1;
  big_count s = static_cast<big_count>(spec.branching(0)) + 1;
  for (radius_t k = 1; k < n; ++k) {
    s = checked_mul(s, static_cast<big_count>(spec.branching(k)), k + 1);
  }
  return s;
}

big_count ball_volume(const RadialTreeSpec& spec, radius_t n) {
  if (n < 0) throw DomainError("radius must be nonnegative");
  big_count total = 0;
  big_count s = 1;
  for (radius_t k = 0; k < n; ++k) {
    if (k == 1) {
      s = static_cast<big_count>(spec.branching(0)) + 1;
    } else if (k >= 2) {
      s = checked_mul(s, static_cast<big_count>(spec.branching(k - 1)), k);
    }
    total = checked_add(total, s, k);
  }
  return total;
}

big_count edge_count_between_spheres(const RadialTreeSpec& spec, radius_t n) {
  if (n < 0) throw DomainError("radius must be nonnegative");
  return sphere_size(spec, n + 1);
}

double log_sphere_size(const RadialTreeSpec& spec, radius_t n) {
  if (n < 0) throw DomainError("radius must be nonnegative");
  if (n == 0) return 0.0;
  double acc = std::log(static_cast<double>(spec.branching(0)) + 1.0);
  for (radius_t k = 1; k < n; ++k) acc += std::log(static_cast<double>(spec.branching(k)));
  return acc;
}

double log_edge_count(const RadialTreeSpec& spec, radius_t n) {
  return log_sphere_size(spec, n + 1);
}

namespace {

double approx_from(const RadialTreeSpec& spec, radius_t n, bool edge) {
  radius_t m = edge ? n + 1 : n;
  try {
    return static_cast<double>(sphere_size(spec, m));
  } catch (const OverflowError&) {
    return std::exp(log_sphere_size(spec, m));
  }
}

}  // namespace

double sphere_size_approx(const RadialTreeSpec& spec, radius_t n) {
  return approx_from(spec, n, false);
}

double edge_count_approx(const RadialTreeSpec& spec, radius_t n) {
  return approx_from(spec, n, true);
}

double PsiResult::value() const { return log_space ? std::exp(v) : v; }

double PsiResult::log_value() const { return log_space ? v : std::log(v); }

PsiResult psi_sequence(const RadialTreeSpec& spec, double psi1, radius_t n) {
  if (n < 1) throw DomainError("psi_sequence requires radius n >= 1");
  if (!(psi1 > 0.0)) throw DomainError("psi_sequence requires psi1 > 0");
  double v = psi1;
  double lg = std::log(psi1);
  bool log_space = false;
  for (radius_t k = 1; k < n; ++k) {
    double m = static_cast<double>(spec.branching(k));
    lg += std::log(m);
    if (!log_space) {
      v *= m;
      if (std::abs(lg) > kLogSpaceThreshold) log_space = true;
    }
  }
  if (log_space) return {true, lg};
  return {false, v};
}

TruncatedTree build_truncated(const RadialTreeSpec& spec, radius_t depth, std::int64_t budget) {
  if (depth < 1) throw DomainError("truncation depth must be >= 1");
  big_count total;
  try {
    total = ball_volume(spec, depth);
  } catch (const OverflowError&) {
    throw BudgetError("truncation of depth " + std::to_string(depth) +
                      " exceeds the vertex budget " + std::to_string(budget));
  }
  if (total > static_cast<big_count>(budget)) {
    throw BudgetError("truncation needs " + to_string(total) + " vertices, budget is " +
                      std::to_string(budget));
  }

  TruncatedTree t{spec, depth, {}, {}, {}};
  auto count = static_cast<std::int64_t>(total);
  t.radius.reserve(static_cast<std::size_t>(count));
  t.parent.reserve(static_cast<std::size_t>(count));
  t.sphere_begin.assign(static_cast<std::size_t>(depth) + 1, 0);

  t.radius.push_back(0);
  t.parent.push_back(-1);
  t.sphere_begin[1] = 1;
  for (radius_t r = 1; r < depth; ++r) {
    std::int64_t lo = t.sphere_begin[static_cast<std::size_t>(r) - 1];
    std::int64_t hi = t.sphere_begin[static_cast<std::size_t>(r)];
    std::int64_t children = (r == 1) ? spec.branching(0) + 1 : spec.branching(r - 1);
    for (std::int64_t p = lo; p < hi; ++p) {
      for (std::int64_t c = 0; c < children; ++c) {
        t.radius.push_back(static_cast<std::int32_t>(r));
        t.parent.push_back(p);
      }
    }
    t.sphere_begin[static_cast<std::size_t>(r) + 1] = t.vertex_count();
  }
  assert(t.vertex_count() == count);
  return t;
}

}  // namespace treehardy
