#include "treehardy/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace treehardy {

namespace detail {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

namespace {

std::uint64_t draw(std::uint64_t seed, std::uint64_t idx) {
  return mix64(mix64(seed) ^ mix64(idx));
}

}  // namespace

double uniform01(std::uint64_t seed, std::uint64_t idx) {
  return static_cast<double>(draw(seed, idx) >> 11) * 0x1.0p-53;
}

double gaussian(std::uint64_t seed, std::uint64_t idx) {
  // Box-Muller on two independent counter streams; u1 in (0, 1].
  double u1 = static_cast<double>((draw(seed, 2 * idx) >> 11) + 1) * 0x1.0p-53;
  double u2 = static_cast<double>(draw(seed, 2 * idx + 1) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double rademacher(std::uint64_t seed, std::uint64_t idx) {
  return (draw(seed, idx) & 1u) ? 1.0 : -1.0;
}

double log_sum_exp(const std::vector<double>& log_terms) {
  double m = -std::numeric_limits<double>::infinity();
  for (double t : log_terms) m = std::max(m, t);
  if (!std::isfinite(m)) return m;
  KahanSum acc;
  for (double t : log_terms) acc.add(std::exp(t - m));
  return m + std::log(acc.value());
}

}  // namespace detail

namespace {

struct SignedLog {
  int sign = 0;       // -1, 0, +1
  double logmag = 0;  // meaningful only when sign != 0
};

SignedLog entry_of(const LogRadialVector& v, radius_t n) {
  if (n < v.a || n >= v.b) return {};
  auto i = static_cast<std::size_t>(n - v.a);
  return {static_cast<int>(v.sign[i]), v.logmag[i]};
}

/** x - y for signed-log operands. */
SignedLog signed_log_diff(SignedLog x, SignedLog y) {
  if (y.sign == 0) return x;
  if (x.sign == 0) return {-y.sign, y.logmag};
  if (x.sign == y.sign) {
    if (x.logmag == y.logmag) return {};
    double lo = std::min(x.logmag, y.logmag);
    double hi = std::max(x.logmag, y.logmag);
    double l = hi + std::log1p(-std::exp(lo - hi));
    return {x.logmag > y.logmag ? x.sign : -x.sign, l};
  }
  double lo = std::min(x.logmag, y.logmag);
  double hi = std::max(x.logmag, y.logmag);
  return {x.sign, hi + std::log1p(std::exp(lo - hi))};
}

void check_window(radius_t a, radius_t b) {
  if (a < 0 || b < a) throw DomainError("support window must satisfy 0 <= a <= b");
}

}  // namespace

LogRadialVector to_log(const RadialVector& v) {
  check_window(v.a, v.b);
  LogRadialVector out;
  out.a = v.a;
  out.b = v.b;
  out.logmag.reserve(v.values.size());
  out.sign.reserve(v.values.size());
  for (double x : v.values) {
    if (x == 0.0) {
      out.sign.push_back(0);
      out.logmag.push_back(-std::numeric_limits<double>::infinity());
    } else {
      out.sign.push_back(x > 0 ? 1 : -1);
      out.logmag.push_back(std::log(std::abs(x)));
    }
  }
  return out;
}

double quadform_full(const TruncatedTree& tree, const std::vector<double>& phi,
                     bool strict_interior) {
  if (static_cast<std::int64_t>(phi.size()) != tree.vertex_count())
    throw DomainError("vertex function length must equal the vertex count");
  auto outer_lo = static_cast<std::size_t>(tree.sphere_begin[static_cast<std::size_t>(tree.depth) - 1]);
  if (strict_interior) {
    for (std::size_t v = outer_lo; v < phi.size(); ++v) {
      if (phi[v] != 0.0)
        throw SupportTouchesBoundaryError(
            "function is nonzero on the outermost sphere of the truncation");
    }
  }
  detail::KahanSum acc;
  for (std::size_t v = 1; v < phi.size(); ++v) {
    double d = phi[v] - phi[static_cast<std::size_t>(tree.parent[v])];
    acc.add(d * d);
  }
  // Children absent from the truncation: the root has branching(0)+1 of them,
  // a deeper vertex at radius r has branching(r).
  double outer_branching = tree.depth == 1
                               ? static_cast<double>(tree.spec.branching(0) + 1)
                               : static_cast<double>(tree.spec.branching(tree.depth - 1));
  for (std::size_t v = outer_lo; v < phi.size(); ++v) {
    acc.add(outer_branching * phi[v] * phi[v]);
  }
  return acc.value();
}

double quadform_radial(const RadialTreeSpec& spec, const RadialVector& phi) {
  check_window(phi.a, phi.b);
  if (phi.values.size() != static_cast<std::size_t>(phi.b - phi.a))
    throw DomainError("radial vector length must equal the window size");
  if (phi.values.empty()) return 0.0;
  radius_t n0 = std::max<radius_t>(phi.a - 1, 0);
  double E = edge_count_approx(spec, n0);
  detail::KahanSum acc;
  for (radius_t n = n0; n < phi.b; ++n) {
    double d = phi.at(n) - phi.at(n + 1);
    acc.add(E * d * d);
    E *= static_cast<double>(spec.branching(n + 1));
  }
  return acc.value();
}

double log_quadform_radial(const RadialTreeSpec& spec, const LogRadialVector& phi) {
  check_window(phi.a, phi.b);
  if (phi.logmag.size() != static_cast<std::size_t>(phi.b - phi.a) ||
      phi.sign.size() != phi.logmag.size())
    throw DomainError("log radial vector lengths must equal the window size");
  if (phi.logmag.empty()) return -std::numeric_limits<double>::infinity();
  radius_t n0 = std::max<radius_t>(phi.a - 1, 0);
  double logE = log_edge_count(spec, n0);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(phi.b - n0));
  for (radius_t n = n0; n < phi.b; ++n) {
    SignedLog d = signed_log_diff(entry_of(phi, n), entry_of(phi, n + 1));
    if (d.sign != 0) terms.push_back(logE + 2.0 * d.logmag);
    logE += std::log(static_cast<double>(spec.branching(n + 1)));
  }
  return detail::log_sum_exp(terms);
}

double weighted_norm(const RadialTreeSpec& spec, const RadialFn& W, const RadialVector& phi) {
  check_window(phi.a, phi.b);
  if (phi.values.size() != static_cast<std::size_t>(phi.b - phi.a))
    throw DomainError("radial vector length must equal the window size");
  if (phi.values.empty()) return 0.0;
  double S = sphere_size_approx(spec, phi.a);
  detail::KahanSum acc;
  for (radius_t n = phi.a; n < phi.b; ++n) {
    double x = phi.at(n);
    acc.add(S * W(n) * x * x);
    S *= static_cast<double>(n == 0 ? spec.branching(0) + 1 : spec.branching(n));
  }
  return acc.value();
}

double log_weighted_norm(const RadialTreeSpec& spec, const RadialFn& W,
                         const LogRadialVector& phi) {
  check_window(phi.a, phi.b);
  if (phi.logmag.size() != static_cast<std::size_t>(phi.b - phi.a))
    throw DomainError("log radial vector lengths must equal the window size");
  if (phi.logmag.empty()) return -std::numeric_limits<double>::infinity();
  double logS = log_sphere_size(spec, phi.a);
  std::vector<double> terms;
  terms.reserve(phi.logmag.size());
  for (radius_t n = phi.a; n < phi.b; ++n) {
    double w = W(n);
    if (w < -1e-12)
      throw NonpositiveWeightError("weight is negative at radius " + std::to_string(n));
    auto i = static_cast<std::size_t>(n - phi.a);
    if (w > 0.0 && phi.sign[i] != 0) terms.push_back(logS + std::log(w) + 2.0 * phi.logmag[i]);
    logS += std::log(static_cast<double>(n == 0 ? spec.branching(0) + 1 : spec.branching(n)));
  }
  return detail::log_sum_exp(terms);
}

double weighted_norm_vertex(const TruncatedTree& tree, const RadialFn& W,
                            const std::vector<double>& phi) {
  if (static_cast<std::int64_t>(phi.size()) != tree.vertex_count())
    throw DomainError("vertex function length must equal the vertex count");
  std::vector<double> wcache(static_cast<std::size_t>(tree.depth));
  for (radius_t r = 0; r < tree.depth; ++r) wcache[static_cast<std::size_t>(r)] = W(r);
  detail::KahanSum acc;
  for (std::size_t v = 0; v < phi.size(); ++v) {
    acc.add(wcache[static_cast<std::size_t>(tree.radius[v])] * phi[v] * phi[v]);
  }
  return acc.value();
}

double hardy_gap(const RadialTreeSpec& spec, const RadialFn& W, const RadialVector& phi) {
  return quadform_radial(spec, phi) - weighted_norm(spec, W, phi);
}

double hardy_gap_vertex(const TruncatedTree& tree, const RadialFn& W,
                        const std::vector<double>& phi) {
  return quadform_full(tree, phi) - weighted_norm_vertex(tree, W, phi);
}

std::vector<double> vertex_from_radial(const TruncatedTree& tree, const RadialVector& phi) {
  check_window(phi.a, phi.b);
  if (phi.b > tree.depth)
    throw DomainError("radial window extends past the truncation depth");
  std::vector<double> out(static_cast<std::size_t>(tree.vertex_count()), 0.0);
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = phi.at(tree.radius[v]);
  return out;
}

std::vector<double> random_vertex_function(const TruncatedTree& tree, std::uint64_t seed,
                                           radius_t a, radius_t b, Dist dist) {
  check_window(a, b);
  if (b > tree.depth - 1)
    throw BudgetError("support window [" + std::to_string(a) + ", " + std::to_string(b) +
                      ") does not fit strictly inside a depth-" + std::to_string(tree.depth) +
                      " truncation");
  std::vector<double> out(static_cast<std::size_t>(tree.vertex_count()), 0.0);
  for (std::size_t v = 0; v < out.size(); ++v) {
    radius_t r = tree.radius[v];
    if (r < a || r >= b) continue;
    out[v] = dist == Dist::Gaussian ? detail::gaussian(seed, v) : detail::rademacher(seed, v);
  }
  return out;
}

RadialVector random_radial_vector(std::uint64_t seed, radius_t a, radius_t b, Dist dist) {
  check_window(a, b);
  if (a == b) throw DomainError("radial window must be nonempty");
  RadialVector out;
  out.a = a;
  out.b = b;
  out.values.resize(static_cast<std::size_t>(b - a));
  for (radius_t n = a; n < b; ++n) {
    auto idx = static_cast<std::uint64_t>(n);
    out.values[static_cast<std::size_t>(n - a)] =
        dist == Dist::Gaussian ? detail::gaussian(seed, idx) : detail::rademacher(seed, idx);
  }
  return out;
}

}  // namespace treehardy
