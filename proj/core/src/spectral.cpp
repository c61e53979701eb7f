#include "treehardy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace treehardy {

namespace {

constexpr double kZeroWeightTol = 1e-12;
constexpr radius_t kRawWitnessDepth = 1000;
constexpr std::uint64_t kEigvecSeed = 0x5EEDFACEull;

double branching_into(const RadialTreeSpec& spec, radius_t n) {
  // multiplier S_{n+1} / S_n
  return static_cast<double>(n == 0 ? spec.branching(0) + 1 : spec.branching(n));
}

/** Number of eigenvalues of the tridiagonal (d, e) strictly below x. */
int count_below(const std::vector<double>& d, const std::vector<double>& e, double x,
                double pivmin) {
  int cnt = 0;
  double t = d[0] - x;
  if (std::abs(t) < pivmin) t = -pivmin;
  if (t < 0) ++cnt;
  for (std::size_t i = 1; i < d.size(); ++i) {
    t = d[i] - x - e[i - 1] * e[i - 1] / t;
    if (std::abs(t) < pivmin) t = -pivmin;
    if (t < 0) ++cnt;
  }
  return cnt;
}

void normalize2(std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v * v;
  s = std::sqrt(s);
  if (s == 0.0) return;
  for (double& v : x) v /= s;
}

struct Pencil {
  JacobiSystem M;            // reduced standard-form system
  radius_t a = 0;
  radius_t b = 0;
  std::size_t lead = 0;      // deflated zero-weight indices at the window start
  std::size_t trail = 0;     // and at the window end
  std::vector<double> w;     // W over [a, b)
  std::vector<double> dpsi;  // (J - V0) diagonal after the deflation updates
  std::vector<double> epsi;  // (J - V0) sub-diagonal
};

Pencil build_pencil(const RadialTreeSpec& spec, const RadialFn* V0, const RadialFn& W, radius_t a,
                    radius_t b) {
  if (a < 0 || b <= a) throw DomainError("window [a, b) must satisfy 0 <= a < b");
  RadialFn vfn;
  if (V0)
    vfn = *V0;
  else
    vfn = [](radius_t) { return 0.0; };
  JacobiSystem J = build_jacobi(spec, vfn, a, b);
  auto len = static_cast<std::size_t>(b - a);

  Pencil P;
  P.a = a;
  P.b = b;
  P.dpsi = std::move(J.diag);
  P.epsi = std::move(J.sub);
  P.w.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    double wv = W(a + static_cast<radius_t>(i));
    if (wv < -kZeroWeightTol)
      throw NonpositiveWeightError("weight is negative at radius " +
                                   std::to_string(a + static_cast<radius_t>(i)));
    P.w[i] = wv;
  }
  auto zero_at = [&](std::size_t i) { return std::abs(P.w[i]) <= kZeroWeightTol; };

  while (P.lead < len && zero_at(P.lead)) {
    std::size_t i = P.lead;
    if (!(P.dpsi[i] > 0.0))
      throw DomainError("cannot deflate: nonpositive diagonal at radius " +
                        std::to_string(a + static_cast<radius_t>(i)));
    if (i + 1 < len) P.dpsi[i + 1] -= P.epsi[i] * P.epsi[i] / P.dpsi[i];
    ++P.lead;
  }
  if (P.lead == len) throw DomainError("weight vanishes on the entire window");
  while (P.trail < len - P.lead && zero_at(len - 1 - P.trail)) {
    std::size_t i = len - 1 - P.trail;
    if (!(P.dpsi[i] > 0.0))
      throw DomainError("cannot deflate: nonpositive diagonal at radius " +
                        std::to_string(a + static_cast<radius_t>(i)));
    P.dpsi[i - 1] -= P.epsi[i - 1] * P.epsi[i - 1] / P.dpsi[i];
    ++P.trail;
  }
  for (std::size_t i = P.lead; i < len - P.trail; ++i) {
    if (zero_at(i))
      throw DomainError("weight vanishes at interior radius " +
                        std::to_string(a + static_cast<radius_t>(i)) +
                        "; only window-edge zeros can be deflated");
  }

  std::size_t m = len - P.lead - P.trail;
  P.M.a = a + static_cast<radius_t>(P.lead);
  P.M.b = b - static_cast<radius_t>(P.trail);
  P.M.diag.resize(m);
  P.M.sub.resize(m > 1 ? m - 1 : 0);
  for (std::size_t j = 0; j < m; ++j) P.M.diag[j] = P.dpsi[P.lead + j] / P.w[P.lead + j];
  for (std::size_t j = 0; j + 1 < m; ++j)
    P.M.sub[j] = P.epsi[P.lead + j] / std::sqrt(P.w[P.lead + j] * P.w[P.lead + j + 1]);
  return P;
}

void fill_witness(Violator& out, const RadialTreeSpec& spec, const Pencil& P,
                  const std::vector<double>& x) {
  auto len = static_cast<std::size_t>(P.b - P.a);
  std::vector<double> psi(len, 0.0);
  std::size_t m = len - P.lead - P.trail;
  for (std::size_t j = 0; j < m; ++j) psi[P.lead + j] = x[j] / std::sqrt(P.w[P.lead + j]);
  for (std::size_t k = P.lead; k-- > 0;) psi[k] = -(P.epsi[k] / P.dpsi[k]) * psi[k + 1];
  for (std::size_t i = len - P.trail; i < len; ++i)
    psi[i] = -(P.epsi[i - 1] / P.dpsi[i]) * psi[i - 1];

  out.log_witness.a = P.a;
  out.log_witness.b = P.b;
  out.log_witness.logmag.assign(len, -std::numeric_limits<double>::infinity());
  out.log_witness.sign.assign(len, 0);
  double logS = log_sphere_size(spec, P.a);
  double max_logphi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < len; ++i) {
    radius_t n = P.a + static_cast<radius_t>(i);
    if (psi[i] != 0.0) {
      out.log_witness.sign[i] = psi[i] > 0 ? 1 : -1;
      out.log_witness.logmag[i] = std::log(std::abs(psi[i])) - 0.5 * logS;
      max_logphi = std::max(max_logphi, out.log_witness.logmag[i]);
    }
    logS += std::log(branching_into(spec, n));
  }
  if (std::isfinite(max_logphi)) {
    for (double& l : out.log_witness.logmag) l -= max_logphi;
  }

  out.witness.a = P.a;
  out.witness.b = P.b;
  out.witness.values.assign(len, 0.0);
  if (P.b <= kRawWitnessDepth) {
    out.symmetrized = false;
    for (std::size_t i = 0; i < len; ++i) {
      if (out.log_witness.sign[i] != 0)
        out.witness.values[i] = out.log_witness.sign[i] * std::exp(out.log_witness.logmag[i]);
    }
  } else {
    out.symmetrized = true;
    double maxabs = 0.0;
    for (double v : psi) maxabs = std::max(maxabs, std::abs(v));
    if (maxabs == 0.0) maxabs = 1.0;
    for (std::size_t i = 0; i < len; ++i) out.witness.values[i] = psi[i] / maxabs;
  }
}

Violator run_find(const RadialTreeSpec& spec, const RadialFn* V0, const RadialFn& W, double C,
                  radius_t start, radius_t max_window) {
  if (start < 0) throw DomainError("start radius must be nonnegative");
  if (max_window <= start + 1) throw DomainError("max_window must exceed start + 1");
  std::vector<radius_t> candidates;
  for (radius_t len = 8; start + len <= max_window; len *= 2)
    candidates.push_back(start + len);
  if (candidates.empty() || candidates.back() != max_window) candidates.push_back(max_window);

  Violator out;
  out.window_start = start;
  for (radius_t N : candidates) {
    Pencil P = build_pencil(spec, V0, W, start, N);
    double lam = lambda_min(P.M);
    out.window_end = N;
    out.last_ratio = lam;
    if (!(lam < C)) continue;
    std::vector<double> x = bottom_eigenvector(P.M, lam);
    double r = rayleigh_quotient(P.M, x);
    if (!(r < C)) continue;  // the eigenvector did not certify the ratio; grow the window
    out.found = true;
    out.ratio = r;
    fill_witness(out, spec, P, x);
    return out;
  }
  return out;
}

SweepResult sweep_balls(const RadialTreeSpec& spec, const RadialFn& V,
                        const std::vector<radius_t>& windows, const double* floor_tol) {
  if (windows.empty()) throw DomainError("sweep needs at least one window");
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i] < 1 || (i > 0 && windows[i] <= windows[i - 1]))
      throw DomainError("windows must be strictly increasing and >= 1");
  }
  SweepResult res;
  res.points.reserve(windows.size());
  for (radius_t N : windows) {
    JacobiSystem J = build_jacobi(spec, V, 0, N);
    double lam = lambda_min(J);
    if (floor_tol && lam < -*floor_tol)
      throw NonnegativityViolation("bottom eigenvalue " + std::to_string(lam) +
                                   " on the ball of radius " + std::to_string(N) +
                                   " is below the nonnegativity floor");
    res.points.push_back({N, lam});
  }
  res.strictly_decreasing = true;
  for (std::size_t i = 1; i < res.points.size(); ++i) {
    if (!(res.points[i].lambda < res.points[i - 1].lambda)) res.strictly_decreasing = false;
  }
  res.limit = richardson_limit(res.points);
  return res;
}

}  // namespace

JacobiSystem build_jacobi(const RadialTreeSpec& spec, const RadialFn& V, radius_t a, radius_t b) {
  if (a < 0 || b <= a) throw DomainError("window [a, b) must satisfy 0 <= a < b");
  JacobiSystem J;
  J.a = a;
  J.b = b;
  auto len = static_cast<std::size_t>(b - a);
  J.diag.resize(len);
  J.sub.resize(len > 1 ? len - 1 : 0);
  for (radius_t n = a; n < b; ++n) {
    J.diag[static_cast<std::size_t>(n - a)] =
        static_cast<double>(spec.branching(n)) + 1.0 - V(n);
  }
  for (radius_t n = a; n + 1 < b; ++n) {
    J.sub[static_cast<std::size_t>(n - a)] = -std::sqrt(branching_into(spec, n));
  }
  return J;
}

double lambda_min(const JacobiSystem& J) {
  const auto& d = J.diag;
  const auto& e = J.sub;
  if (d.empty()) throw DomainError("lambda_min needs a nonempty window");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double emax2 = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < d.size()) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  for (double ev : e) emax2 = std::max(emax2, ev * ev);
  double pivmin = 1e-290 * std::max(1.0, emax2);
  lo -= 1e-10 + 1e-14 * std::abs(lo);
  hi += 1e-10 + 1e-14 * std::abs(hi);
  for (int it = 0; it < 200; ++it) {
    double tol = 1e-13 + 4e-16 * std::max(std::abs(lo), std::abs(hi));
    if (!(hi - lo > tol)) break;
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(d, e, mid, pivmin) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> bottom_eigenvector(const JacobiSystem& J, double lambda) {
  std::size_t n = J.size();
  if (n == 0) throw DomainError("eigenvector needs a nonempty window");
  if (n == 1) return {1.0};
  const auto& e = J.sub;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = 2.0 * detail::uniform01(kEigvecSeed, i) - 1.0;
  normalize2(x);

  // The shifted matrix is positive semidefinite up to the bisection
  // tolerance, so the unpivoted LDL^T solve below is stable; near-zero
  // pivots are clamped.
  double clamp = 1e-290 * std::max(1.0, std::abs(lambda));
  std::vector<double> dd(n), y(n);
  for (int iter = 0; iter < 3; ++iter) {
    for (std::size_t i = 0; i < n; ++i) dd[i] = J.diag[i] - lambda;
    y = x;
    for (std::size_t i = 1; i < n; ++i) {
      double piv = dd[i - 1];
      if (std::abs(piv) < clamp) piv = (piv < 0 ? -clamp : clamp);
      double m = e[i - 1] / piv;
      dd[i] -= m * e[i - 1];
      y[i] -= m * y[i - 1];
    }
    double piv = dd[n - 1];
    if (std::abs(piv) < clamp) piv = (piv < 0 ? -clamp : clamp);
    x[n - 1] = y[n - 1] / piv;
    for (std::size_t i = n - 1; i-- > 0;) {
      piv = dd[i];
      if (std::abs(piv) < clamp) piv = (piv < 0 ? -clamp : clamp);
      x[i] = (y[i] - e[i] * x[i + 1]) / piv;
    }
    normalize2(x);
  }

  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(x[i]) > std::abs(x[imax])) imax = i;
  }
  double scale = x[imax];
  if (scale == 0.0) scale = 1.0;
  for (double& v : x) v /= scale;
  return x;
}

double rayleigh_quotient(const JacobiSystem& J, const std::vector<double>& x) {
  if (x.size() != J.size() || x.empty())
    throw DomainError("vector length must equal the window size");
  detail::KahanSum num;
  detail::KahanSum den;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num.add(J.diag[i] * x[i] * x[i]);
    if (i + 1 < x.size()) num.add(2.0 * J.sub[i] * x[i] * x[i + 1]);
    den.add(x[i] * x[i]);
  }
  if (den.value() == 0.0) throw DomainError("cannot form a Rayleigh quotient of the zero vector");
  return num.value() / den.value();
}

LimitEstimate richardson_limit(const std::vector<SweepPoint>& points) {
  LimitEstimate est;
  if (points.empty()) return est;
  double l3 = points.back().lambda;
  est.limit = l3;
  est.uncertainty = std::abs(l3);
  if (points.size() < 2) return est;
  double l2 = points[points.size() - 2].lambda;
  est.uncertainty = std::abs(l2 - l3);
  if (points.size() < 3) return est;
  double l1 = points[points.size() - 3].lambda;
  double N1 = static_cast<double>(points[points.size() - 3].window_end);
  double N2 = static_cast<double>(points[points.size() - 2].window_end);
  double N3 = static_cast<double>(points.back().window_end);
  double d12 = l1 - l2;
  double d23 = l2 - l3;
  if (!(d12 > 0.0) || !(d23 > 0.0)) return est;  // not a decreasing tail: keep the fallback
  double target = d12 / d23;
  auto g = [&](double p) {
    double va = std::pow(N1, -p), vb = std::pow(N2, -p), vc = std::pow(N3, -p);
    return (va - vb) / (vb - vc) - target;
  };
  double plo = 0.1, phi = 8.0;
  double glo = g(plo), ghi = g(phi);
  if ((glo < 0.0) == (ghi < 0.0)) return est;  // exponent outside the fit range
  for (int it = 0; it < 100; ++it) {
    double pm = 0.5 * (plo + phi);
    double gm = g(pm);
    if ((gm < 0.0) == (glo < 0.0)) {
      plo = pm;
      glo = gm;
    } else {
      phi = pm;
    }
  }
  double p = 0.5 * (plo + phi);
  double vb = std::pow(N2, -p), vc = std::pow(N3, -p);
  double limit = l3 - d23 * vc / (vb - vc);
  est.limit = limit;
  est.uncertainty = std::abs(l3 - limit);
  est.rate = p;
  est.extrapolated = true;
  return est;
}

SweepResult poincare_bottom_sweep(const RadialTreeSpec& spec,
                                  const std::vector<radius_t>& windows) {
  RadialFn zero = [](radius_t) { return 0.0; };
  return sweep_balls(spec, zero, windows, nullptr);
}

SweepResult criticality_probe(const RadialTreeSpec& spec, const RadialFn& W,
                              const std::vector<radius_t>& windows, double floor_tol) {
  return sweep_balls(spec, W, windows, &floor_tol);
}

double hardy_ratio_inf(const RadialTreeSpec& spec, const RadialFn& W, radius_t a, radius_t b) {
  return lambda_min(build_pencil(spec, nullptr, W, a, b).M);
}

double hardy_ratio_inf_shifted(const RadialTreeSpec& spec, const RadialFn& V0, const RadialFn& W,
                               radius_t a, radius_t b) {
  return lambda_min(build_pencil(spec, &V0, W, a, b).M);
}

Violator find_violator(const RadialTreeSpec& spec, const RadialFn& W, double C, radius_t start,
                       radius_t max_window) {
  return run_find(spec, nullptr, W, C, start, max_window);
}

Violator find_violator_shifted(const RadialTreeSpec& spec, const RadialFn& V0, const RadialFn& W,
                               double C, radius_t start, radius_t max_window) {
  return run_find(spec, &V0, W, C, start, max_window);
}

double pencil_ratio_log(const RadialTreeSpec& spec, const RadialFn* V0, const RadialFn& W,
                        const LogRadialVector& phi) {
  double lf = log_quadform_radial(spec, phi);
  double lw = log_weighted_norm(spec, W, phi);
  if (!std::isfinite(lw)) throw DomainError("the weighted norm of the function is zero");
  double lv = -std::numeric_limits<double>::infinity();
  if (V0) lv = log_weighted_norm(spec, *V0, phi);
  double m = std::max(lf, lv);
  if (!std::isfinite(m)) return 0.0;
  double num = std::exp(lf - m) - (std::isfinite(lv) ? std::exp(lv - m) : 0.0);
  return num * std::exp(m - lw);
}

double NullCritSums::ratio_at(radius_t N) const {
  if (N < 1 || 2 * N >= static_cast<radius_t>(partial.size()))
    throw DomainError("ratio_at needs 1 <= N with 2N inside the computed range");
  return partial[static_cast<std::size_t>(2 * N)] / partial[static_cast<std::size_t>(N)];
}

NullCritSums null_criticality_sums(const RadialTreeSpec& spec, const RadialFn& W,
                                   const RadialFunction& z, radius_t N) {
  if (N < 0) throw DomainError("N must be nonnegative");
  NullCritSums out;
  out.partial.resize(static_cast<std::size_t>(N) + 1);
  detail::KahanSum acc;
  double logS = 0.0;
  for (radius_t n = 0; n <= N; ++n) {
    if (n > 0) logS += std::log(branching_into(spec, n - 1));
    double w = W(n);
    if (w > 0.0) acc.add(std::exp(logS + 2.0 * z.log_value(n) + std::log(w)));
    out.partial[static_cast<std::size_t>(n)] = acc.value();
  }
  return out;
}

}  // namespace treehardy
