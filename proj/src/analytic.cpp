#include "hl/analytic.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "hl/smoothweights.hpp"

namespace hl {

namespace {

using LD = long double;

// Inputs arrive as doubles, so a bound recomputed in long double can sit a few
// double ulps away from an F that was set equal to it.
LD clamp_gap(LD bound, LD F, const char* what) {
  const LD slack = 4 * std::numeric_limits<double>::epsilon() * std::fabs(bound);
  if (F > bound + slack) throw DomainError(what);
  return bound - F <= slack ? 0 : bound - F;
}

}  // namespace

std::vector<std::int64_t> default_grid(double X) {
  if (!(X > 4)) throw DomainError("default_grid: X must exceed 4");
  const long double root = std::sqrt(static_cast<LD>(X) + 2);
  const auto top = static_cast<std::int64_t>(std::ceil(1 + root));
  std::vector<std::int64_t> grid{3};
  while (grid.back() < top) {
    const std::int64_t a = grid.back();
    const auto by_ratio = static_cast<std::int64_t>(std::floor(1.5L * a));
    const auto by_gap = static_cast<std::int64_t>(std::floor((3 + root + a) / 2));
    grid.push_back(std::min({by_ratio, by_gap, top}));
  }
  return grid;
}

bool grid_axioms_hold(const std::vector<std::int64_t>& grid, double X) {
  if (grid.size() < 2 || grid.front() != 3) return false;
  const long double root = std::sqrt(static_cast<LD>(X) + 2);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const LD a = grid[i], b = grid[i + 1];
    if (!(a < b)) return false;
    if (b > 1.5L * a) return false;
    if (3 + root - a > 2 * (3 + root - b)) return false;
  }
  const std::size_t I = grid.size() - 1;
  if (!(static_cast<LD>(grid[I - 1]) < 1 + root)) return false;
  const LD last = grid[I];
  return last >= 1 + root && last < 2 + root;
}

AnalyticContext make_context(double X, double d, double tau, int J, double delta, double delta0,
                             double alpha, double beta1) {
  if (!(X > 4)) throw DomainError("context: X must exceed 4");
  if (!(d >= std::pow(X, 2.0 / 3.0) * (1 - 1e-12) && d <= std::pow(X, 0.99) * (1 + 1e-12)))
    throw DomainError("context: need X^{2/3} <= d <= X^{99/100}");
  if (!(tau >= 1 && tau <= 2)) throw DomainError("context: tau must lie in [1, 2]");
  if (J < 1) throw DomainError("context: J must be positive");
  if (!(delta > 0 && delta0 > 0 && alpha > 0 && beta1 > 0))
    throw DomainError("context: delta, delta0, alpha, beta1 must be positive");
  AnalyticContext ctx;
  ctx.X = X;
  ctx.d = d;
  ctx.tau = tau;
  ctx.J = J;
  ctx.grid = default_grid(X);
  ctx.delta = delta;
  ctx.delta0 = delta0;
  ctx.alpha = alpha;
  ctx.beta1 = beta1;
  return ctx;
}

AB<double> ab_funcs(double S, double T) {
  if (S < 0 || T < 0) throw DomainError("ab_funcs: S, T must be non-negative");
  const AB<LD> r = ab_funcs_t<LD>(S, T);
  return {static_cast<double>(r.A), static_cast<double>(r.B)};
}

double a_minus_one(double S, double T) {
  return static_cast<double>(a_minus_one_t<LD>(S, T));
}

STPoint s0t0f(const AnalyticContext& ctx, int j1, int j2, std::int64_t t1, std::int64_t t2,
              std::int64_t f) {
  if (j1 < 0 || j2 < 0 || j1 > ctx.J || j2 > ctx.J) throw DomainError("s0t0f: j out of range");
  if (f == 0) throw DomainError("s0t0f: f must be nonzero");
  const LD S0 = s0_t<LD>(ctx.X, ctx.d, ctx.tau, j1, t1);
  const LD T0 = s0_t<LD>(ctx.X, ctx.d, ctx.tau, j2, t2);
  return {static_cast<double>(S0), static_cast<double>(T0),
          static_cast<double>(f_ratio_t<LD>(t1, t2, f))};
}

double y1(const STPoint& p) {
  const AB<LD> ab = ab_funcs_t<LD>(p.S0, p.T0);
  const LD F = p.F;
  const LD gap = clamp_gap(ab.B, F, "y1: F exceeds B(S0, T0)");
  const LD den = p.T0 + static_cast<LD>(p.S0) * F;
  if (den == 0) throw DomainError("y1: T0 + S0 F vanishes");
  return static_cast<double>(std::sqrt(gap * (ab.A + F)) / den);
}

double y2(const STPoint& p) {
  const AB<LD> ab = ab_funcs_t<LD>(p.S0, p.T0);
  const LD F = p.F;
  const LD gap = clamp_gap(ab.A, F, "y2: F exceeds A(S0, T0)");
  const LD den = std::fabs(p.T0 - static_cast<LD>(p.S0) * F);
  if (den == 0) throw DomainError("y2: T0 = S0 F");
  return static_cast<double>(std::sqrt((ab.B + F) * gap) / den);
}

double amplitude_ax(double X, std::int64_t t1, std::int64_t t2) {
  return static_cast<double>(amplitude_ax_t<LD>(X, t1, t2));
}

double amplitude_bx(double X, std::int64_t t1, std::int64_t t2) {
  return static_cast<double>(amplitude_bx_t<LD>(X, t1, t2));
}

double amplitude_cx(double X, std::int64_t t1, std::int64_t t2, double alpha) {
  const double diff = static_cast<double>(t1 > t2 ? t1 - t2 : t2 - t1);
  const double cut = psi0(diff / std::pow(X, 0.5 - alpha));
  if (cut == 0) return 0.0;
  const double sign = t1 > t2 ? 1.0 : -1.0;
  return sign * amplitude_bx(X, t1, t2) * cut;
}

bool region_member(const AnalyticContext& ctx, int i, int j1, int j2, std::int64_t t1,
                   std::int64_t t2, std::int64_t f, Region which) {
  if (i < 1 || i > ctx.intervals() || f == 0) return false;
  LD s_j1, t_j2, t_0;
  try {
    s_j1 = s0_t<LD>(ctx.X, ctx.d, ctx.tau, j1, t1);
    t_j2 = s0_t<LD>(ctx.X, ctx.d, ctx.tau, j2, t2);
    t_0 = s0_t<LD>(ctx.X, ctx.d, ctx.tau, 0, t2);
  } catch (const DomainError&) {
    return false;
  }
  const LD F = f_ratio_t<LD>(t1, t2, f);
  const LD ai = ctx.a(i), next = ctx.a(i + 1);
  const LD X = ctx.X, d = ctx.d;
  if (!(F > 1)) return false;
  if (t1 < ai || t1 > next - 1 || t2 < ai || t2 > next - 1) return false;
  const LD xd = std::pow(X, static_cast<LD>(ctx.delta));
  const LD gap = std::fabs(static_cast<LD>(t2 - t1));
  const LD sep = d * ai / X * std::pow(X, static_cast<LD>(ctx.delta0));
  if (which == Region::U) {
    const LD lo = ab_funcs_t<LD>(s_j1, t_0).B - d / (ai * ai) * xd;
    const LD hi = ab_funcs_t<LD>(s_j1, t_j2).B;
    return lo < F && F <= hi;
  }
  const LD lo = ab_funcs_t<LD>(s_j1, t_0).A - d * gap / (ai * (X - ai * ai)) * xd;
  const LD hi = ab_funcs_t<LD>(s_j1, t_j2).A;
  if (!(lo < F && F <= hi)) return false;
  if (which == Region::V) return static_cast<LD>(t1 - t2) > sep;
  return static_cast<LD>(t2 - t1) > sep;
}

CShifts c_shifts(const AnalyticContext& ctx, int i, int j1, int j2, std::int64_t t1,
                 std::int64_t t2) {
  if (i < 1 || i > ctx.intervals()) throw DomainError("c_shifts: grid index out of range");
  const LD s_j1 = s0_t<LD>(ctx.X, ctx.d, ctx.tau, j1, t1);
  const LD t_j2 = s0_t<LD>(ctx.X, ctx.d, ctx.tau, j2, t2);
  const LD t_0 = s0_t<LD>(ctx.X, ctx.d, ctx.tau, 0, t2);
  const LD X = ctx.X, d = ctx.d, ai = ctx.a(i);
  if (!(X > ai * ai)) throw DomainError("c_shifts: C2 needs a_i^2 < X");
  const LD xd = std::pow(X, static_cast<LD>(ctx.delta));
  const LD scale = d / std::sqrt(static_cast<LD>(t1 * t1 - 4) * static_cast<LD>(t2 * t2 - 4));
  const AB<LD> at0 = ab_funcs_t<LD>(s_j1, t_0), atj = ab_funcs_t<LD>(s_j1, t_j2);
  const LD gap = std::fabs(static_cast<LD>(t2 - t1));
  const LD c1 = (at0.B - d / (ai * ai) * xd - atj.B) / scale;
  const LD c2 = (at0.A - d * gap * xd / (ai * (X - ai * ai)) - atj.A) / scale;
  return {static_cast<double>(c1), static_cast<double>(c2)};
}

Complex oscillatory_h(double beta1, double C, double Y, double X) {
  const double lo = 0.5 * std::pow(X, -beta1);
  const double hi = std::max(0.0, 1 - C);
  if (!(hi > lo)) return {0.0, 0.0};
  const double scale = std::pow(X, beta1);
  auto weight = [&](double y) {
    return std::pow(y, 1.5) * psi0(scale * y) * (1 - psi0(y + C));
  };
  auto re = [&](double y) { return weight(y) * std::cos(2 * M_PI * Y * y); };
  auto im = [&](double y) { return weight(y) * std::sin(2 * M_PI * Y * y); };
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;
  // Break at the bridge ends of both cutoffs, then cap panel length.
  std::vector<double> cuts{lo, hi, 1 / scale, 1 - C - 0.5, 1 - C};
  const double max_len = 1.0 / (4 * std::fabs(Y) + 1);
  std::sort(cuts.begin(), cuts.end());
  RealSum sr, si;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = std::max(lo, cuts[k]), b = std::min(hi, cuts[k + 1]);
    if (!(b > a)) continue;
    const int panels = static_cast<int>(std::ceil((b - a) / max_len));
    for (int p = 0; p < panels; ++p) {
      const double pa = a + (b - a) * p / panels, pb = a + (b - a) * (p + 1) / panels;
      sr.add(Kronrod::integrate(re, pa, pb, 12, 1e-12));
      si.add(Kronrod::integrate(im, pa, pb, 12, 1e-12));
    }
  }
  return {sr.value(), si.value()};
}

double phi_cubic_model(double S0, double w) { return (1 + S0 * S0) * w * w * w / 3; }

}  // namespace hl
