#include "hl/hyperbolic.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "hl/arith.hpp"
#include "hl/smoothweights.hpp"

namespace hl {

namespace {

constexpr long double kSafe = 4;

bool within(long double radius, double X) { return radius <= X * (1 + kRadiusTol); }

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Visit every PSL2(Z) element with 4u + 2 <= X whose lower-left entry lies in
// [c_lo, c_hi). The c = 0 translations belong to the range containing 0.
template <class Fn>
void enumerate_orbit(HPoint z, double X, std::int64_t c_lo, std::int64_t c_hi, Fn&& visit) {
  const long double x = z.x, y = z.y;
  if (c_lo <= 0 && 0 < c_hi) {
    const auto bmax = static_cast<std::int64_t>(std::floor(y * std::sqrt(std::max(0.0L, X - 2.0L)))) + 1;
    for (std::int64_t b = -bmax; b <= bmax; ++b) {
      const GroupElement g{1, b, 0, 1};
      const long double r = orbit_radius(g, z);
      if (within(r, X)) visit(g, r);
    }
  }
  const long double lim = X * kSafe;
  for (std::int64_t c = std::max<std::int64_t>(c_lo, 1); c < c_hi; ++c) {
    const long double cy2 = (c * y) * (c * y);
    if (cy2 > lim) break;
    const long double span = std::sqrt(lim - cy2);
    const auto dlo = static_cast<std::int64_t>(std::floor(-c * x - span));
    const auto dhi = static_cast<std::int64_t>(std::ceil(-c * x + span));
    for (std::int64_t d = dlo; d <= dhi; ++d) {
      if (gcd_i64(c, d) != 1) continue;
      const std::int64_t a0 = c == 1 ? 0 : static_cast<std::int64_t>(inverse_mod(d, static_cast<std::uint64_t>(c)));
      const std::int64_t b0 = (a0 * d - 1) / c;
      // The family (a0 + tc, b0 + td; c, d) sends z to w0 + t.
      const long double q = (c * x + d) * (c * x + d) + cy2;
      const long double wx = ((a0 * x + b0) * (c * x + d) + a0 * c * y * y) / q;
      const long double wy = y / q;
      const long double r2 = (X - 2.0L) * y * y / q - (wy - y) * (wy - y);
      if (r2 < -1e-9L) continue;
      const long double half = std::sqrt(std::max(0.0L, r2));
      const auto tlo = static_cast<std::int64_t>(std::floor(x - wx - half)) - 1;
      const auto thi = static_cast<std::int64_t>(std::ceil(x - wx + half)) + 1;
      for (std::int64_t t = tlo; t <= thi; ++t) {
        const GroupElement g{a0 + t * c, b0 + t * d, c, d};
        const long double r = orbit_radius(g, z);
        if (within(r, X)) visit(g, r);
      }
    }
  }
}

std::int64_t c_limit(HPoint z, double X) {
  return static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<long double>(X)) * kSafe / z.y)) + 1;
}

void check_count_args(HPoint z, double X) {
  if (!(z.y > 0)) throw DomainError("orbit count: Im z must be positive");
  if (!(X >= 2)) throw DomainError("orbit count: X must be at least 2");
}

// Split [0, c_max] into contiguous chunks and run them in order.
template <class Part, class Fn>
std::vector<Part> over_c_ranges(HPoint z, double X, int workers, Fn&& run) {
  const std::int64_t c_max = c_limit(z, X) + 1;
  const int parts = std::max(1, workers);
  std::vector<std::future<Part>> futures;
  std::vector<Part> out;
  const std::int64_t step = (c_max + parts) / parts;
  for (int i = 0; i < parts; ++i) {
    const std::int64_t lo = i * step, hi = std::min(c_max, (i + 1) * step);
    if (parts == 1) {
      out.push_back(run(lo, hi));
    } else {
      futures.push_back(std::async(std::launch::async, run, lo, hi));
    }
  }
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

}  // namespace

GroupElement GroupElement::normalized(std::int64_t a, std::int64_t b, std::int64_t c,
                                      std::int64_t d) {
  if (a * d - b * c != 1) throw DomainError("GroupElement: determinant must be 1");
  const bool flip = c < 0 || (c == 0 && (d < 0 || (d == 0 && a < 0)));
  if (flip) return {-a, -b, -c, -d};
  return {a, b, c, d};
}

void CountResult::add(std::int64_t abs_trace, std::int64_t n) {
  total += n;
  byAbsTrace[abs_trace] += n;
}

void CountResult::merge(const CountResult& o) {
  for (const auto& [t, n] : o.byAbsTrace) add(t, n);
}

double u_dist(HPoint z, HPoint w) {
  const double dx = z.x - w.x, dy = z.y - w.y;
  return (dx * dx + dy * dy) / (4 * z.y * w.y);
}

HPoint mobius(const GroupElement& g, HPoint z) {
  const double cx = g.c * z.x + g.d, cy = g.c * z.y;
  const double q = cx * cx + cy * cy;
  const double ax = g.a * z.x + g.b, ay = g.a * z.y;
  return {(ax * cx + ay * cy) / q, z.y / q};
}

long double orbit_radius(const GroupElement& g, HPoint z) {
  // Frobenius norm squared of h^-1 g h, where h = (sqrt y, x/sqrt y; 0, 1/sqrt y).
  const long double x = z.x, y = z.y;
  const long double p = g.a - g.c * x;
  const long double q = g.c * x + g.d;
  const long double r = g.c * y;
  const long double s = (g.b + (g.a - g.d) * x - g.c * x * x) / y;
  return p * p + q * q + r * r + s * s;
}

CountResult count_orbit(HPoint z, double X, int workers) {
  check_count_args(z, X);
  auto run = [z, X](std::int64_t lo, std::int64_t hi) {
    CountResult part;
    enumerate_orbit(z, X, lo, hi, [&](const GroupElement& g, long double) { part.add(g.abs_trace()); });
    return part;
  };
  CountResult out;
  for (const CountResult& p : over_c_ranges<CountResult>(z, X, workers, run)) out.merge(p);
  return out;
}

std::vector<long double> orbit_radii(HPoint z, double X, int workers) {
  check_count_args(z, X);
  auto run = [z, X](std::int64_t lo, std::int64_t hi) {
    std::vector<long double> part;
    enumerate_orbit(z, X, lo, hi, [&](const GroupElement&, long double r) { part.push_back(r); });
    return part;
  };
  std::vector<long double> out;
  for (auto& p : over_c_ranges<std::vector<long double>>(z, X, workers, run))
    out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

CountResult count_orbit_naive(HPoint z, double X, std::int64_t bound) {
  CountResult out;
  if (X < 2) return out;
  for (std::int64_t c = 0; c <= bound; ++c) {
    for (std::int64_t d = -bound; d <= bound; ++d) {
      if (c == 0 && d <= 0) continue;
      for (std::int64_t a = -bound; a <= bound; ++a) {
        std::int64_t b;
        if (c == 0) {
          if (a * d != 1) continue;
          for (b = -bound; b <= bound; ++b) {
            const GroupElement g{a, b, c, d};
            if (4 * static_cast<long double>(u_dist(mobius(g, z), z)) + 2 <= X * (1 + kRadiusTol))
              out.add(g.abs_trace());
          }
          continue;
        }
        if ((a * d - 1) % c != 0) continue;
        b = (a * d - 1) / c;
        if (b < -bound || b > bound) continue;
        const GroupElement g{a, b, c, d};
        if (4 * static_cast<long double>(u_dist(mobius(g, z), z)) + 2 <= X * (1 + kRadiusTol))
          out.add(g.abs_trace());
      }
    }
  }
  return out;
}

std::int64_t m_sum(std::int64_t t, double x, HPoint z) {
  if (t <= 2) throw DomainError("m_sum: t must exceed 2");
  if (!(x >= 0)) throw DomainError("m_sum: x must be non-negative");
  const CountResult r = count_orbit(z, 4 * x + 2);
  const auto it = r.byAbsTrace.find(t);
  return it == r.byAbsTrace.end() ? 0 : it->second;
}

Weight default_eta0() { return {eta0, eta0_cdf}; }

namespace {

void check_smoothing_args(double X, double d, int J) {
  if (J < 0) throw DomainError("smoothed_count: J must be non-negative");
  if (!(d >= 0)) throw DomainError("smoothed_count: d must be non-negative");
  if (!(X - 2 * J * d > 2)) throw DomainError("smoothed_count: need X - 2 J d > 2");
}

// Number of radii <= Y, with the same tolerance as the counting predicate.
double count_below(const std::vector<long double>& radii, long double Y) {
  return static_cast<double>(std::upper_bound(radii.begin(), radii.end(), Y * (1 + kRadiusTol)) -
                             radii.begin());
}

}  // namespace

double smoothed_count(HPoint z, double X, double d, int J, const Weight& eta0) {
  check_smoothing_args(X, d, J);
  const std::vector<long double> radii = orbit_radii(z, X);
  RealSum total;
  for (int j = 0; j <= J; ++j) {
    const double sign = (j % 2 ? -1.0 : 1.0) * static_cast<double>(binom(J, j));
    if (j == 0 || d == 0) {
      total.add(sign * count_below(radii, X));
      continue;
    }
    // A radius r contributes the eta0-mass of {tau : r <= X - j d tau}.
    RealSum inner;
    for (long double r : radii) {
      const double tau = static_cast<double>((X * (1 + kRadiusTol) - r) / (j * d));
      if (tau <= 1) continue;
      inner.add(eta0.cdf(tau));
    }
    total.add(sign * inner.value());
  }
  return total.value();
}

double smoothed_count_quadrature(HPoint z, double X, double d, int J, const Weight& eta0) {
  check_smoothing_args(X, d, J);
  const std::vector<long double> radii = orbit_radii(z, X);
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  RealSum total;
  for (int j = 0; j <= J; ++j) {
    const double sign = (j % 2 ? -1.0 : 1.0) * static_cast<double>(binom(J, j));
    if (j == 0 || d == 0) {
      total.add(sign * count_below(radii, X));
      continue;
    }
    std::vector<double> cuts{1.0, 2.0};
    for (long double r : radii) {
      const double tau = static_cast<double>((X * (1 + kRadiusTol) - r) / (j * d));
      if (tau > 1 && tau < 2) cuts.push_back(tau);
    }
    std::sort(cuts.begin(), cuts.end());
    RealSum inner;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double lo = cuts[k], hi = cuts[k + 1];
      if (hi <= lo) continue;
      const double mid = 0.5 * (lo + hi);
      const double n = count_below(radii, X - j * d * static_cast<long double>(mid));
      inner.add(n * Gauss::integrate(eta0.density, lo, hi));
    }
    total.add(sign * inner.value());
  }
  return total.value();
}

double smoothed_transform(const std::function<double(double)>& N, double X, double d, int J,
                          const Weight& eta0) {
  check_smoothing_args(X, d, J);
  using Gauss = boost::math::quadrature::gauss<double, 30>;
  RealSum total;
  for (int j = 0; j <= J; ++j) {
    const double sign = (j % 2 ? -1.0 : 1.0) * static_cast<double>(binom(J, j));
    auto f = [&](double tau) { return eta0.density(tau) * N(X - j * d * tau); };
    total.add(sign * (Gauss::integrate(f, 1.0, 1.5) + Gauss::integrate(f, 1.5, 2.0)));
  }
  return total.value();
}

bool inside_fundamental_domain(const Rect& r) {
  if (!(r.x0 < r.x1) || !(r.y0 < r.y1)) return false;
  if (r.x0 < -0.5 || r.x1 > 0.5) return false;
  const double xmin = (r.x0 <= 0 && r.x1 >= 0) ? 0.0 : std::min(std::fabs(r.x0), std::fabs(r.x1));
  return xmin * xmin + r.y0 * r.y0 >= 1 - 1e-12;
}

double local_l2(const Rect& region, double X, int grid, int workers) {
  if (!inside_fundamental_domain(region)) throw DomainError("local_l2: region must lie in F");
  if (grid < 1) throw DomainError("local_l2: grid must be positive");
  const double hx = (region.x1 - region.x0) / grid, hy = (region.y1 - region.y0) / grid;
  auto row = [&](int i) {
    RealSum s;
    const double y = region.y0 + (i + 0.5) * hy;
    for (int k = 0; k < grid; ++k) {
      const double x = region.x0 + (k + 0.5) * hx;
      const double err = static_cast<double>(count_orbit({x, y}, X).total) - 3 * X;
      s.add(err * err * hx * hy / (y * y));
    }
    return s.value();
  };
  std::vector<double> rows(static_cast<std::size_t>(grid));
  if (workers <= 1) {
    for (int i = 0; i < grid; ++i) rows[static_cast<std::size_t>(i)] = row(i);
  } else {
    for (int start = 0; start < grid; start += workers) {
      std::vector<std::future<double>> fs;
      for (int i = start; i < std::min(grid, start + workers); ++i)
        fs.push_back(std::async(std::launch::async, row, i));
      for (int i = start; i < std::min(grid, start + workers); ++i)
        rows[static_cast<std::size_t>(i)] = fs[static_cast<std::size_t>(i - start)].get();
    }
  }
  RealSum total;
  for (double v : rows) total.add(v);
  return std::sqrt(total.value());
}

std::string error_scan_csv(const std::vector<HPoint>& points, double X) {
  std::ostringstream os;
  os << "x,y,X,N,err\n";
  char buf[160];
  for (const HPoint& z : points) {
    const std::int64_t n = count_orbit(z, X).total;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%lld,%.17g\n", z.x, z.y, X,
                  static_cast<long long>(n), static_cast<double>(n) - 3 * X);
    os << buf;
  }
  return os.str();
}

}  // namespace hl
