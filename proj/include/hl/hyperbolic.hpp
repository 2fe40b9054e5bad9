#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hl {

struct HPoint {
  double x = 0;
  double y = 1;
};

/// A PSL2(Z) element, normalized so the first nonzero of (c, d, a) is positive.
struct GroupElement {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  static GroupElement normalized(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  std::int64_t abs_trace() const { return a + d < 0 ? -(a + d) : a + d; }
  bool operator==(const GroupElement&) const = default;
};

struct CountResult {
  std::int64_t total = 0;
  std::map<std::int64_t, std::int64_t> byAbsTrace;

  void add(std::int64_t abs_trace, std::int64_t n = 1);
  void merge(const CountResult& o);
  bool operator==(const CountResult&) const = default;
};

/// |z - w|^2 / (4 Im z Im w).
double u_dist(HPoint z, HPoint w);

HPoint mobius(const GroupElement& g, HPoint z);

/// 4 u(g z, z) + 2, evaluated in long double from the matrix entries.
long double orbit_radius(const GroupElement& g, HPoint z);

/// Relative slack used when deciding 4u + 2 <= X.
inline constexpr long double kRadiusTol = 1e-12L;

/// #{g in PSL2(Z) : 4 u(g z, z) + 2 <= X} with tallies by |trace|.
/// X < 2 is a domain error. Work is split over c-ranges across `workers` threads.
CountResult count_orbit(HPoint z, double X, int workers = 1);

/// Exhaustive scan over all unimodular matrices with entries in [-bound, bound].
CountResult count_orbit_naive(HPoint z, double X, std::int64_t bound);

/// Sorted values 4u(g z, z) + 2 <= X over the orbit, one per element.
std::vector<long double> orbit_radii(HPoint z, double X, int workers = 1);

/// #{g in Gamma_t mod +-1 : u(g z, z) <= x}.
std::int64_t m_sum(std::int64_t t, double x, HPoint z);

/// A unit-mass density on [1, 2] with its distribution function.
struct Weight {
  std::function<double(double)> density;
  std::function<double(double)> cdf;
};

Weight default_eta0();

/// sum_j (-1)^j binom(J, j) int_1^2 eta0(tau) N(z, X - j d tau) dtau, with the
/// tau-integral taken exactly between the jumps of N via the weight's CDF.
double smoothed_count(HPoint z, double X, double d, int J, const Weight& eta0 = default_eta0());

/// Same quantity by piecewise Gauss-Legendre quadrature of the density between
/// jump points; an independent check of smoothed_count.
double smoothed_count_quadrature(HPoint z, double X, double d, int J,
                                 const Weight& eta0 = default_eta0());

/// The smoothing operator applied to an arbitrary counting function.
double smoothed_transform(const std::function<double(double)>& N, double X, double d, int J,
                          const Weight& eta0 = default_eta0());

struct Rect {
  double x0, x1, y0, y1;
};

/// Whether the rectangle lies in the closed standard fundamental domain.
bool inside_fundamental_domain(const Rect& r);

/// Midpoint-rule estimate of (int_Omega (N(z, X) - 3X)^2 dx dy / y^2)^{1/2}.
double local_l2(const Rect& region, double X, int grid, int workers = 1);

/// CSV with header x,y,X,N,err.
std::string error_scan_csv(const std::vector<HPoint>& points, double X);

}  // namespace hl
