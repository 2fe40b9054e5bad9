#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "hl/arith.hpp"
#include "hl/numeric.hpp"

namespace hl {

struct AnalyticContext {
  double X = 0;
  double d = 0;
  double tau = 1;
  int J = 1;
  std::vector<std::int64_t> grid;  // a_1 .. a_{I+1}
  double delta = 0.01;
  double delta0 = 0.005;
  double alpha = 0.01;
  double beta1 = 0.01;

  /// a_i with the 1-based index used by the region definitions.
  std::int64_t a(int i) const { return grid.at(static_cast<std::size_t>(i - 1)); }
  int intervals() const { return static_cast<int>(grid.size()) - 1; }
};

/// 3 = a_1 < ... < a_{I+1} with a_{i+1} <= 3a_i/2,
/// 3 + sqrt(X+2) - a_i <= 2(3 + sqrt(X+2) - a_{i+1}), and a_{I+1} in
/// [1 + sqrt(X+2), 2 + sqrt(X+2)).
std::vector<std::int64_t> default_grid(double X);
bool grid_axioms_hold(const std::vector<std::int64_t>& grid, double X);

/// Validates X > 4, X^{2/3} <= d <= X^{99/100}, 1 <= tau <= 2, J >= 1 and
/// builds the default grid.
AnalyticContext make_context(double X, double d, double tau, int J, double delta = 0.01,
                             double delta0 = 0.005, double alpha = 0.01, double beta1 = 0.01);

template <class Real>
struct AB {
  Real A;
  Real B;
};

/// A = sqrt((1+S^2)(1+T^2)) - ST, B = sqrt((1+S^2)(1+T^2)) + ST.
template <class Real>
AB<Real> ab_funcs_t(const Real& S, const Real& T) {
  using std::sqrt;
  const Real root = sqrt((1 + S * S) * (1 + T * T));
  return {root - S * T, root + S * T};
}

/// A(S, T) - 1 in the cancellation-free form (S-T)^2 / (sqrt(...) + ST + 1).
template <class Real>
Real a_minus_one_t(const Real& S, const Real& T) {
  using std::sqrt;
  const Real root = sqrt((1 + S * S) * (1 + T * T));
  return (S - T) * (S - T) / (root + S * T + 1);
}

/// sqrt((X - j d tau - 2)/(t^2 - 4) - 1); throws on a negative radicand.
template <class Real>
Real s0_t(const Real& X, const Real& d, const Real& tau, int j, std::int64_t t) {
  using std::sqrt;
  if (t <= 2) throw DomainError("S0: t must exceed 2");
  const Real r = (X - j * d * tau - 2) / Real(t * t - 4) - 1;
  if (r < 0) throw DomainError("S0: negative radicand");
  return sqrt(r);
}

template <class Real>
Real f_ratio_t(std::int64_t t1, std::int64_t t2, std::int64_t f) {
  using std::sqrt;
  using std::abs;
  return abs(Real(f)) / (sqrt(Real(t1 * t1 - 4)) * sqrt(Real(t2 * t2 - 4)));
}

/// A_X evaluated literally.
template <class Real>
Real amplitude_ax_t(const Real& X, std::int64_t t1, std::int64_t t2) {
  using std::sqrt;
  using std::pow;
  const Real x1 = t1, x2 = t2;
  if (t1 <= 2 || t2 <= 2 || x1 * x1 >= X || x2 * x2 >= X)
    throw DomainError("amplitude_ax: need 2 < t1, t2 < sqrt(X)");
  const Real r1 = sqrt(X - x1 * x1), r2 = sqrt(X - x2 * x2);
  const Real inner = sqrt(2 * X / (x1 * x2)) / (r2 / x2 + r1 / x1 * ((X + r1 * r2) / (x1 * x2)));
  return r1 * X / (x1 * 3 * x1 * x1) * inner * inner * inner;
}

/// B_X evaluated literally; t1 = t2 is a domain error.
template <class Real>
Real amplitude_bx_t(const Real& X, std::int64_t t1, std::int64_t t2) {
  using std::sqrt;
  using std::abs;
  const Real x1 = t1, x2 = t2;
  if (t1 == t2) throw DomainError("amplitude_bx: t1 = t2");
  if (t1 <= 2 || t2 <= 2 || x1 * x1 >= X || x2 * x2 >= X)
    throw DomainError("amplitude_bx: need 2 < t1, t2 < sqrt(X)");
  const Real r1 = sqrt(X - x1 * x1), r2 = sqrt(X - x2 * x2);
  const Real inner = sqrt(2 * x1 * x2) * (r1 + r2) / (abs(x1 * x1 - x2 * x2) * sqrt(X));
  return X * r1 / 3 * inner * inner * inner;
}

// Double-precision entry points; internally evaluated in long double.

AB<double> ab_funcs(double S, double T);
double a_minus_one(double S, double T);

struct STPoint {
  double S0;
  double T0;
  double F;
};

/// (S0(j1, t1), T0(j2, t2), F(t1, t2, f)).
STPoint s0t0f(const AnalyticContext& ctx, int j1, int j2, std::int64_t t1, std::int64_t t2,
              std::int64_t f);

/// sqrt((B - F)(A + F)) / (T0 + S0 F); requires F <= B.
double y1(const STPoint& p);
/// sqrt((B + F)(A - F)) / |T0 - S0 F|; requires F <= A and T0 != S0 F.
double y2(const STPoint& p);

double amplitude_ax(double X, std::int64_t t1, std::int64_t t2);
double amplitude_bx(double X, std::int64_t t1, std::int64_t t2);
/// sgn(t1 - t2) B_X psi0(|t1 - t2| / X^{1/2 - alpha}); 0 where the cutoff vanishes.
double amplitude_cx(double X, std::int64_t t1, std::int64_t t2, double alpha);

enum class Region { U, V, W };

/// Membership of (t1, t2, f) in U, V or W for grid interval i (1-based).
/// Returns false when S0 or T0 is undefined.
bool region_member(const AnalyticContext& ctx, int i, int j1, int j2, std::int64_t t1,
                   std::int64_t t2, std::int64_t f, Region which);

struct CShifts {
  double C1;
  double C2;
};

/// Domain error when S0/T0 is undefined or a_i^2 >= X.
CShifts c_shifts(const AnalyticContext& ctx, int i, int j1, int j2, std::int64_t t1,
                 std::int64_t t2);

/// int_0^inf e(yY) y^{3/2} psi0(X^b1 y)(1 - psi0(y + C)) dy by panelled
/// Gauss-Kronrod quadrature.
Complex oscillatory_h(double beta1, double C, double Y, double X);

/// Phi(S0, w): pluggable; only the cubic small-argument model is provided.
using PhiModel = std::function<double(double S0, double w)>;
double phi_cubic_model(double S0, double w);

}  // namespace hl
