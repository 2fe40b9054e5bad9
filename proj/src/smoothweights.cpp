#include "hl/smoothweights.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "hl/arith.hpp"

namespace hl {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 61>;

constexpr double kTol = 1e-14;

double sigma(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }

double eta0_raw(double tau) {
  if (tau <= 1 || tau >= 2) return 0.0;
  return std::exp(-1.0 / ((tau - 1) * (2 - tau)));
}

double eta0_raw_integral(double a, double b) {
  if (b <= a) return 0.0;
  return Kronrod::integrate(eta0_raw, a, b, 15, kTol);
}

double eta0_mass() {
  static const double mass = eta0_raw_integral(1.0, 1.5) * 2;
  return mass;
}

}  // namespace

double smooth_step(double t) {
  if (t <= 0) return 0.0;
  if (t >= 1) return 1.0;
  const double a = sigma(t), b = sigma(1 - t);
  return a / (a + b);
}

double psi0(double y) { return smooth_step(2 * y - 1); }

double f_beta1(double y, double beta1, double X) {
  if (!(beta1 > 0) || !(X > 1)) throw DomainError("f_beta1: need beta1 > 0 and X > 1");
  const double delta = std::pow(X, -beta1);
  if (!(delta < 0.25)) throw DomainError("f_beta1: need X^-beta1 < 1/4");
  return smooth_step((y - delta) / delta) * smooth_step((1 - delta - y) / delta);
}

double gamma0(double y) { return smooth_step(1 - std::fabs(y)); }

double phi0(double x) {
  if (!(x > 0)) throw DomainError("phi0: x must be positive");
  return gamma0(std::log(x));
}

double eta0(double tau) { return eta0_raw(tau) / eta0_mass(); }

double eta0_cdf(double tau) {
  if (tau <= 1) return 0.0;
  if (tau >= 2) return 1.0;
  // Use the symmetry about 3/2 so the integral runs over the shorter side.
  if (tau > 1.5) return 1.0 - eta0_raw_integral(tau, 2.0) / eta0_mass();
  return eta0_raw_integral(1.0, tau) / eta0_mass();
}

Complex mellin_phi0(double v) {
  // gamma0 is even, so the transform is real: 2 * int_0^1 gamma0(u) cos(v u) du.
  auto f = [v](double u) { return gamma0(u) * std::cos(v * u); };
  const double re = 2 * Kronrod::integrate(f, 0.0, 1.0, 20, kTol);
  return {re, 0.0};
}

}  // namespace hl
