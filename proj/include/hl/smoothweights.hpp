#pragma once

#include "hl/numeric.hpp"

namespace hl {

/// Smooth step: 0 for t <= 0, 1 for t >= 1, s(t) + s(1 - t) = 1.
double smooth_step(double t);

/// 0 for y <= 1/2, 1 for y >= 1.
double psi0(double y);

/// 0 outside [X^-b, 1 - X^-b], 1 on [2 X^-b, 1 - 2 X^-b]. Requires X^-b < 1/4.
double f_beta1(double y, double beta1, double X);

/// Even, supported in [-1, 1], and gamma0(y) + gamma0(1 - y) = 1 on [0, 1].
double gamma0(double y);

/// gamma0(log x); throws DomainError for x <= 0.
double phi0(double x);

/// exp(-1/((t-1)(2-t))) on (1, 2), scaled to unit mass.
double eta0(double tau);

/// Integral of eta0 over [1, tau].
double eta0_cdf(double tau);

/// Mellin transform of phi0 at s = i v, i.e. the integral of gamma0(u) e^{i v u}
/// over [-1, 1].
Complex mellin_phi0(double v);

}  // namespace hl
