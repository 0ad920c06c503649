#pragma once

namespace conelab {

// Bessel function of the first kind J_nu(x) for real order nu >= 0,
// evaluated from integral representations by composite Simpson rule:
//
//   J_nu(x) = (1/pi) * I1 - (sin(nu*pi)/pi) * I2,
//   I1 = integral_0^pi cos(nu*t - x*sin t) dt,
//   I2 = integral_0^inf exp(-nu*t - x*sinh t) dt
//      = integral_0^1 s^{nu-1} exp(-x*(1/s - s)/2) ds   (s = e^{-t}),
//
// where I2 drops out at integer order. Intended range 0 <= x <= 50,
// 0 <= nu <= 10; absolute accuracy about 1e-9. The test suite checks this
// routine against an unrelated power-series implementation.
double bessel_j(double nu, double x);

// m-th positive zero j_{nu,m}, located by a sign-change scan above nu
// followed by bisection. Accurate to ~1e-9 (limited by bessel_j).
double bessel_zero(double nu, int m);

} // namespace conelab
