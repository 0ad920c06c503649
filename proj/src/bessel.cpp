#include "bessel.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace conelab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Composite Simpson rule with n panels (n even) for a callable f on [a, b].
template <typename F>
double simpson(F&& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double odd = 0.0, even = 0.0;
    for (int i = 1; i < n; i += 2) odd += f(a + i * h);
    for (int i = 2; i < n; i += 2) even += f(a + i * h);
    return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

} // namespace

double bessel_j(double nu, double x) {
    if (!(nu >= 0.0)) throw domain_error("bessel_j: order must be >= 0");
    if (!(x >= 0.0)) throw domain_error("bessel_j: argument must be >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

    // Oscillatory part. The integrand's derivatives scale like (nu + x)^k,
    // so the panel count grows once the argument gets large.
    const int n1 = (nu + x <= 20.0) ? 4096 : 8192;
    const double main_part =
        simpson([&](double t) { return std::cos(nu * t - x * std::sin(t)); },
                0.0, kPi, n1) /
        kPi;

    const double frac = nu - std::floor(nu + 0.5);
    if (std::fabs(frac) < 1e-12) return main_part; // integer order

    // Monotone tail, transformed to [0, 1]; the factor exp(-x/(2s)) crushes
    // the s^{nu-1} endpoint singularity, so the integrand extends by 0 at 0.
    auto tail = [&](double s) {
        if (s <= 0.0) return 0.0;
        const double e = -x * (1.0 / s - s) / 2.0;
        if (e < -745.0) return 0.0;
        return std::pow(s, nu - 1.0) * std::exp(e);
    };
    const double tail_part = simpson(tail, 0.0, 1.0, 4096) / kPi;
    return main_part - std::sin(nu * kPi) * tail_part;
}

double bessel_zero(double nu, int m) {
    if (!(nu >= 0.0)) throw domain_error("bessel_zero: order must be >= 0");
    if (m < 1) throw domain_error("bessel_zero: zero index must be >= 1");

    // All positive zeros of J_nu lie above nu; scan in fixed steps for sign
    // changes (consecutive zeros are > pi/2 apart, so 0.3 cannot skip one).
    double a = nu + 1e-3;
    double fa = bessel_j(nu, a);
    int found = 0;
    for (int step = 0; step < 4000; ++step) {
        const double b = a + 0.3;
        const double fb = bessel_j(nu, b);
        if ((fa < 0.0) != (fb < 0.0)) {
            ++found;
            if (found == m) {
                double lo = a, hi = b, flo = fa;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (hi - lo <= 1e-13 * mid) break;
                    const double fm = bessel_j(nu, mid);
                    if ((flo < 0.0) != (fm < 0.0)) {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                return 0.5 * (lo + hi);
            }
        }
        a = b;
        fa = fb;
    }
    throw numeric_error("bessel_zero: zero " + std::to_string(m) +
                        " of order " + std::to_string(nu) +
                        " not found below " + std::to_string(a));
}

} // namespace conelab
