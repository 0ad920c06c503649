#include "smalleig.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace conelab {

std::array<double, 2> sym2_eigenvalues(double a11, double a12, double a22) {
    const double mid = 0.5 * (a11 + a22);
    const double rad = std::hypot(0.5 * (a11 - a22), a12);
    return {mid - rad, mid + rad};
}

std::array<double, 3> sym3_eigenvalues(double a11, double a12, double a13,
                                       double a22, double a23, double a33) {
    // Trigonometric solution of the characteristic cubic of a real
    // symmetric 3x3 matrix. Shift by the mean eigenvalue q, scale by p,
    // then the eigenvalues of B = (A - qI)/p are 2*cos of three angles
    // differing by 2*pi/3.
    const double q = (a11 + a22 + a33) / 3.0;
    const double b11 = a11 - q, b22 = a22 - q, b33 = a33 - q;
    const double p2 = b11 * b11 + b22 * b22 + b33 * b33 +
                      2.0 * (a12 * a12 + a13 * a13 + a23 * a23);
    if (p2 <= 0.0) {
        // Already diagonal with equal entries.
        return {q, q, q};
    }
    const double p = std::sqrt(p2 / 6.0);
    const double c11 = b11 / p, c22 = b22 / p, c33 = b33 / p;
    const double c12 = a12 / p, c13 = a13 / p, c23 = a23 / p;
    const double detB = c11 * (c22 * c33 - c23 * c23) -
                        c12 * (c12 * c33 - c23 * c13) +
                        c13 * (c12 * c23 - c22 * c13);
    double r = 0.5 * detB;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double two_pi_3 = 2.0 * 3.14159265358979323846 / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * two_pi_3);
    const double e2 = 3.0 * q - e1 - e3; // trace identity
    std::array<double, 3> out = {e1, e2, e3};
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> sym_eigenvalues(const double* a, int n) {
    switch (n) {
    case 1:
        return {a[0]};
    case 2: {
        const auto e = sym2_eigenvalues(a[0], a[1], a[3]);
        return {e[0], e[1]};
    }
    case 3: {
        const auto e = sym3_eigenvalues(a[0], a[1], a[2], a[4], a[5], a[8]);
        return {e[0], e[1], e[2]};
    }
    default:
        throw domain_error("sym_eigenvalues: order must be 1, 2 or 3");
    }
}

} // namespace conelab
