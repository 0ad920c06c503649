#pragma once

#include <array>
#include <vector>

namespace conelab {

// Closed-form eigenvalues of small dense symmetric matrices, sorted
// ascending. `a` is row-major n*n with n in {1,2,3}; only the upper
// triangle is read. No iteration is involved: 2x2 uses the quadratic
// formula in a cancellation-safe arrangement, 3x3 the trigonometric
// solution of the characteristic cubic.
std::vector<double> sym_eigenvalues(const double* a, int n);

// Convenience wrappers.
std::array<double, 2> sym2_eigenvalues(double a11, double a12, double a22);
std::array<double, 3> sym3_eigenvalues(double a11, double a12, double a13,
                                       double a22, double a23, double a33);

} // namespace conelab
