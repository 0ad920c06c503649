#pragma once

#include <vector>

namespace conelab {

// Symmetric tridiagonal matrix: diag has size n, off size n-1.
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;

    int size() const { return static_cast<int>(diag.size()); }
};

// A + s * B entrywise (shapes must agree).
Tridiag tridiag_combine(const Tridiag& a, double s, const Tridiag& b);

// y = A x.
std::vector<double> tridiag_apply(const Tridiag& a, const std::vector<double>& x);

// x^T A y.
double tridiag_quadform(const Tridiag& a, const std::vector<double>& x,
                        const std::vector<double>& y);

// Number of generalized eigenvalues of (S, B) strictly below x, via the
// inertia of the LDL^T elimination of S - x*B (B positive definite).
int sturm_count(const Tridiag& s, const Tridiag& b, double x);

// k smallest generalized eigenvalues of (S, B), ascending, by Sturm-count
// bisection refined to relative width rel_tol.
std::vector<double> pencil_smallest(const Tridiag& s, const Tridiag& b, int k,
                                    double rel_tol = 1e-12);

// B-normalized eigenvector for a previously computed generalized eigenvalue,
// via shifted inverse iteration.
std::vector<double> pencil_eigenvector(const Tridiag& s, const Tridiag& b,
                                       double lambda);

// Crank-Nicolson time stepping of B u' = -S u from u0 over [0, t] in the
// given number of steps; returns the ratio of final to initial B-norm.
double crank_nicolson_decay(const Tridiag& s, const Tridiag& b,
                            const std::vector<double>& u0, double t, int steps);

} // namespace conelab
