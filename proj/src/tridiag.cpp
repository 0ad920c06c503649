#include "tridiag.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace conelab {

namespace {

void require_shapes(const Tridiag& a, const Tridiag& b, const char* who) {
    if (a.diag.size() != b.diag.size() || a.off.size() != b.off.size())
        throw domain_error(std::string(who) + ": shape mismatch");
    if (a.off.size() + 1 != a.diag.size() || a.diag.empty())
        throw domain_error(std::string(who) + ": malformed tridiagonal");
}

// LDL^T factorization of a tridiagonal matrix, without pivoting; meant for
// positive definite inputs (Crank-Nicolson and shifted solves).
struct Factor {
    std::vector<double> d; // pivots
    std::vector<double> l; // subdiagonal multipliers
};

Factor factor(const Tridiag& a) {
    const int n = a.size();
    Factor f;
    f.d.resize(n);
    f.l.resize(n - 1);
    double prev = a.diag[0];
    if (prev == 0.0) prev = 1e-300;
    f.d[0] = prev;
    for (int i = 1; i < n; ++i) {
        const double li = a.off[i - 1] / prev;
        f.l[i - 1] = li;
        prev = a.diag[i] - li * a.off[i - 1];
        if (prev == 0.0) prev = 1e-300;
        f.d[i] = prev;
    }
    return f;
}

std::vector<double> solve(const Factor& f, std::vector<double> x) {
    const int n = static_cast<int>(f.d.size());
    for (int i = 1; i < n; ++i) x[i] -= f.l[i - 1] * x[i - 1];
    for (int i = 0; i < n; ++i) x[i] /= f.d[i];
    for (int i = n - 2; i >= 0; --i) x[i] -= f.l[i] * x[i + 1];
    return x;
}

} // namespace

Tridiag tridiag_combine(const Tridiag& a, double s, const Tridiag& b) {
    require_shapes(a, b, "tridiag_combine");
    Tridiag c = a;
    for (size_t i = 0; i < c.diag.size(); ++i) c.diag[i] += s * b.diag[i];
    for (size_t i = 0; i < c.off.size(); ++i) c.off[i] += s * b.off[i];
    return c;
}

std::vector<double> tridiag_apply(const Tridiag& a, const std::vector<double>& x) {
    const int n = a.size();
    if (static_cast<int>(x.size()) != n)
        throw domain_error("tridiag_apply: size mismatch");
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        double v = a.diag[i] * x[i];
        if (i > 0) v += a.off[i - 1] * x[i - 1];
        if (i + 1 < n) v += a.off[i] * x[i + 1];
        y[i] = v;
    }
    return y;
}

double tridiag_quadform(const Tridiag& a, const std::vector<double>& x,
                        const std::vector<double>& y) {
    const std::vector<double> ay = tridiag_apply(a, y);
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * ay[i];
    return s;
}

int sturm_count(const Tridiag& s, const Tridiag& b, double x) {
    require_shapes(s, b, "sturm_count");
    const int n = s.size();
    int count = 0;
    double prev = s.diag[0] - x * b.diag[0];
    if (prev == 0.0) prev = -1e-300;
    if (prev < 0.0) ++count;
    for (int i = 1; i < n; ++i) {
        const double e = s.off[i - 1] - x * b.off[i - 1];
        double d = (s.diag[i] - x * b.diag[i]) - e * e / prev;
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
        prev = d;
    }
    return count;
}

std::vector<double> pencil_smallest(const Tridiag& s, const Tridiag& b, int k,
                                    double rel_tol) {
    require_shapes(s, b, "pencil_smallest");
    if (k < 1 || k > s.size())
        throw domain_error("pencil_smallest: requested " + std::to_string(k) +
                           " eigenvalues of a " + std::to_string(s.size()) +
                           "-dimensional pencil");

    double lo = -1.0;
    for (int it = 0; sturm_count(s, b, lo) > 0; ++it) {
        if (it > 2100) throw numeric_error("pencil_smallest: no lower bound found");
        lo *= 2.0;
    }
    double hi = 1.0;
    for (int it = 0; sturm_count(s, b, hi) < k; ++it) {
        if (it > 2100) throw numeric_error("pencil_smallest: no upper bound found");
        hi *= 2.0;
    }

    std::vector<double> eigs(k);
    double floor_j = lo;
    for (int j = 1; j <= k; ++j) {
        double a = floor_j, c = hi;
        for (int it = 0; it < 200; ++it) {
            if (c - a <= rel_tol * std::max(1.0, std::fabs(a) + std::fabs(c))) break;
            const double mid = 0.5 * (a + c);
            if (sturm_count(s, b, mid) >= j) {
                c = mid;
            } else {
                a = mid;
            }
        }
        eigs[j - 1] = 0.5 * (a + c);
        floor_j = a;
    }
    return eigs;
}

std::vector<double> pencil_eigenvector(const Tridiag& s, const Tridiag& b,
                                       double lambda) {
    require_shapes(s, b, "pencil_eigenvector");
    const int n = s.size();
    // Shift slightly off the eigenvalue so the matrix stays factorable.
    const double sigma = lambda + 1e-9 * (std::fabs(lambda) + 1.0);
    const Tridiag shifted = tridiag_combine(s, -sigma, b);
    const Factor f = factor(shifted);

    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = (i % 2 == 0) ? 1.0 : 0.5;
    for (int iter = 0; iter < 6; ++iter) {
        std::vector<double> rhs = tridiag_apply(b, v);
        v = solve(f, rhs);
        const double nb = std::sqrt(tridiag_quadform(b, v, v));
        if (!(nb > 0.0) || !std::isfinite(nb))
            throw numeric_error("pencil_eigenvector: inverse iteration broke down");
        for (double& x : v) x /= nb;
    }
    if (v[0] < 0.0 || (v[0] == 0.0 && v[n - 1] < 0.0))
        for (double& x : v) x = -x;
    return v;
}

double crank_nicolson_decay(const Tridiag& s, const Tridiag& b,
                            const std::vector<double>& u0, double t, int steps) {
    require_shapes(s, b, "crank_nicolson_decay");
    if (static_cast<int>(u0.size()) != s.size())
        throw domain_error("crank_nicolson_decay: vector size mismatch");
    if (!(t > 0.0)) throw domain_error("crank_nicolson_decay: time must be > 0");
    if (steps < 1) throw domain_error("crank_nicolson_decay: steps must be >= 1");

    const double dt = t / steps;
    const Tridiag lhs = tridiag_combine(b, dt / 2.0, s);
    const Tridiag rhs_m = tridiag_combine(b, -dt / 2.0, s);
    const Factor f = factor(lhs);

    const double n0 = std::sqrt(tridiag_quadform(b, u0, u0));
    if (!(n0 > 0.0))
        throw domain_error("crank_nicolson_decay: initial state has zero mass norm");

    std::vector<double> u = u0;
    for (int j = 0; j < steps; ++j) u = solve(f, tridiag_apply(rhs_m, u));
    return std::sqrt(tridiag_quadform(b, u, u)) / n0;
}

} // namespace conelab
