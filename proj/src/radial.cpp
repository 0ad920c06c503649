#include "radial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bessel.hpp"
#include "errors.hpp"

namespace conelab {

namespace {

struct Elem {
    double ll = 0.0, rr = 0.0, lr = 0.0;
};

// int_a^b hat_i hat_j x dx on the element [a, b]; exact polynomials.
Elem weighted_mass_elem(double a, double h) {
    return {a * h / 3.0 + h * h / 12.0, a * h / 3.0 + h * h / 4.0,
            a * h / 6.0 + h * h / 12.0};
}

// int_a^b hat_i hat_j / x dx. The direct log expressions cancel badly on
// narrow elements (h << a), so those switch to alternating series in t = h/a.
// For the tip element a = 0 only the right-right entry is finite; it is only
// ever used when node 0 carries no degree of freedom.
Elem inv_x_elem(double a, double h) {
    if (a == 0.0) return {0.0, 0.5, 0.0};
    const double t = h / a;
    if (t > 0.5) {
        const double b = a + h;
        const double L = std::log1p(t);
        const double m1 = (b * b - a * a) / 2.0;
        return {(b * b * L - 2.0 * b * h + m1) / (h * h),
                (m1 - 2.0 * a * h + a * a * L) / (h * h),
                (-m1 + (a + b) * h - a * b * L) / (h * h)};
    }
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, p = 1.0;
    for (int k = 0; k < 80; ++k) {
        s1 += p / ((k + 1.0) * (k + 2.0) * (k + 3.0));
        s2 += p / (k + 3.0);
        s3 += p / ((k + 2.0) * (k + 3.0));
        p *= -t;
        if (std::fabs(p) < 1e-19) break;
    }
    return {2.0 * t * s1, t * s2, t * s3};
}

// int_a^b hat_i hat_j / x^2 dx, same series/closed-form split.
Elem inv_x2_elem(double a, double h) {
    if (a == 0.0) return {0.0, 1.0 / h, 0.0};
    const double t = h / a;
    if (t > 0.5) {
        const double b = a + h;
        const double L = std::log1p(t);
        return {(b * b / a - a - 2.0 * b * L) / (h * h),
                (b - a * a / b - 2.0 * a * L) / (h * h),
                ((a + b) * L - 2.0 * h) / (h * h)};
    }
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, p = 1.0;
    for (int k = 0; k < 80; ++k) {
        s1 += p / ((k + 2.0) * (k + 3.0));
        s2 += p * (k + 1.0) / (k + 3.0);
        s3 += p * (k + 1.0) / ((k + 2.0) * (k + 3.0));
        p *= -t;
        if (std::fabs(p) < 1e-19) break;
    }
    return {2.0 * t / a * s1, t / a * s2, t / a * s3};
}

std::vector<double> graded_mesh(int segments, double gamma) {
    if (segments < 4) throw domain_error("graded mesh needs at least 4 segments");
    if (!(gamma >= 1.0)) throw domain_error("mesh grading exponent must be >= 1");
    std::vector<double> x(segments + 1);
    for (int i = 0; i <= segments; ++i)
        x[i] = std::pow(static_cast<double>(i) / segments, gamma);
    x[segments] = 1.0;
    return x;
}

// Assembles sum over elements of elem(a, h) scaled by `weight` into a
// tridiagonal form over the active nodes first_node .. M-1 (node M is the
// Dirichlet end, node 0 participates only when first_node == 0).
template <typename ElemFn>
Tridiag assemble(const std::vector<double>& mesh, int first_node, double weight,
                 ElemFn&& elem) {
    const int m = static_cast<int>(mesh.size()) - 1;
    const int ndof = m - first_node;
    Tridiag out;
    out.diag.assign(ndof, 0.0);
    out.off.assign(ndof - 1, 0.0);
    for (int e = 0; e < m; ++e) {
        const double a = mesh[e], h = mesh[e + 1] - mesh[e];
        const Elem el = elem(a, h);
        const int dl = e - first_node, dr = dl + 1;
        if (dl >= 0) out.diag[dl] += weight * el.ll;
        if (dr < ndof) out.diag[dr] += weight * el.rr;
        if (dl >= 0 && dr < ndof) out.off[dl] += weight * el.lr;
    }
    return out;
}

Elem stiffness_x_elem(double a, double h) {
    const double v = (a + h / 2.0) / h;
    return {v, v, -v};
}

Elem stiffness_plain_elem(double, double h) { return {1.0 / h, 1.0 / h, -1.0 / h}; }

Elem mass_plain_elem(double, double h) { return {h / 3.0, h / 3.0, h / 6.0}; }

} // namespace

RadialModel build_radial_model(double nu, double epsilon, int segments, double gamma) {
    if (!(nu >= 0.0)) throw domain_error("radial model: nu must be >= 0");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw domain_error("radial model: interpolation weight must lie in [0, 1)");
    const double c0 = nu * nu - epsilon / 4.0;
    if (c0 < 0.0)
        throw domain_error(
            "radial model: tip coefficient nu^2 - eps/4 is negative; the "
            "quadratic form is unbounded below on this extension");

    RadialModel model;
    model.nu = nu;
    model.epsilon = epsilon;
    model.gamma = gamma;
    model.segments = segments;
    model.mesh = graded_mesh(segments, gamma);
    model.tip_dof = (c0 == 0.0);

    const int first = model.tip_dof ? 0 : 1;
    model.stiffness = assemble(model.mesh, first, 1.0 - epsilon, stiffness_x_elem);
    model.mass = assemble(model.mesh, first, 1.0, weighted_mass_elem);
    if (c0 != 0.0) {
        const Tridiag pot = assemble(model.mesh, first, c0, inv_x_elem);
        model.stiffness = tridiag_combine(model.stiffness, 1.0, pot);
    }
    return model;
}

std::vector<double> friedrichs_eigenvalues(const RadialModel& model, int k) {
    const int ndof = model.stiffness.size();
    if (k < 1 || k > ndof)
        throw domain_error("friedrichs_eigenvalues: k must lie in [1, M-1]");
    return pencil_smallest(model.stiffness, model.mass, k);
}

SchrodingerForms plain_hat_forms(int segments, double gamma) {
    SchrodingerForms f;
    f.mesh = graded_mesh(segments, gamma);
    f.kinetic = assemble(f.mesh, 1, 1.0, stiffness_plain_elem);
    f.inv_sq = assemble(f.mesh, 1, 1.0, inv_x2_elem);
    f.mass = assemble(f.mesh, 1, 1.0, mass_plain_elem);
    return f;
}

Tridiag schrodinger_stiffness(const SchrodingerForms& forms, double eps, double nu2) {
    Tridiag s = forms.kinetic;
    for (double& v : s.diag) v *= 1.0 - eps;
    for (double& v : s.off) v *= 1.0 - eps;
    return tridiag_combine(s, nu2 - 0.25, forms.inv_sq);
}

double ground_state(const Tridiag& s, const Tridiag& b) {
    return pencil_smallest(s, b, 1)[0];
}

std::pair<Tridiag, Tridiag> hardy_forms(int n, int segments, double gamma) {
    if (n < 2) throw domain_error("hardy_forms: dimension must be >= 2");
    const std::vector<double> mesh = graded_mesh(segments, gamma);

    // Binomial row for (a + u)^{n-2}.
    std::vector<double> binom(n - 1, 1.0);
    for (int j = 1; j <= n - 2; ++j)
        binom[j] = binom[j - 1] * (n - 1 - j) / j;

    auto stiff = [n](double a, double h) -> Elem {
        const double b = a + h;
        const double mom = (std::pow(b, n + 1) - std::pow(a, n + 1)) / (n + 1);
        return {mom / (h * h), mom / (h * h), -mom / (h * h)};
    };
    auto mass = [n, &binom](double a, double h) -> Elem {
        Elem el;
        double ap = std::pow(a, n - 2); // a^{n-2-j}, stepped down by division
        double hp = h;                  // h^{j+1}
        for (int j = 0; j <= n - 2; ++j) {
            const double c = binom[j] * ap * hp;
            el.ll += c * 2.0 / ((j + 1.0) * (j + 2.0) * (j + 3.0));
            el.rr += c / (j + 3.0);
            el.lr += c / ((j + 2.0) * (j + 3.0));
            if (j < n - 2) {
                ap = (a == 0.0) ? (j + 1 == n - 2 ? 1.0 : 0.0) : ap / a;
                hp *= h;
            }
        }
        return el;
    };
    return {assemble(mesh, 1, 1.0, stiff), assemble(mesh, 1, 1.0, mass)};
}

double hardy_quotient(int n, int segments, double gamma) {
    auto [stiff, mass] = hardy_forms(n, segments, gamma);
    const std::vector<double> mesh = graded_mesh(segments, gamma);

    // Keep the interior nodes whose hats are supported inside [0, 1/2].
    int keep = 0;
    while (keep + 2 < static_cast<int>(mesh.size()) && mesh[keep + 2] <= 0.5) ++keep;
    if (keep < 1) throw domain_error("hardy_quotient: mesh too coarse for the tip window");

    Tridiag s_sub, m_sub;
    s_sub.diag.assign(stiff.diag.begin(), stiff.diag.begin() + keep);
    s_sub.off.assign(stiff.off.begin(), stiff.off.begin() + (keep - 1));
    m_sub.diag.assign(mass.diag.begin(), mass.diag.begin() + keep);
    m_sub.off.assign(mass.off.begin(), mass.off.begin() + (keep - 1));
    return 1.0 / pencil_smallest(s_sub, m_sub, 1)[0];
}

GardingReport garding_constants(const Tridiag& s_full, const Tridiag& gradient,
                                const Tridiag& mass, int kernel_dim) {
    if (kernel_dim < 0 || kernel_dim >= s_full.size())
        throw domain_error("garding_constants: kernel dimension out of range");
    auto margin = [&](double eps) {
        const Tridiag s = tridiag_combine(s_full, -eps, gradient);
        return pencil_smallest(s, mass, kernel_dim + 1).back();
    };
    const double base = margin(0.0);
    if (!(base > 0.0)) return {false, 0.0, base};

    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (margin(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {true, lo, margin(lo)};
}

double min_eps_margin(double C, int n) {
    if (n < 2) throw domain_error("min_eps_margin: dimension must be >= 2");
    const double threshold = -0.25 * (n - 1.0) * (n - 1.0) + 0.25;
    if (!(C > threshold))
        throw domain_error(
            "min_eps_margin: margin C must exceed -((n-1)/2)^2 + 1/4 = " +
            std::to_string(threshold));
    return std::min(1.0 - 1e-6, 4.0 * C + (n - 1.0) * (n - 1.0));
}

HeatReport heat_decay_check(const Tridiag& s, const Tridiag& b, int kernel_dim,
                            const std::vector<double>& times, int cn_steps) {
    if (kernel_dim < 0 || kernel_dim >= s.size())
        throw domain_error("heat_decay_check: kernel dimension out of range");
    for (double t : times)
        if (!(t > 0.0)) throw domain_error("heat_decay_check: times must be > 0");

    HeatReport rep;
    const std::vector<double> eigs = pencil_smallest(s, b, kernel_dim + 1);
    rep.lambda1 = eigs.back();
    if (!(rep.lambda1 > 0.0))
        throw domain_error("heat_decay_check: no spectral gap above the kernel");

    rep.times = times;
    rep.norms.reserve(times.size());
    rep.bounds.reserve(times.size());
    for (double t : times) {
        // Spectral mapping: on the kernel complement the semigroup norm is
        // exactly exp(-t * lambda1), which is also the decay bound.
        rep.norms.push_back(std::exp(-t * rep.lambda1));
        rep.bounds.push_back(std::exp(-t * rep.lambda1));
    }

    rep.pass = true;
    const std::vector<double> v1 = pencil_eigenvector(s, b, rep.lambda1);
    const double rayleigh = tridiag_quadform(s, v1, v1) / tridiag_quadform(b, v1, v1);
    if (std::fabs(rayleigh - rep.lambda1) > 1e-9 * (1.0 + std::fabs(rep.lambda1))) {
        rep.pass = false;
        rep.failure = "eigenvalue cross-check: bisection and Rayleigh quotient disagree";
    }

    rep.t_star = 1.0 / rep.lambda1;
    rep.cn_expected = std::exp(-1.0);
    rep.cn_measured = crank_nicolson_decay(s, b, v1, rep.t_star, cn_steps);
    rep.cn_rel_error = std::fabs(rep.cn_measured - rep.cn_expected) / rep.cn_expected;
    if (rep.pass && rep.cn_rel_error > 0.01) {
        rep.pass = false;
        rep.failure = "time-stepping decay mismatch: Crank-Nicolson at t* = 1/lambda1 "
                      "deviates from exp(-1) by more than 1%";
    }
    return rep;
}

HeatReport heat_decay_check(const RadialModel& model, const std::vector<double>& times,
                            int cn_steps) {
    return heat_decay_check(model.stiffness, model.mass, 0, times, cn_steps);
}

ConeSpectrumReport model_cone_spectrum(const CrossSectionSpectrum& cs, int modes,
                                       int per_mode, int segments, double gamma) {
    cs.validate();
    if (modes < 1 || modes > static_cast<int>(cs.laplace.size()))
        throw domain_error("model_cone_spectrum: modes exceeds the tangential list");
    if (per_mode < 1)
        throw domain_error("model_cone_spectrum: per-mode count must be >= 1");

    ConeSpectrumReport rep;
    for (int i = 0; i < modes; ++i) {
        const double lambda = cs.laplace[i];
        const double nu = nu_root(lambda, cs.n);
        const RadialModel model = build_radial_model(nu, 0.0, segments, gamma);
        const std::vector<double> eigs = friedrichs_eigenvalues(model, per_mode);
        for (int m = 1; m <= per_mode; ++m) {
            ConeModeRow row;
            row.lambda = lambda;
            row.nu = nu;
            row.m = m;
            row.eigenvalue = eigs[m - 1];
            const double z = bessel_zero(nu, m);
            row.oracle = z * z;
            row.rel_error = std::fabs(row.eigenvalue - row.oracle) / row.oracle;
            rep.rows.push_back(row);
        }
    }
    std::sort(rep.rows.begin(), rep.rows.end(), [](const ConeModeRow& a, const ConeModeRow& b) {
        if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.m < b.m;
    });
    rep.lambda1 = rep.rows.front().eigenvalue;
    return rep;
}

} // namespace conelab
