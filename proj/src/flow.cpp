#include "flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "rng.hpp"

namespace conelab {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> diff(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> d(a.size());
    for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

// Column j of a row-major m x m matrix.
std::vector<double> column(const std::vector<double>& mat, int m, int j) {
    std::vector<double> c(m);
    for (int i = 0; i < m; ++i) c[i] = mat[i * m + j];
    return c;
}

std::vector<double> matvec(const std::vector<double>& mat, int m,
                           const std::vector<double>& x) {
    std::vector<double> y(m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) y[i] += mat[i * m + j] * x[j];
    return y;
}

std::vector<double> mat_t_vec(const std::vector<double>& mat, int m,
                              const std::vector<double>& x) {
    std::vector<double> y(m, 0.0);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) y[j] += mat[i * m + j] * x[i];
    return y;
}

// Orthonormalizes the given columns in place (modified Gram-Schmidt, two
// passes) and packs them as the columns of a row-major m x m matrix.
std::vector<double> pack_orthonormal(std::vector<std::vector<double>> cols, int m) {
    const int n = static_cast<int>(cols.size());
    for (int j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) {
                const double p = dot(cols[i], cols[j]);
                for (int r = 0; r < m; ++r) cols[j][r] -= p * cols[i][r];
            }
        const double nj = nrm2(cols[j]);
        if (!(nj > 1e-12))
            throw numeric_error("frame construction: degenerate column");
        for (int r = 0; r < m; ++r) cols[j][r] /= nj;
    }
    std::vector<double> f(m * m, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) f[i * m + j] = cols[j][i];
    return f;
}

std::vector<double> random_orthogonal(Rng& rng, int m) {
    std::vector<std::vector<double>> cols(m, std::vector<double>(m));
    for (auto& c : cols)
        for (double& x : c) x = rng.gauss();
    return pack_orthonormal(std::move(cols), m);
}

std::vector<double> random_unit(Rng& rng, int m) {
    std::vector<double> v(m);
    for (double& x : v) x = rng.gauss();
    const double n = nrm2(v);
    for (double& x : v) x /= n;
    return v;
}

// Solves the small dense system J x = r by Gaussian elimination with partial
// pivoting (dimension d <= 3 in practice).
std::vector<double> solve_small(std::vector<double> j, std::vector<double> r, int d) {
    for (int k = 0; k < d; ++k) {
        int piv = k;
        for (int i = k + 1; i < d; ++i)
            if (std::fabs(j[i * d + k]) > std::fabs(j[piv * d + k])) piv = i;
        if (std::fabs(j[piv * d + k]) < 1e-14)
            throw numeric_error("projection: singular tangency Jacobian");
        if (piv != k) {
            for (int col = 0; col < d; ++col) std::swap(j[k * d + col], j[piv * d + col]);
            std::swap(r[k], r[piv]);
        }
        for (int i = k + 1; i < d; ++i) {
            const double f = j[i * d + k] / j[k * d + k];
            for (int col = k; col < d; ++col) j[i * d + col] -= f * j[k * d + col];
            r[i] -= f * r[k];
        }
    }
    std::vector<double> x(d);
    for (int i = d - 1; i >= 0; --i) {
        double s = r[i];
        for (int col = i + 1; col < d; ++col) s -= j[i * d + col] * x[col];
        x[i] = s / j[i * d + i];
    }
    return x;
}

// Tangent columns t_l(y) = k_l + sum_j E_j (S_j y)_l of the tier B chart.
std::vector<std::vector<double>> chart_tangents(const SurrogateSystem& sys,
                                                const std::vector<double>& y) {
    const int m = sys.m, d = sys.d;
    std::vector<std::vector<double>> t(d, std::vector<double>(m, 0.0));
    for (int l = 0; l < d; ++l) {
        for (int i = 0; i < m; ++i) t[l][i] = sys.frame[i * m + l];
        for (int j = 0; j < m - d; ++j) {
            double sy = 0.0;
            for (int p = 0; p < d; ++p) sy += sys.chart_s[j * d * d + l * d + p] * y[p];
            for (int i = 0; i < m; ++i) t[l][i] += sys.frame[i * m + (d + j)] * sy;
        }
    }
    return t;
}

SurrogateSystem make_common(char tier, double alpha, double c_tilde, std::uint64_t seed) {
    if (!(alpha > 0.0)) throw domain_error("surrogate: spectral gap must be > 0");
    if (!(c_tilde > 0.0)) throw domain_error("surrogate: quadratic bound must be > 0");
    SurrogateSystem sys;
    sys.tier = tier;
    sys.alpha = alpha;
    sys.seed = seed;
    sys.h0.assign(sys.m, 0.0);
    sys.evals = {0.0, 0.0, alpha, 2.0 * alpha, 3.0 * alpha, 4.0 * alpha};

    Rng rng(seed);
    sys.frame = random_orthogonal(rng, sys.m);
    sys.q_u = random_unit(rng, sys.m);
    sys.q_rot = random_orthogonal(rng, sys.m);
    sys.q_scale = c_tilde;
    return sys;
}

} // namespace

std::vector<double> quadratic_q(const SurrogateSystem& sys, const std::vector<double>& w) {
    const double a = sys.q_scale * dot(sys.q_u, w);
    std::vector<double> out = matvec(sys.q_rot, sys.m, w);
    for (double& x : out) x *= a;
    return out;
}

std::vector<double> section_point(const SurrogateSystem& sys, const std::vector<double>& y) {
    const int m = sys.m, d = sys.d;
    std::vector<double> p = sys.h0;
    for (int l = 0; l < d; ++l)
        for (int i = 0; i < m; ++i) p[i] += sys.frame[i * m + l] * y[l];
    if (sys.tier == 'B') {
        for (int j = 0; j < m - d; ++j) {
            double psi = 0.0;
            for (int l = 0; l < d; ++l)
                for (int p2 = 0; p2 < d; ++p2)
                    psi += 0.5 * y[l] * sys.chart_s[j * d * d + l * d + p2] * y[p2];
            for (int i = 0; i < m; ++i) p[i] += sys.frame[i * m + (d + j)] * psi;
        }
    }
    return p;
}

SurrogateSystem make_tier_a(double alpha, double c_tilde, std::uint64_t seed) {
    SurrogateSystem sys = make_common('A', alpha, c_tilde, seed);
    sys.c = 1.0;               // exact: orthogonal projection onto a plane
    sys.c_tilde = c_tilde;     // exact: sup |Q(w)|/|w|^2 is q_scale by design
    sys.c_tilde_sampled = c_tilde;
    return sys;
}

SurrogateSystem make_tier_b(double alpha, double c_tilde, std::uint64_t seed) {
    SurrogateSystem sys = make_common('B', alpha, c_tilde, seed);
    const int m = sys.m, d = sys.d;

    Rng chart_rng(seed ^ 0x9E3779B97F4A7C15ull);
    const double sigma = 0.35;
    sys.chart_s.assign((m - d) * d * d, 0.0);
    for (int j = 0; j < m - d; ++j)
        for (int l = 0; l < d; ++l)
            for (int p = l; p < d; ++p) {
                const double v = sigma * chart_rng.gauss();
                sys.chart_s[j * d * d + l * d + p] = v;
                sys.chart_s[j * d * d + p * d + l] = v;
            }

    // Certify the quadratic bound: sampled supremum of |Q(w)| over the unit
    // sphere, polished by projected gradient ascent, inflated by 5%, and
    // validated against a fresh sample.
    Rng cert_rng(seed ^ 0xC2B2AE3D27D4EB4Full);
    double best = 0.0;
    std::vector<double> best_w;
    for (int s = 0; s < 10000; ++s) {
        std::vector<double> w = random_unit(cert_rng, m);
        const double v = nrm2(quadratic_q(sys, w));
        if (v > best) {
            best = v;
            best_w = w;
        }
    }
    for (int it = 0; it < 60; ++it) {
        std::vector<double> grad(m, 0.0);
        const double f0 = nrm2(quadratic_q(sys, best_w));
        for (int i = 0; i < m; ++i) {
            std::vector<double> w = best_w;
            w[i] += 1e-6;
            const double n = nrm2(w);
            for (double& x : w) x /= n;
            grad[i] = (nrm2(quadratic_q(sys, w)) - f0) / 1e-6;
        }
        std::vector<double> w = best_w;
        for (int i = 0; i < m; ++i) w[i] += 0.2 * grad[i];
        const double n = nrm2(w);
        for (double& x : w) x /= n;
        const double v = nrm2(quadratic_q(sys, w));
        if (v > best) {
            best = v;
            best_w = w;
        }
    }
    sys.c_tilde_sampled = best;
    sys.c_tilde = 1.05 * best;
    for (int s = 0; s < 10000; ++s) {
        const std::vector<double> w = random_unit(cert_rng, m);
        if (nrm2(quadratic_q(sys, w)) > sys.c_tilde * (1.0 + 1e-12))
            throw internal_error("surrogate: quadratic certificate failed validation");
    }

    // Certify the projection constant against the declared cap 1.2: sampled
    // Lipschitz ratios of the Newton projection over nearby pairs, inflated
    // by 5%.
    sys.c = 1.2;
    Rng pair_rng(seed ^ 0xA0761D6478BD642Full);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
        std::vector<double> y(d), y2(d);
        for (double& v : y) v = 0.05 * pair_rng.gauss();
        for (int l = 0; l < d; ++l) y2[l] = y[l] + 0.02 * pair_rng.gauss();
        std::vector<double> g = section_point(sys, y);
        std::vector<double> g2 = section_point(sys, y2);
        for (int i = 0; i < m; ++i) {
            g[i] += 0.01 * pair_rng.gauss();
            g2[i] += 0.01 * pair_rng.gauss();
        }
        const double den = nrm2(diff(g, g2));
        if (den < 1e-8) continue;
        const Projection p1 = project_to_manifold(sys, g);
        const Projection p2 = project_to_manifold(sys, g2);
        worst = std::max(worst, nrm2(diff(p1.point, p2.point)) / den);
    }
    sys.c_sampled = worst;
    if (1.05 * worst > sys.c)
        throw internal_error(
            "surrogate: sampled projection ratio " + std::to_string(worst) +
            " breaks the declared constant 1.2");
    return sys;
}

Projection project_to_manifold(const SurrogateSystem& sys, const std::vector<double>& g) {
    const int m = sys.m, d = sys.d;
    if (static_cast<int>(g.size()) != m)
        throw domain_error("projection: ambient dimension mismatch");

    Projection pr;
    const std::vector<double> g0 = diff(g, sys.h0);
    pr.y.assign(d, 0.0);
    for (int l = 0; l < d; ++l) pr.y[l] = dot(column(sys.frame, m, l), g0);

    if (sys.tier == 'A') {
        pr.point = section_point(sys, pr.y);
        const std::vector<double> res = diff(g, pr.point);
        for (int l = 0; l < d; ++l)
            pr.orth_residual = std::max(pr.orth_residual,
                                        std::fabs(dot(column(sys.frame, m, l), res)));
        return pr;
    }

    for (int it = 0; it < 100; ++it) {
        pr.point = section_point(sys, pr.y);
        const std::vector<double> res = diff(g, pr.point);
        const std::vector<std::vector<double>> t = chart_tangents(sys, pr.y);
        std::vector<double> rho(d);
        for (int l = 0; l < d; ++l) rho[l] = dot(t[l], res);

        double rmax = 0.0;
        for (double v : rho) rmax = std::max(rmax, std::fabs(v));
        if (rmax <= 1e-13 * (1.0 + nrm2(res))) {
            for (int l = 0; l < d; ++l)
                pr.orth_residual = std::max(pr.orth_residual, std::fabs(rho[l]) / nrm2(t[l]));
            return pr;
        }

        // J_lp = sum_j (E_j . res) (S_j)_{lp} - t_l . t_p
        std::vector<double> jac(d * d, 0.0);
        for (int j = 0; j < m - d; ++j) {
            const double wj = dot(column(sys.frame, m, d + j), res);
            for (int l = 0; l < d; ++l)
                for (int p = 0; p < d; ++p)
                    jac[l * d + p] += wj * sys.chart_s[j * d * d + l * d + p];
        }
        for (int l = 0; l < d; ++l)
            for (int p = 0; p < d; ++p) jac[l * d + p] -= dot(t[l], t[p]);

        for (double& v : rho) v = -v;
        const std::vector<double> dy = solve_small(jac, rho, d);
        for (int l = 0; l < d; ++l) pr.y[l] += dy[l];
    }
    throw numeric_error("projection did not converge inside the chart radius");
}

LocalFrame local_frame(const SurrogateSystem& sys, const std::vector<double>& y) {
    LocalFrame lf;
    lf.point = section_point(sys, y);
    if (sys.tier == 'A') {
        lf.frame = sys.frame;
        return lf;
    }
    const int m = sys.m, d = sys.d;
    std::vector<std::vector<double>> cols = chart_tangents(sys, y);
    for (int j = d; j < m; ++j) cols.push_back(column(sys.frame, m, j));
    lf.frame = pack_orthonormal(std::move(cols), m);
    return lf;
}

FlowConstants choose_constants(int N, double c, double c_tilde, double alpha) {
    if (N < 2) throw domain_error("choose_constants: N must be an integer >= 2");
    if (!(c >= 1.0)) throw domain_error("choose_constants: c must be >= 1");
    if (!(c_tilde > 0.0)) throw domain_error("choose_constants: c_tilde must be > 0");
    if (!(alpha > 0.0)) throw domain_error("choose_constants: alpha must be > 0");

    for (double mu = 1.0; mu >= 1e-12; mu /= 2.0) {
        const double T = std::min(1.0 / (c * N), 1.0) / (4.0 * mu * c * c_tilde);
        if (c * std::exp(-alpha * T) < 1.0 / (2.0 * N)) {
            FlowConstants fc{mu, mu / (2.0 * c), T};
            const double slack = 1.0 + 1e-12;
            if (T * c * c_tilde * mu * mu > slack * mu / 4.0 ||
                c * fc.epsilon > slack * mu / 2.0 ||
                2.0 * T * c * c_tilde * mu > slack * 0.5)
                throw internal_error("choose_constants: smallness bundle violated");
            return fc;
        }
    }
    throw domain_error("choose_constants: no admissible dyadic weight above 1e-12");
}

PicardResult picard_fixed_point(const SurrogateSystem& sys, const LocalFrame& lf,
                                const std::vector<double>& g_minus_h, double T,
                                double mu, int steps) {
    const int m = sys.m;
    if (static_cast<int>(g_minus_h.size()) != m)
        throw domain_error("fixed point: ambient dimension mismatch");
    if (!(T > 0.0) || !(mu > 0.0)) throw domain_error("fixed point: T and mu must be > 0");
    if (steps < 2) throw domain_error("fixed point: need at least 2 time steps");

    const double eps = mu / (2.0 * sys.c);
    if (nrm2(g_minus_h) > eps * (1.0 + 1e-12))
        throw domain_error("fixed point: initial distance exceeds eps = mu/(2c)");
    const double contraction = 2.0 * T * sys.c * sys.c_tilde * mu;
    if (contraction >= 1.0)
        throw domain_error("fixed point: contraction certificate 2*T*c*c_tilde*mu >= 1");

    const std::vector<double> b = mat_t_vec(lf.frame, m, g_minus_h);
    const double dt = T / steps;
    std::vector<double> decay(m);
    for (int i = 0; i < m; ++i) decay[i] = std::exp(-sys.evals[i] * dt);

    std::vector<std::vector<double>> lin(steps + 1, std::vector<double>(m));
    for (int j = 0; j <= steps; ++j)
        for (int i = 0; i < m; ++i) lin[j][i] = std::exp(-sys.evals[i] * j * dt) * b[i];

    PicardResult res;
    std::vector<std::vector<double>> w = lin;
    std::vector<std::vector<double>> qc(steps + 1, std::vector<double>(m));
    double prev_defect = -1.0;

    for (int it = 1; it <= 1000; ++it) {
        for (int j = 0; j <= steps; ++j)
            qc[j] = mat_t_vec(lf.frame, m, quadratic_q(sys, matvec(lf.frame, m, w[j])));

        double defect = 0.0;
        std::vector<std::vector<double>> next(steps + 1, std::vector<double>(m));
        next[0] = b;
        std::vector<double> conv(m, 0.0);
        for (int j = 0; j < steps; ++j)
            for (int i = 0; i < m; ++i) {
                conv[i] = decay[i] * conv[i] +
                          dt / 2.0 * (decay[i] * qc[j][i] + qc[j + 1][i]);
                next[j + 1][i] = lin[j + 1][i] + conv[i];
            }
        for (int j = 0; j <= steps; ++j) {
            double s = 0.0;
            for (int i = 0; i < m; ++i) {
                const double di = next[j][i] - w[j][i];
                s += di * di;
            }
            defect = std::max(defect, std::sqrt(s));
        }
        w.swap(next);
        res.iterations = it;
        if (prev_defect > 0.0 && defect > 0.0)
            res.max_ratio = std::max(res.max_ratio, defect / prev_defect);
        prev_defect = defect;
        if (defect < 1e-12) break;
        if (it == 1000)
            throw numeric_error("fixed point: iteration did not settle in 1000 sweeps");
    }

    for (int j = 0; j <= steps; ++j) res.sup_norm = std::max(res.sup_norm, nrm2(w[j]));
    if (res.sup_norm > mu * (1.0 + 1e-9))
        throw assertion_error("fixed point: iterate left the contraction ball");

    res.omega.resize(steps + 1);
    for (int j = 0; j <= steps; ++j) res.omega[j] = matvec(lf.frame, m, w[j]);
    return res;
}

std::vector<double> default_start(const SurrogateSystem& sys, double epsilon) {
    std::vector<double> g = sys.h0;
    const std::vector<double> v = column(sys.frame, sys.m, sys.d);
    for (int i = 0; i < sys.m; ++i) g[i] += 0.9 * epsilon * v[i];
    return g;
}

FlowTrace restart_flow(const SurrogateSystem& sys, const std::vector<double>& g0,
                       int N, double R, int time_steps, int max_legs) {
    if (!(R > 0.0)) throw domain_error("restart flow: R must be > 0");
    if (max_legs < 1) throw domain_error("restart flow: need at least one leg");

    const FlowConstants fc = choose_constants(N, sys.c, sys.c_tilde, sys.alpha);
    const double r = (sys.c + 1.0) / N;
    if (r >= 1.0)
        throw domain_error("restart flow: the gain (c+1)/N must be below 1");
    if (!(fc.epsilon * sys.c / N / (1.0 - r) < R / 2.0))
        throw domain_error("restart flow: R is too small for the drift bound");
    if (!(fc.epsilon <= R / 2.0))
        throw domain_error("restart flow: R is too small: eps must be <= R/2");

    FlowTrace tr;
    tr.tier = sys.tier;
    tr.N = N;
    tr.c = sys.c;
    tr.c_tilde = sys.c_tilde;
    tr.alpha = sys.alpha;
    tr.mu = fc.mu;
    tr.epsilon = fc.epsilon;
    tr.T = fc.T;
    tr.R = R;
    tr.seed = sys.seed;
    tr.time_steps = time_steps;
    tr.contraction_bound = 2.0 * fc.T * sys.c * sys.c_tilde * fc.mu;

    auto fence = [](double x, double bound, const std::string& what, int k) {
        if (x > bound * (1.0 + 1e-9) + 1e-14 * (1.0 + bound))
            throw assertion_error("leg " + std::to_string(k) + ": " + what +
                                  " fence violated (" + std::to_string(x) + " > " +
                                  std::to_string(bound) + ")");
    };

    std::vector<double> g = g0;
    Projection proj = project_to_manifold(sys, g);
    if (nrm2(diff(g, proj.point)) > fc.epsilon * (1.0 + 1e-12))
        throw domain_error("restart flow: start point violates the eps fence");

    for (int k = 0; k < max_legs; ++k) {
        const std::vector<double>& h_k = proj.point;
        const double d_in = nrm2(diff(g, h_k));
        const double bound_in = fc.epsilon * std::pow(r, k);
        fence(d_in, bound_in, "section distance", k);

        const double dh0 = nrm2(diff(h_k, sys.h0));
        const double dg0 = nrm2(diff(g, sys.h0));
        const bool within = dh0 <= R / 2.0 * (1.0 + 1e-9) && dg0 <= R * (1.0 + 1e-9);
        if (!within)
            throw assertion_error("leg " + std::to_string(k) +
                                  ": trajectory left the R-ball");

        const LocalFrame lf = local_frame(sys, proj.y);
        const PicardResult pic =
            picard_fixed_point(sys, lf, diff(g, h_k), fc.T, fc.mu, time_steps);
        tr.max_picard_ratio = std::max(tr.max_picard_ratio, pic.max_ratio);

        std::vector<double> g_next = h_k;
        for (int i = 0; i < sys.m; ++i) g_next[i] += pic.omega.back()[i];

        const double dist_step = nrm2(diff(g_next, h_k));
        fence(dist_step, bound_in / N, "flow step", k);
        fence(dist_step, d_in / N, "sharp per-leg step", k);

        const Projection proj_next = project_to_manifold(sys, g_next);
        const double dist_pi = nrm2(diff(proj_next.point, h_k));
        fence(dist_pi, bound_in * sys.c / N, "projected step", k);

        FlowLeg leg;
        leg.k = k;
        leg.dist_g_to_pi = d_in;
        leg.bound_g_to_pi = bound_in;
        leg.dist_step = dist_step;
        leg.bound_step = bound_in / N;
        leg.dist_pi_step = dist_pi;
        leg.bound_pi_step = bound_in * sys.c / N;
        leg.within_r = within;
        leg.g_step = nrm2(diff(g_next, g));
        leg.orth_residual = std::max(proj.orth_residual, proj_next.orth_residual);
        tr.legs.push_back(leg);
        tr.max_orth_residual = std::max(tr.max_orth_residual, leg.orth_residual);

        g = g_next;
        proj = proj_next;
        if (leg.g_step < 1e-10) {
            tr.converged = true;
            break;
        }
    }
    if (!tr.converged)
        throw numeric_error("restart flow: did not settle within the leg budget");

    tr.g_final = g;
    tr.final_dist_to_section = nrm2(diff(g, proj.point));
    tr.final_dist_to_h0 = nrm2(diff(g, sys.h0));
    return tr;
}

} // namespace conelab
