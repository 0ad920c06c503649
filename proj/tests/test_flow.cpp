#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "flow.hpp"
#include "rng.hpp"

using namespace conelab;

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Column j of a row-major m x m matrix.
std::vector<double> column(const std::vector<double>& mat, int m, int j) {
    std::vector<double> c(m);
    for (int i = 0; i < m; ++i) c[i] = mat[i * m + j];
    return c;
}

bool is_orthogonal(const std::vector<double>& mat, int m, double tol) {
    for (int j = 0; j < m; ++j)
        for (int k = j; k < m; ++k) {
            const double want = (j == k) ? 1.0 : 0.0;
            if (std::fabs(dot(column(mat, m, j), column(mat, m, k)) - want) > tol)
                return false;
        }
    return true;
}

std::vector<double> shifted(const std::vector<double>& base, const std::vector<double>& dir,
                            double t) {
    std::vector<double> g = base;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += t * dir[i];
    return g;
}

} // namespace

TEST_CASE("restart constants are exact dyadics with a certified budget") {
    const FlowConstants fc = choose_constants(4, 1.0, 1.0, 1.0);
    CHECK(fc.mu == 0.015625);      // 2^-6
    CHECK(fc.T == 4.0);
    CHECK(fc.epsilon == 0.0078125); // 2^-7

    // The promised smallness bundle.
    CHECK(fc.T * fc.mu * fc.mu <= fc.mu / 4.0);
    CHECK(fc.epsilon <= fc.mu / 2.0);
    CHECK(2.0 * fc.T * fc.mu == 0.125);

    // Independent check of the selection rule: the weight returned must be
    // admissible and its dyadic predecessor must not be.
    const auto admissible = [](double mu) {
        const double t = std::min(0.25, 1.0) / (4.0 * mu);
        return std::exp(-t) < 0.125;
    };
    CHECK(admissible(0.015625));
    CHECK(admissible(0.0078125));
    CHECK_FALSE(admissible(0.03125));

    // A huge gap admits the top weight immediately.
    CHECK(choose_constants(2, 1.0, 1.0, 1000.0).mu == 1.0);

    // The weight never grows with the demanded gain.
    double prev = 2.0;
    for (int n = 2; n <= 10; ++n) {
        const double mu = choose_constants(n, 1.0, 1.0, 1.0).mu;
        CHECK(mu <= prev);
        prev = mu;
    }

    CHECK_THROWS_AS(choose_constants(1, 1.0, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(choose_constants(4, 0.5, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(choose_constants(4, 1.0, 0.0, 1.0), domain_error);
    CHECK_THROWS_AS(choose_constants(4, 1.0, 1.0, 0.0), domain_error);
    // Vanishing gap: no dyadic weight above the floor works.
    CHECK_THROWS_AS(choose_constants(4, 1.0, 1.0, 1e-13), domain_error);
}

TEST_CASE("exactly solvable surrogate: spectrum, frames, quadratic bound") {
    const SurrogateSystem sys = make_tier_a(1.3, 1.3, 77);
    CHECK(sys.tier == 'A');
    CHECK(sys.m == 6);
    CHECK(sys.d == 2);
    CHECK(sys.alpha == 1.3);
    CHECK(sys.c == 1.0);
    CHECK(sys.c_tilde == 1.3);
    CHECK(sys.seed == 77);
    REQUIRE(sys.evals.size() == 6);
    for (int j = 0; j < 6; ++j)
        CHECK(sys.evals[j] == (j < 2 ? 0.0 : (j - 1) * 1.3));
    REQUIRE(sys.h0.size() == 6);
    REQUIRE(sys.frame.size() == 36);
    CHECK(is_orthogonal(sys.frame, 6, 1e-12));
    CHECK(is_orthogonal(sys.q_rot, 6, 1e-12));
    CHECK(norm2(sys.q_u) == doctest::Approx(1.0).epsilon(1e-12));

    // |Q(w)| <= c_tilde |w|^2, with equality along the sampling direction.
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> w(6);
        for (double& x : w) x = 0.5 * rng.gauss();
        const double n = norm2(w);
        CHECK(norm2(quadratic_q(sys, w)) <= 1.3 * n * n * (1.0 + 1e-12));
    }
    CHECK(norm2(quadratic_q(sys, sys.q_u)) == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(norm2(quadratic_q(sys, std::vector<double>(6, 0.0))) == 0.0);

    CHECK_THROWS_AS(make_tier_a(0.0, 1.0, 1), domain_error);
    CHECK_THROWS_AS(make_tier_a(1.0, 0.0, 1), domain_error);
}

TEST_CASE("affine section: exact projection and local frames") {
    const SurrogateSystem sys = make_tier_a(1.0, 1.0, 0x5EED);
    const std::vector<double> y = {0.3, -0.2};
    const std::vector<double> pt = section_point(sys, y);
    for (int i = 0; i < 6; ++i) {
        const double want = sys.h0[i] + 0.3 * sys.frame[i * 6 + 0] - 0.2 * sys.frame[i * 6 + 1];
        CHECK(pt[i] == doctest::Approx(want).epsilon(1e-14));
    }

    // Displace normally: the projection must return to the same point.
    std::vector<double> g = shifted(pt, column(sys.frame, 6, 2), 0.05);
    g = shifted(g, column(sys.frame, 6, 5), -0.03);
    const Projection pr = project_to_manifold(sys, g);
    CHECK(pr.orth_residual <= 1e-12);
    REQUIRE(pr.y.size() == 2);
    CHECK(pr.y[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(pr.y[1] == doctest::Approx(-0.2).epsilon(1e-12));
    for (int i = 0; i < 6; ++i)
        CHECK(pr.point[i] == doctest::Approx(pt[i]).epsilon(1e-12));

    const LocalFrame lf = local_frame(sys, y);
    for (int i = 0; i < 6; ++i)
        CHECK(lf.point[i] == doctest::Approx(pt[i]).epsilon(1e-14));
    CHECK(is_orthogonal(lf.frame, 6, 1e-12));

    CHECK_THROWS_AS(project_to_manifold(sys, std::vector<double>(5, 0.0)), domain_error);
}

TEST_CASE("Duhamel fixed point: refusals, contraction, free decay") {
    const SurrogateSystem sys = make_tier_a(1.0, 1.0, 0x5EED);
    const FlowConstants fc = choose_constants(4, 1.0, 1.0, 1.0);
    const LocalFrame lf = local_frame(sys, {0.0, 0.0});
    const std::vector<double> v = column(sys.frame, 6, 2); // first nonzero mode
    const std::vector<double> gmh = shifted(std::vector<double>(6, 0.0), v, 0.9 * fc.epsilon);

    const PicardResult res = picard_fixed_point(sys, lf, gmh, fc.T, fc.mu, 512);
    REQUIRE(res.omega.size() == 513);
    for (int i = 0; i < 6; ++i)
        CHECK(res.omega.front()[i] == doctest::Approx(gmh[i]).epsilon(1e-14));
    CHECK(res.sup_norm <= fc.mu);
    CHECK(res.max_ratio <= 2.0 * fc.T * fc.mu * 1.10 + 1e-9);
    CHECK(res.iterations >= 1);

    // Refusals: start outside the eps fence, broken contraction certificate,
    // and a degenerate time grid.
    CHECK_THROWS_AS(
        picard_fixed_point(sys, lf, shifted(std::vector<double>(6, 0.0), v, 2.0 * fc.epsilon),
                           fc.T, fc.mu, 512),
        domain_error);
    CHECK_THROWS_AS(picard_fixed_point(sys, lf, gmh, 4.0, 0.2, 512), domain_error);
    CHECK_THROWS_AS(picard_fixed_point(sys, lf, gmh, fc.T, fc.mu, 1), domain_error);
    CHECK_THROWS_AS(picard_fixed_point(sys, lf, gmh, 0.0, fc.mu, 512), domain_error);

    // With the nonlinearity switched off the leg is the exact semigroup:
    // the start lies on the first nonzero mode, so w(T) = e^{-alpha T} w(0).
    SurrogateSystem free = sys;
    free.q_scale = 0.0;
    const PicardResult decay = picard_fixed_point(free, lf, gmh, fc.T, fc.mu, 256);
    const double factor = std::exp(-fc.T);
    for (int i = 0; i < 6; ++i)
        CHECK(std::fabs(decay.omega.back()[i] - factor * gmh[i]) <=
              1e-15 + 1e-12 * std::fabs(factor * gmh[i]));
}

TEST_CASE("halving the quadrature step leaves the leg endpoint unchanged") {
    const SurrogateSystem sys = make_tier_a(1.0, 1.0, 0x5EED);
    const FlowConstants fc = choose_constants(4, 1.0, 1.0, 1.0);
    const LocalFrame lf = local_frame(sys, {0.0, 0.0});
    const std::vector<double> gmh =
        shifted(std::vector<double>(6, 0.0), column(sys.frame, 6, 2), 0.9 * fc.epsilon);
    const PicardResult coarse = picard_fixed_point(sys, lf, gmh, fc.T, fc.mu, 512);
    const PicardResult fine = picard_fixed_point(sys, lf, gmh, fc.T, fc.mu, 1024);
    double diff = 0.0;
    for (int i = 0; i < 6; ++i)
        diff += std::pow(coarse.omega.back()[i] - fine.omega.back()[i], 2);
    CHECK(std::sqrt(diff) <= 1e-8);
}

TEST_CASE("restarted flow: fences, geometry, convergence, determinism") {
    const SurrogateSystem sys = make_tier_a(1.0, 1.0, 0x5EED);
    const FlowConstants fc = choose_constants(4, 1.0, 1.0, 1.0);
    const std::vector<double> g0 = default_start(sys, fc.epsilon);

    // The canonical start sits 0.9 eps from the base point and projects onto it.
    std::vector<double> d0(6);
    for (int i = 0; i < 6; ++i) d0[i] = g0[i] - sys.h0[i];
    CHECK(norm2(d0) == doctest::Approx(0.9 * fc.epsilon).epsilon(1e-13));
    const Projection pr0 = project_to_manifold(sys, g0);
    CHECK(pr0.orth_residual <= 1e-13);
    for (int i = 0; i < 6; ++i)
        CHECK(pr0.point[i] == doctest::Approx(sys.h0[i]).epsilon(1e-13));

    const FlowTrace tr = restart_flow(sys, g0, 4, 0.1, 512);
    CHECK(tr.converged);
    CHECK(tr.tier == 'A');
    CHECK(tr.N == 4);
    CHECK(tr.R == 0.1);
    CHECK(tr.mu == fc.mu);
    CHECK(tr.epsilon == fc.epsilon);
    CHECK(tr.T == fc.T);
    CHECK(tr.contraction_bound == 0.125);
    REQUIRE(tr.legs.size() >= 3);
    REQUIRE(tr.legs.size() <= 64);

    const double r = 0.5; // (c+1)/N
    for (std::size_t k = 0; k < tr.legs.size(); ++k) {
        const FlowLeg& leg = tr.legs[k];
        CHECK(leg.k == static_cast<int>(k));
        CHECK(leg.bound_g_to_pi == fc.epsilon * std::pow(r, static_cast<double>(k)));
        CHECK(leg.bound_step == leg.bound_g_to_pi / 4.0);
        CHECK(leg.bound_pi_step == leg.bound_g_to_pi / 4.0); // c = 1
        const auto within = [](double x, double bound) {
            return x <= bound * (1.0 + 1e-9) + 1e-14 * (1.0 + bound);
        };
        CHECK(within(leg.dist_g_to_pi, leg.bound_g_to_pi));
        CHECK(within(leg.dist_step, leg.bound_step));
        CHECK(within(leg.dist_pi_step, leg.bound_pi_step));
        CHECK(leg.within_r);
        CHECK(leg.orth_residual <= 1e-12);
    }
    // Projected increments are Cauchy with ratio at most 1/2 (+ slack).
    for (std::size_t k = 0; k + 1 < tr.legs.size(); ++k) {
        if (tr.legs[k].dist_pi_step < 1e-13) continue;
        CHECK(tr.legs[k + 1].dist_pi_step / tr.legs[k].dist_pi_step <= 0.51);
    }
    CHECK(tr.legs.back().g_step < 1e-10);
    CHECK(tr.max_picard_ratio <= 0.125 * 1.10);
    CHECK(tr.max_orth_residual <= 1e-12);
    CHECK(tr.final_dist_to_section <= 1e-10);
    CHECK(tr.final_dist_to_h0 <= 0.1);

    // Bitwise determinism of a repeated run.
    const FlowTrace tr2 = restart_flow(sys, g0, 4, 0.1, 512);
    REQUIRE(tr2.legs.size() == tr.legs.size());
    CHECK(tr2.g_final == tr.g_final);
    for (std::size_t k = 0; k < tr.legs.size(); ++k) {
        CHECK(tr2.legs[k].dist_g_to_pi == tr.legs[k].dist_g_to_pi);
        CHECK(tr2.legs[k].dist_step == tr.legs[k].dist_step);
        CHECK(tr2.legs[k].dist_pi_step == tr.legs[k].dist_pi_step);
        CHECK(tr2.legs[k].g_step == tr.legs[k].g_step);
    }

    // Preconditions.
    CHECK_THROWS_AS(restart_flow(sys, g0, 2, 0.1, 512), domain_error);   // gain 1
    CHECK_THROWS_AS(restart_flow(sys, g0, 4, 1e-6, 512), domain_error);  // R too small
    const std::vector<double> far =
        shifted(sys.h0, column(sys.frame, 6, 2), 2.0 * fc.epsilon);
    CHECK_THROWS_AS(restart_flow(sys, far, 4, 0.1, 512), domain_error);  // eps fence
    CHECK_THROWS_AS(restart_flow(sys, g0, 4, 0.1, 512, 1), numeric_error); // leg budget
}

TEST_CASE("with the nonlinearity off the leg distances follow the decay law") {
    SurrogateSystem sys = make_tier_a(1.0, 1.0, 0x5EED);
    sys.q_scale = 0.0;
    const FlowConstants fc = choose_constants(4, 1.0, 1.0, 1.0);
    const FlowTrace tr = restart_flow(sys, default_start(sys, fc.epsilon), 4, 0.1, 256);
    CHECK(tr.converged);
    for (const FlowLeg& leg : tr.legs) {
        const double want = 0.9 * fc.epsilon * std::exp(-fc.T * leg.k);
        CHECK(std::fabs(leg.dist_g_to_pi - want) <= 1e-9 * want + 1e-15);
    }
}

TEST_CASE("curved-section surrogate carries sampled, inflated certificates") {
    const SurrogateSystem sys = make_tier_b(1.0, 1.0, 0x5EED);
    CHECK(sys.tier == 'B');
    CHECK(sys.c == 1.2);
    CHECK(sys.c_tilde == 1.05 * sys.c_tilde_sampled);
    CHECK(sys.c_tilde_sampled > 0.5);
    CHECK(sys.c_tilde_sampled <= 1.0 + 1e-9);
    CHECK(1.05 * sys.c_sampled <= 1.2 + 1e-12);
    CHECK(sys.chart_s.size() == 16); // (m - d) symmetric d x d blocks

    // The section really curves: the chart differs from its tangent plane.
    const std::vector<double> y = {0.2, 0.1};
    const std::vector<double> pt = section_point(sys, y);
    std::vector<double> affine = sys.h0;
    for (int i = 0; i < 6; ++i)
        affine[i] += 0.2 * sys.frame[i * 6 + 0] + 0.1 * sys.frame[i * 6 + 1];
    double dev = 0.0;
    for (int i = 0; i < 6; ++i) dev += std::pow(pt[i] - affine[i], 2);
    CHECK(std::sqrt(dev) > 1e-6);

    // Newton projection: a small normal displacement lands back on the
    // section with a tiny tangency residual.
    const LocalFrame lf = local_frame(sys, y);
    const Projection pr = project_to_manifold(sys, shifted(lf.point, column(lf.frame, 6, 2), 0.01));
    CHECK(pr.orth_residual <= 1e-10);
    CHECK(std::fabs(pr.y[0] - 0.2) <= 5e-3);
    CHECK(std::fabs(pr.y[1] - 0.1) <= 5e-3);

    // Full restarted run under the certified constants.
    const FlowConstants fc = choose_constants(4, sys.c, sys.c_tilde, sys.alpha);
    const FlowTrace tr = restart_flow(sys, default_start(sys, fc.epsilon), 4, 0.1, 512);
    CHECK(tr.converged);
    CHECK(tr.legs.size() <= 64);
    CHECK(tr.legs[1].bound_g_to_pi / tr.legs[0].bound_g_to_pi ==
          doctest::Approx(0.55).epsilon(1e-12)); // r = (c+1)/N = 2.2/4
    CHECK(tr.max_orth_residual <= 1e-10);
    CHECK(tr.final_dist_to_h0 <= 0.1);
}
