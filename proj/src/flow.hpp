#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conelab {

// Finite-dimensional surrogate for a restart-based stabilization scheme: a
// d-dimensional section of critical points inside R^m, a self-adjoint
// linearization L with kernel equal to the tangent space and spectral gap
// alpha, and a quadratic nonlinearity Q with |Q(w)| <= c_tilde |w|^2.
//
// Tier A is exactly solvable: the section is an affine plane, the projection
// is linear, and c = 1 and c_tilde are exact constants. Tier B curves the
// section by a quadratic chart, projects by Newton iteration, and carries
// sampled-and-inflated certificates for c and c_tilde instead.
struct SurrogateSystem {
    char tier = 'A';
    int m = 6;                    // ambient dimension
    int d = 2;                    // section dimension
    double alpha = 1.0;           // spectral gap of the linearization
    double c = 1.0;               // operative projection/semigroup constant
    double c_tilde = 1.0;         // operative quadratic bound
    double c_sampled = 1.0;       // tier B: raw sampled projection ratio
    double c_tilde_sampled = 0.0; // tier B: raw sampled quadratic ratio
    std::uint64_t seed = 0;

    std::vector<double> h0;       // base point on the section
    std::vector<double> frame;    // m x m orthogonal, row-major; column j is
                                  // the j-th eigenvector of L at h0
    std::vector<double> evals;    // eigenvalues, ascending, d zeros first

    double q_scale = 1.0;         // Q(w) = q_scale * (u.w) * (R w)
    std::vector<double> q_u;      // unit vector
    std::vector<double> q_rot;    // m x m orthogonal, row-major

    std::vector<double> chart_s;  // tier B: (m-d) symmetric d x d matrices
};

SurrogateSystem make_tier_a(double alpha, double c_tilde, std::uint64_t seed);
SurrogateSystem make_tier_b(double alpha, double c_tilde, std::uint64_t seed);

// The quadratic nonlinearity in ambient coordinates.
std::vector<double> quadratic_q(const SurrogateSystem& sys, const std::vector<double>& w);

// Section point at chart parameter y (tier A: h0 + K y).
std::vector<double> section_point(const SurrogateSystem& sys, const std::vector<double>& y);

// Nearest-point projection onto the section. Tier A solves exactly; tier B
// runs Newton on the tangency conditions (100-iteration cap). orth_residual
// is the largest inner product of g - point against a unit tangent vector.
struct Projection {
    std::vector<double> point;
    std::vector<double> y;
    double orth_residual = 0.0;
};

Projection project_to_manifold(const SurrogateSystem& sys, const std::vector<double>& g);

// Orthonormal eigenframe of the linearization at chart parameter y; the
// first d columns span the tangent space there.
struct LocalFrame {
    std::vector<double> point;
    std::vector<double> frame;
};

LocalFrame local_frame(const SurrogateSystem& sys, const std::vector<double>& y);

// Restart constants: mu is the largest dyadic weight <= 1 such that, with
//   T = 1/(4 mu c c_tilde) * min(1/(cN), 1),
// the gap condition c * exp(-alpha T) < 1/(2N) holds; eps = mu/(2c). The
// construction then guarantees T c c_tilde mu^2 <= mu/4, c eps <= mu/2 and
// 2 T c c_tilde mu <= 1/2.
struct FlowConstants {
    double mu = 0.0;
    double epsilon = 0.0;
    double T = 0.0;
};

FlowConstants choose_constants(int N, double c, double c_tilde, double alpha);

// Duhamel fixed point for one leg: solves
//   w(t) = e^{-tL} w(0) + int_0^t e^{-(t-s)L} Q(w(s)) ds
// on [0, T] by Picard iteration in the eigenbasis of the local frame, with
// trapezoid quadrature on a uniform grid of `steps` intervals. Requires
// |g - h| <= eps = mu/(2c) and the contraction certificate 2 T c c_tilde mu
// < 1; iterates must stay inside the ball of radius mu.
struct PicardResult {
    std::vector<std::vector<double>> omega; // trajectory, ambient coordinates
    int iterations = 0;
    double max_ratio = 0.0;                 // observed defect contraction
    double sup_norm = 0.0;
};

PicardResult picard_fixed_point(const SurrogateSystem& sys, const LocalFrame& lf,
                                const std::vector<double>& g_minus_h, double T,
                                double mu, int steps);

// One restart cycle per leg: project, flow for time T, re-project. Each leg
// checks the distance fences eps r^k, eps r^k / N and eps c r^k / N with
// r = (c+1)/N, the sharp per-leg estimate |g((k+1)T) - h_k| <= |g(kT) - h_k| / N,
// and containment in the ball of radius R around h0 (section points within
// R/2). Stops when successive flow states differ by less than 1e-10.
struct FlowLeg {
    int k = 0;
    double dist_g_to_pi = 0.0;
    double bound_g_to_pi = 0.0;
    double dist_step = 0.0;
    double bound_step = 0.0;
    double dist_pi_step = 0.0;
    double bound_pi_step = 0.0;
    bool within_r = false;
    double g_step = 0.0;          // |g_{k+1} - g_k|
    double orth_residual = 0.0;
};

struct FlowTrace {
    char tier = 'A';
    int N = 0;
    double c = 0.0, c_tilde = 0.0, alpha = 0.0;
    double mu = 0.0, epsilon = 0.0, T = 0.0, R = 0.0;
    std::uint64_t seed = 0;
    int time_steps = 0;
    double contraction_bound = 0.0; // 2 T c c_tilde mu
    std::vector<FlowLeg> legs;
    bool converged = false;
    std::vector<double> g_final;
    double final_dist_to_section = 0.0;
    double final_dist_to_h0 = 0.0;
    double max_orth_residual = 0.0;
    double max_picard_ratio = 0.0;
};

FlowTrace restart_flow(const SurrogateSystem& sys, const std::vector<double>& g0,
                       int N, double R, int time_steps, int max_legs = 64);

// Canonical start point h0 + 0.9 eps v, where v is the unit eigenvector of
// the first nonzero eigenvalue (so the start projects exactly onto h0).
std::vector<double> default_start(const SurrogateSystem& sys, double epsilon);

} // namespace conelab
