#pragma once

#include <string>
#include <vector>

#include "spectral.hpp"
#include "tridiag.hpp"

namespace conelab {

// Discrete model of the radial operator -(1-eps) u'' + (nu^2 - 1/4) u / x^2
// on (0, 1], Dirichlet at x = 1, in the energy extension that keeps only the
// x^{1/2 + nu} behaviour at the tip. The continuum eigenvalues are
// (1 - eps) * j_{nu_hat, m}^2 with nu_hat^2 = (nu^2 - eps/4) / (1 - eps).
//
// Trial functions are sqrt(x) times hat functions on the graded mesh
// x_i = (i/M)^gamma, which turns the quadratic form into
//     (1 - eps) * int x w'^2 dx  +  (nu^2 - eps/4) * int w^2 / x dx
// with mass int x w^2 dx; all element integrals are evaluated in closed form
// (series near the tip where the direct expressions cancel). The node at
// x = 0 carries a degree of freedom exactly when the potential coefficient
// nu^2 - eps/4 vanishes, which reproduces the log-endpoint extension.
struct RadialModel {
    double nu = 0.0;
    double epsilon = 0.0;
    double gamma = 1.0;
    int segments = 0;          // M
    bool tip_dof = false;      // node 0 active
    std::vector<double> mesh;  // x_0 .. x_M
    Tridiag stiffness;         // on active nodes
    Tridiag mass;
};

RadialModel build_radial_model(double nu, double epsilon, int segments, double gamma);

// k smallest model eigenvalues, ascending.
std::vector<double> friedrichs_eigenvalues(const RadialModel& model, int k);

// Plain hat functions on the same graded mesh, interior nodes only, with the
// three quadratic forms of the Schrodinger picture: int u'^2, int u^2 / x^2,
// and int u^2.
struct SchrodingerForms {
    std::vector<double> mesh;
    Tridiag kinetic;
    Tridiag inv_sq;
    Tridiag mass;
};

SchrodingerForms plain_hat_forms(int segments, double gamma);

// (1 - eps) * kinetic + (nu2 - 1/4) * inv_sq.
Tridiag schrodinger_stiffness(const SchrodingerForms& forms, double eps, double nu2);

// Smallest generalized eigenvalue of (S, B).
double ground_state(const Tridiag& s, const Tridiag& b);

// Weighted tip forms int u'^2 x^n and int u^2 x^{n-2} on interior nodes.
std::pair<Tridiag, Tridiag> hardy_forms(int n, int segments, double gamma);

// Largest value of int u^2 x^{n-2} / int u'^2 x^n over discrete u supported
// in the tip half of the domain (hats with support inside [0, 1/2]); the
// continuum supremum is 4 / (n-1)^2 and is approached from below.
double hardy_quotient(int n, int segments, double gamma);

// Largest eps so that S - eps*G stays positive on the complement of the first
// kernel_dim modes, located by 40 bisection steps on [0, 1]; eps2 is the
// resulting spectral margin. When even eps = 0 fails, hypothesis_ok is false
// and eps2 records the offending ground state.
struct GardingReport {
    bool hypothesis_ok = false;
    double eps1 = 0.0;
    double eps2 = 0.0;
};

GardingReport garding_constants(const Tridiag& s_full, const Tridiag& gradient,
                                const Tridiag& mass, int kernel_dim);

// Largest admissible interpolation weight for a tangential margin C in
// dimension n: the tip coefficient nu^2 - eps/4 with nu^2 = C + ((n-1)/2)^2
// must stay nonnegative, so eps <= 4C + (n-1)^2, capped strictly below 1.
// Requires C > -((n-1)/2)^2 + 1/4.
double min_eps_margin(double C, int n);

// Semigroup decay on the complement of a kernel_dim-dimensional kernel:
// lambda1 is the first eigenvalue above the kernel, each requested time gets
// the operator norm exp(-t * lambda1) together with the matching bound, and
// the ground mode is evolved by Crank-Nicolson to t* = 1/lambda1 where the
// measured decay must match exp(-1) within 1%. A Rayleigh-quotient
// cross-check guards the eigenvalue itself.
struct HeatReport {
    double lambda1 = 0.0;
    std::vector<double> times;
    std::vector<double> norms;
    std::vector<double> bounds;
    double t_star = 0.0;
    double cn_measured = 0.0;
    double cn_expected = 0.0;
    double cn_rel_error = 0.0;
    bool pass = false;
    std::string failure;
};

HeatReport heat_decay_check(const Tridiag& s, const Tridiag& b, int kernel_dim,
                            const std::vector<double>& times, int cn_steps = 2048);
HeatReport heat_decay_check(const RadialModel& model, const std::vector<double>& times,
                            int cn_steps = 2048);

// Model spectrum of the cone over a cross-section: for each of the lowest
// `modes` tangential eigenvalues, the first `per_mode` radial eigenvalues,
// merged and sorted, each next to its continuum value j_{nu,m}^2.
struct ConeModeRow {
    double lambda = 0.0;
    double nu = 0.0;
    int m = 0;
    double eigenvalue = 0.0;
    double oracle = 0.0;
    double rel_error = 0.0;
};

struct ConeSpectrumReport {
    std::vector<ConeModeRow> rows;
    double lambda1 = 0.0;
};

ConeSpectrumReport model_cone_spectrum(const CrossSectionSpectrum& cs, int modes,
                                       int per_mode, int segments, double gamma);

} // namespace conelab
