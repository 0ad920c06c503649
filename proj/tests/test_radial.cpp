#include "doctest.h"

#include <cmath>
#include <vector>

#include "bessel.hpp"
#include "errors.hpp"
#include "oracles.hpp"
#include "radial.hpp"
#include "spectral.hpp"
#include "tridiag.hpp"

using namespace conelab;

namespace {

CrossSectionSpectrum sphere3() {
    CrossSectionSpectrum cs;
    cs.n = 3;
    cs.tt_einstein = {6.0, 13.0, 22.0};
    cs.coclosed_oneforms = {2.0, 7.0, 14.0};
    cs.laplace = {0.0, 3.0, 8.0, 15.0};
    cs.label = "S^3";
    return cs;
}

} // namespace

TEST_CASE("library Bessel values agree with the power series") {
    for (double nu : {0.0, 0.3, 1.0, 2.5, 5.0}) {
        for (double x = 0.5; x <= 20.0; x += 1.3) {
            const double lib = bessel_j(nu, x);
            const double ref = oracle::bessel_j_series(nu, x);
            CHECK(std::fabs(lib - ref) <= 5e-9);
        }
    }
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.0, 0.0) == 0.0);
    CHECK_THROWS_AS(bessel_j(-1.0, 1.0), domain_error);
    CHECK_THROWS_AS(bessel_j(1.0, -1.0), domain_error);
}

TEST_CASE("library Bessel zeros hit frozen oracle anchors") {
    // Frozen values produced by the independent series oracle (scan +
    // bisection on the alternating power series).
    CHECK(bessel_zero(0.0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-10));
    CHECK(bessel_zero(0.5, 1) == doctest::Approx(3.141592653589793).epsilon(1e-10));
    CHECK(bessel_zero(1.0, 1) == doctest::Approx(3.831705970207512).epsilon(1e-10));
    CHECK(bessel_zero(2.0, 1) == doctest::Approx(5.135622301840683).epsilon(1e-10));
    CHECK(bessel_zero(3.5, 1) == doctest::Approx(6.987932000585780).epsilon(1e-10));
    CHECK(bessel_zero(1.0, 2) == doctest::Approx(7.015586669815619).epsilon(1e-10));
    CHECK(bessel_zero(1.0, 3) == doctest::Approx(10.173468135062722).epsilon(1e-10));

    // Cross-check against the oracle's own zero finder on a fresh grid.
    for (double nu : {0.25, 1.5, 4.0}) {
        for (int m : {1, 2}) {
            CHECK(bessel_zero(nu, m) ==
                  doctest::Approx(oracle::bessel_zero(nu, m)).epsilon(1e-9));
        }
    }

    CHECK_THROWS_AS(bessel_zero(0.0, 0), domain_error);
    CHECK_THROWS_AS(bessel_zero(-0.5, 1), domain_error);
}

TEST_CASE("radial model: construction rules and the tip degree of freedom") {
    CHECK_THROWS_AS(build_radial_model(-0.5, 0.0, 100, 2.0), domain_error);
    CHECK_THROWS_AS(build_radial_model(1.0, -0.1, 100, 2.0), domain_error);
    CHECK_THROWS_AS(build_radial_model(1.0, 1.0, 100, 2.0), domain_error);
    CHECK_THROWS_AS(build_radial_model(1.0, 0.0, 2, 2.0), domain_error);
    CHECK_THROWS_AS(build_radial_model(1.0, 0.0, 100, 0.5), domain_error);
    // Negative tip coefficient nu^2 - eps/4 is rejected outright.
    CHECK_THROWS_AS(build_radial_model(0.0, 0.1, 100, 2.0), domain_error);

    const RadialModel log_case = build_radial_model(0.0, 0.0, 64, 2.0);
    CHECK(log_case.tip_dof);
    CHECK(log_case.stiffness.size() == 64); // nodes 0..63 active

    const RadialModel generic = build_radial_model(0.5, 0.0, 64, 2.0);
    CHECK_FALSE(generic.tip_dof);
    CHECK(generic.stiffness.size() == 63); // nodes 1..63 active

    // eps = 4 nu^2 cancels the tip coefficient exactly.
    const RadialModel cancelled = build_radial_model(0.25, 0.25, 64, 2.0);
    CHECK(cancelled.tip_dof);

    REQUIRE(generic.mesh.size() == 65);
    CHECK(generic.mesh.front() == 0.0);
    CHECK(generic.mesh.back() == 1.0);
    CHECK(generic.mesh[1] == doctest::Approx(std::pow(1.0 / 64.0, 2.0)).epsilon(1e-15));
    for (std::size_t i = 1; i < generic.mesh.size(); ++i)
        CHECK(generic.mesh[i] > generic.mesh[i - 1]);

    CHECK_THROWS_AS(friedrichs_eigenvalues(generic, 0), domain_error);
    CHECK_THROWS_AS(friedrichs_eigenvalues(generic, 64), domain_error);
}

TEST_CASE("model eigenvalues converge to squared Bessel zeros") {
    for (double nu : {0.0, 0.5, 1.0, 2.0}) {
        const double z = oracle::bessel_zero(nu, 1);
        const RadialModel model = build_radial_model(nu, 0.0, 1000, 2.0);
        const double e1 = friedrichs_eigenvalues(model, 1)[0];
        CHECK(std::fabs(e1 - z * z) / (z * z) <= 1e-4);
    }

    // Halving the mesh width cuts the error by about four; demand three.
    const double ref = std::pow(oracle::bessel_zero(1.0, 1), 2);
    const double coarse =
        std::fabs(friedrichs_eigenvalues(build_radial_model(1.0, 0.0, 500, 2.0), 1)[0] - ref);
    const double fine =
        std::fabs(friedrichs_eigenvalues(build_radial_model(1.0, 0.0, 1000, 2.0), 1)[0] - ref);
    CHECK(fine <= coarse / 3.0);

    // Higher radial overtones from one model, against the oracle.
    const RadialModel model = build_radial_model(1.0, 0.0, 1500, 2.0);
    const std::vector<double> eigs = friedrichs_eigenvalues(model, 3);
    for (int m = 1; m <= 3; ++m) {
        const double z = oracle::bessel_zero(1.0, m);
        CHECK(std::fabs(eigs[m - 1] - z * z) / (z * z) <= 1e-3);
    }
}

TEST_CASE("interpolation weight rescales the model spectrum") {
    // Eigenvalues should approach (1-eps) j^2 with the shifted order
    // nu_hat = sqrt((nu^2 - eps/4) / (1 - eps)).
    const double nu = 1.0, eps = 0.5;
    const double nu_hat = std::sqrt((nu * nu - eps / 4.0) / (1.0 - eps));
    const double want = (1.0 - eps) * std::pow(oracle::bessel_zero(nu_hat, 1), 2);
    const RadialModel model = build_radial_model(nu, eps, 1000, 2.0);
    const double e1 = friedrichs_eigenvalues(model, 1)[0];
    CHECK(std::fabs(e1 - want) / want <= 1e-3);
}

TEST_CASE("discrete Hardy quotient approaches its constant from below") {
    for (int n : {2, 3, 6}) {
        const double q = hardy_quotient(n, 400, 2.0);
        const double bound = 4.0 / ((n - 1.0) * (n - 1.0));
        CHECK(q <= bound * 1.02);
        CHECK(q >= bound * 0.5);
    }
    CHECK_THROWS_AS(hardy_quotient(1, 400, 2.0), domain_error);
}

TEST_CASE("energy-window constants: saturation, rejection, kernel guard") {
    const SchrodingerForms forms = plain_hat_forms(150, 2.0);
    CHECK(forms.kinetic.size() == 149);

    const Tridiag doubled = tridiag_combine(forms.kinetic, 1.0, forms.kinetic);
    const GardingReport ok = garding_constants(doubled, forms.kinetic, forms.mass, 0);
    CHECK(ok.hypothesis_ok);
    CHECK(ok.eps1 >= 1.0 - 1e-6);
    CHECK(ok.eps2 > 0.0);

    const SchrodingerForms tip = plain_hat_forms(800, 4.0);
    const Tridiag sub = schrodinger_stiffness(tip, 0.0, -0.05);
    const GardingReport bad = garding_constants(sub, tip.kinetic, tip.mass, 0);
    CHECK_FALSE(bad.hypothesis_ok);
    CHECK(bad.eps2 < 0.0);

    CHECK_THROWS_AS(garding_constants(doubled, forms.kinetic, forms.mass, -1), domain_error);
    CHECK_THROWS_AS(garding_constants(doubled, forms.kinetic, forms.mass, 149), domain_error);
}

TEST_CASE("admissible interpolation weight saturates its cap") {
    CHECK(min_eps_margin(0.0, 4) == 1.0 - 1e-6);
    CHECK(min_eps_margin(0.1, 2) == 1.0 - 1e-6);
    CHECK_THROWS_AS(min_eps_margin(0.0, 2), domain_error);  // exactly at threshold
    CHECK_THROWS_AS(min_eps_margin(-2.0, 3), domain_error); // below threshold
}

TEST_CASE("heat decay: spectral norms, cross-checks, honest failure") {
    // Two-eigenvalue toy operator: kernel {0}, gap at 1.
    const Tridiag s{{0.0, 1.0, 2.0}, {0.0, 0.0}};
    const Tridiag b{{1.0, 1.0, 1.0}, {0.0, 0.0}};
    const HeatReport toy = heat_decay_check(s, b, 1, {1.0, 2.0});
    CHECK(toy.pass);
    CHECK(toy.lambda1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(toy.norms[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(toy.norms[1] == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(toy.cn_rel_error <= 0.01);

    // The radial model passes with the default step count...
    const RadialModel model = build_radial_model(1.0, 0.0, 400, 2.0);
    const HeatReport rep = heat_decay_check(model, {0.5, 1.0});
    CHECK(rep.pass);
    CHECK(rep.t_star == doctest::Approx(1.0 / rep.lambda1).epsilon(1e-15));

    // ...but a single Crank-Nicolson step is honestly too coarse: the decay
    // cross-check must fail, not be papered over.
    const HeatReport coarse = heat_decay_check(model, {0.5}, 1);
    CHECK_FALSE(coarse.pass);
    CHECK(coarse.failure.find("time-stepping decay mismatch") != std::string::npos);

    CHECK_THROWS_AS(heat_decay_check(model, {0.0}), domain_error);
    CHECK_THROWS_AS(heat_decay_check(s, b, 3, {1.0}), domain_error);
}

TEST_CASE("cone spectrum merges tangential modes in order") {
    const ConeSpectrumReport rep = model_cone_spectrum(sphere3(), 2, 2, 600, 2.0);
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.lambda1 == rep.rows.front().eigenvalue);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const ConeModeRow& row = rep.rows[i];
        CHECK(row.nu == nu_root(row.lambda, 3));
        CHECK(row.rel_error <= 1e-3);
        CHECK(row.oracle ==
              doctest::Approx(std::pow(oracle::bessel_zero(row.nu, row.m), 2))
                  .epsilon(1e-8));
        if (i > 0) CHECK(rep.rows[i - 1].eigenvalue <= row.eigenvalue);
    }
    // The constant tangential mode (lambda = 0, nu = 1 for n = 3) leads.
    CHECK(rep.rows.front().lambda == 0.0);
    CHECK(rep.rows.front().nu == doctest::Approx(1.0));

    CHECK_THROWS_AS(model_cone_spectrum(sphere3(), 9, 2, 600, 2.0), domain_error);
    CHECK_THROWS_AS(model_cone_spectrum(sphere3(), 2, 0, 600, 2.0), domain_error);
}
