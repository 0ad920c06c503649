#include "check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "radial.hpp"
#include "rng.hpp"
#include "spectral.hpp"
#include "stability.hpp"
#include "textio.hpp"
#include "tridiag.hpp"

namespace conelab {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw assertion_error(msg); }

void need(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

double vec_min(const std::vector<double>& v) {
    return *std::min_element(v.begin(), v.end());
}

// The round n-sphere of curvature one: the canonical strictly positive
// Einstein cross-section whose Laplace spectrum hits both interval endpoints
// n and 2(n+1).
CrossSectionSpectrum round_sphere(int n) {
    const double nn = static_cast<double>(n);
    CrossSectionSpectrum cs;
    cs.n = n;
    cs.tt_einstein = {2.0 * nn, 3.0 * nn + 4.0, 4.0 * nn + 10.0};
    cs.coclosed_oneforms = {nn - 1.0, 2.0 * nn + 1.0, 3.0 * nn + 5.0};
    cs.laplace = {0.0, nn, 2.0 * (nn + 1.0), 3.0 * (nn + 2.0)};
    cs.label = "S^" + std::to_string(n);
    return cs;
}

struct Suite {
    const CheckOptions& opt;
    std::vector<CheckResult> results;

    explicit Suite(const CheckOptions& o) : opt(o) {}

    double tol(double base) const { return base * opt.tolerance_scale; }

    void run(const char* name, const std::function<std::string()>& body) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = body();
            r.pass = true;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
};

} // namespace

CheckReport run_checks(const CheckOptions& options) {
    Suite s(options);
    const CheckOptions& opt = options;

    // --- indicial roots -----------------------------------------------------

    s.run("indicial-identity", [&] {
        const double t = s.tol(1e-12);
        double worst = 0.0;
        for (int n = 2; n <= 8; ++n) {
            double prev = -1.0;
            for (double lambda = 0.0; lambda <= 30.0; lambda += 0.37) {
                const double nu = nu_root(lambda, n);
                const double half = 0.5 * (n - 1.0);
                const double dev =
                    std::fabs(nu * nu - lambda - half * half) / (1.0 + lambda);
                worst = std::max(worst, dev);
                need(dev <= t, "identity deviation " + fmt17(dev) + " at n=" +
                                   std::to_string(n) + " lambda=" + fmt17(lambda) +
                                   " exceeds tolerance " + fmt17(t));
                need(nu > prev, "nu not strictly increasing at n=" + std::to_string(n) +
                                    " lambda=" + fmt17(lambda));
                prev = nu;
            }
        }
        return "max relative deviation " + fmt17(worst) + " (tolerance " + fmt17(t) + ")";
    });

    s.run("indicial-partition", [&] {
        const double t = s.tol(1e-12);
        int seen_log = 0, seen_constrained = 0, seen_free = 0;
        for (int n = 1; n <= 6; ++n) {
            for (double lambda = 0.0; lambda <= 12.0; lambda += 0.25) {
                const IndicialData d = friedrichs_classification(lambda, n);
                const BoundaryClass expect = d.nu == 0.0 ? BoundaryClass::log_case
                                             : d.nu < 1.0 ? BoundaryClass::constrained
                                                          : BoundaryClass::free_case;
                need(d.boundary_class == expect,
                     std::string("class ") + boundary_class_name(d.boundary_class) +
                         " contradicts nu=" + fmt17(d.nu) + " at n=" + std::to_string(n) +
                         " lambda=" + fmt17(lambda));
                if (d.boundary_class == BoundaryClass::log_case) ++seen_log;
                if (d.boundary_class == BoundaryClass::constrained) ++seen_constrained;
                if (d.boundary_class == BoundaryClass::free_case) ++seen_free;
                const double sum_dev =
                    std::fabs(d.exponent_plus + d.exponent_minus + (n - 1.0)) /
                    (1.0 + d.nu + n);
                need(sum_dev <= t, "exponent sum deviation " + fmt17(sum_dev) +
                                       " exceeds tolerance " + fmt17(t));
                const double prod_dev =
                    std::fabs(d.exponent_plus * d.exponent_minus + lambda) /
                    (1.0 + lambda);
                need(prod_dev <= t, "exponent product deviation " + fmt17(prod_dev) +
                                        " exceeds tolerance " + fmt17(t));
            }
        }
        need(seen_log > 0 && seen_constrained > 0 && seen_free > 0,
             "grid missed a boundary class: log=" + std::to_string(seen_log) +
                 " constrained=" + std::to_string(seen_constrained) +
                 " free=" + std::to_string(seen_free));
        return "classes on grid: log=" + std::to_string(seen_log) +
               " constrained=" + std::to_string(seen_constrained) +
               " free=" + std::to_string(seen_free);
    });

    s.run("exceptional-weights", [&] {
        const double t = s.tol(1e-12);
        const CrossSectionSpectrum cs = round_sphere(3);
        auto symmetric_increasing = [&](const std::vector<double>& w) {
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                need(w[i] < w[i + 1], "weights not strictly increasing");
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double dev = std::fabs(w[i] + w[w.size() - 1 - i]);
                need(dev <= t * (1.0 + std::fabs(w[i])),
                     "weight list asymmetric by " + fmt17(dev));
            }
        };

        const std::vector<double> conn = exceptional_weights(cs, WeightKind::connection);
        const std::vector<double> conn_want = {-4.0, -3.0, -2.0, -1.0, 1.0, 2.0, 3.0, 4.0};
        need(conn.size() == conn_want.size(),
             "expected " + std::to_string(conn_want.size()) + " connection weights, got " +
                 std::to_string(conn.size()));
        for (std::size_t i = 0; i < conn.size(); ++i)
            need(std::fabs(conn[i] - conn_want[i]) <= t * (1.0 + std::fabs(conn_want[i])),
                 "connection weight " + fmt17(conn[i]) + " differs from " +
                     fmt17(conn_want[i]));
        symmetric_increasing(conn);

        const std::vector<double> lich = exceptional_weights(cs, WeightKind::lichnerowicz);
        need(lich.size() == 18,
             "expected 18 lichnerowicz weights, got " + std::to_string(lich.size()));
        symmetric_increasing(lich);
        auto contains = [&](const std::vector<double>& w, double v) {
            for (double x : w)
                if (std::fabs(x - v) <= t * (1.0 + std::fabs(v))) return true;
            return false;
        };
        for (double anchor : {std::sqrt(7.0), std::sqrt(14.0), std::sqrt(23.0), 1.0})
            need(contains(lich, anchor) && contains(lich, -anchor),
                 "lichnerowicz family missing +/-" + fmt17(anchor));

        need(exceptional_weights_from({-2.0}, 3).empty(),
             "imaginary-weight entry was not skipped");
        const std::vector<double> edge = exceptional_weights_from({-1.0}, 3);
        need(edge.size() == 1 && std::fabs(edge[0]) <= t,
             "threshold entry should collapse to the single weight 0");
        return "connection family integral; lichnerowicz family merges every block";
    });

    // --- block forms --------------------------------------------------------

    s.run("oneform-block", [&] {
        double worst_min = 1e300;
        for (int n = 2; n <= 6; ++n) {
            const std::vector<double> deg = block_spectrum(oneform_form(n - 1.0, n));
            need(deg.size() == 1, "degenerate block should keep one direction");
            const double want = 2.0 * n + 2.0;
            need(std::fabs(deg[0] - want) <= s.tol(1e-9) * want,
                 "degenerate eigenvalue " + fmt17(deg[0]) + " differs from " + fmt17(want));
            for (double mu = n - 1.0 + 0.05; mu <= n + 8.0; mu += 0.31) {
                const std::vector<double> eigs = block_spectrum(oneform_form(mu, n));
                need(eigs.size() == 2, "expected a 2x2 spectrum");
                worst_min = std::min(worst_min, eigs[0]);
                need(eigs[0] > 0.0, "eigenvalue " + fmt17(eigs[0]) + " <= 0 at n=" +
                                        std::to_string(n) + " mu=" + fmt17(mu));
            }
        }
        return "smallest eigenvalue on grid " + fmt17(worst_min) + " > 0";
    });

    s.run("scalar-det-identity", [&] {
        const double t = s.tol(1e-10);
        double worst = 0.0;
        for (int n = 3; n <= 12; ++n) {
            for (double lambda = n + 0.25; lambda <= 6.0 * n; lambda += 0.25) {
                double m[9];
                scalar_rescaled_matrix(lambda, n, 0.0, m);
                if (opt.flip_scalar_corner) m[8] = -m[8];
                const double det =
                    m[0] * (m[4] * m[8] - m[5] * m[7]) -
                    m[1] * (m[3] * m[8] - m[5] * m[6]) +
                    m[2] * (m[3] * m[7] - m[4] * m[6]);
                const double ref = scalar_reduced_det(lambda, n);
                const double dev = std::fabs(det - ref) / std::max(1.0, std::fabs(ref));
                worst = std::max(worst, dev);
                need(dev <= t, "determinant deviation " + fmt17(dev) + " at n=" +
                                   std::to_string(n) + " lambda=" + fmt17(lambda) +
                                   " exceeds tolerance " + fmt17(t));
            }
        }
        return "max relative deviation " + fmt17(worst) + " (tolerance " + fmt17(t) + ")";
    });

    s.run("scalar-psd-boundary", [&] {
        const double t = s.tol(1e-8);
        double worst = 0.0;
        for (int n = 3; n <= 12; ++n) {
            const std::vector<double> eigs = block_spectrum(scalar_form(2.0 * n + 2.0, n, 0.0));
            need(eigs.size() == 3, "expected a 3x3 spectrum at the interval endpoint");
            worst = std::max(worst, std::fabs(eigs[0]));
            need(std::fabs(eigs[0]) <= t,
                 "near-kernel eigenvalue " + fmt17(eigs[0]) + " at n=" + std::to_string(n) +
                     " exceeds tolerance " + fmt17(t));
            need(eigs[1] > 0.0 && eigs[2] > 0.0,
                 "higher eigenvalues not positive at n=" + std::to_string(n));
        }
        return "max |near-kernel eigenvalue| " + fmt17(worst) + " (tolerance " + fmt17(t) + ")";
    });

    s.run("scalar-minors", [&] {
        double worst = 1e300;
        for (int n = 3; n <= 8; ++n) {
            for (double lambda = 2.0 * n + 2.25; lambda <= 6.0 * n; lambda += 0.5) {
                const std::vector<double> m = scalar_rescaled_minors(lambda, n);
                need(m.size() == 3, "expected three leading minors");
                for (double v : m) worst = std::min(worst, v);
                need(m[0] > 0.0 && m[1] > 0.0 && m[2] > 0.0,
                     "non-positive minor above the interval at n=" + std::to_string(n) +
                         " lambda=" + fmt17(lambda));
            }
        }
        return "smallest minor above the interval " + fmt17(worst) + " > 0";
    });

    // --- verdicts -----------------------------------------------------------

    s.run("sphere-verdict", [&] {
        for (int n : {3, 4, 5}) {
            const CrossSectionSpectrum cs = round_sphere(n);
            const StabilityVerdict v = tangential_verdict(cs);
            need(v.tangentially_stable, "sphere n=" + std::to_string(n) + " not stable");
            need(!v.strictly_tangentially_stable,
                 "sphere n=" + std::to_string(n) + " must not be strictly stable");
            need(v.einstein_positive && !v.gap_closed_ok,
                 "sphere n=" + std::to_string(n) + " flag pattern wrong");
            bool hit_left = false, hit_right = false;
            for (double w : v.offending_eigenvalues) {
                if (std::fabs(w - n) <= 1e-9) hit_left = true;
                if (std::fabs(w - (2.0 * n + 2.0)) <= 1e-9) hit_right = true;
            }
            need(hit_left && hit_right,
                 "sphere n=" + std::to_string(n) + " must offend at both endpoints");
            need(v.min_tangential_eigenvalue >= -s.tol(1e-8),
                 "sphere min tangential eigenvalue " + fmt17(v.min_tangential_eigenvalue) +
                     " below -tolerance");
        }
        return "n in {3,4,5}: stable, not strict, both endpoints reported";
    });

    s.run("verdict-implications", [&] {
        Rng rng(opt.seed);
        const double slack = s.tol(1e-8);
        for (int trial = 0; trial < 200; ++trial) {
            CrossSectionSpectrum cs;
            cs.n = 2 + static_cast<int>(rng.uniform() * 5.0);
            cs.label = "random";
            for (int i = 0; i < 3; ++i) cs.tt_einstein.push_back(rng.uniform(-1.0, 6.0));
            for (int i = 0; i < 3; ++i)
                cs.coclosed_oneforms.push_back(cs.n - 1.0 + rng.uniform(0.0, 6.0));
            cs.laplace.push_back(0.0);
            for (int i = 0; i < 3; ++i)
                cs.laplace.push_back(rng.uniform(1e-4, 3.0 * cs.n + 6.0));
            std::sort(cs.tt_einstein.begin(), cs.tt_einstein.end());
            std::sort(cs.coclosed_oneforms.begin(), cs.coclosed_oneforms.end());
            std::sort(cs.laplace.begin(), cs.laplace.end());

            const StabilityVerdict v = tangential_verdict(cs);
            const std::string where = " (trial " + std::to_string(trial) + ")";
            if (v.strictly_tangentially_stable)
                need(v.tangentially_stable, "strict without stable" + where);
            need(v.tangentially_stable == (v.einstein_nonneg && v.gap_open_ok),
                 "stable flag inconsistent with its parts" + where);
            need(v.strictly_tangentially_stable == (v.einstein_positive && v.gap_closed_ok),
                 "strict flag inconsistent with its parts" + where);
            need(v.gap_closed_ok == v.offending_eigenvalues.empty(),
                 "offending list inconsistent with the closed-interval flag" + where);
            for (std::size_t i = 0; i < v.offending_eigenvalues.size(); ++i) {
                const double w = v.offending_eigenvalues[i];
                need(w >= cs.n - slack && w <= 2.0 * cs.n + 2.0 + slack,
                     "offending eigenvalue " + fmt17(w) + " outside the interval" + where);
                if (i > 0)
                    need(w > v.offending_eigenvalues[i - 1],
                         "offending list not deduplicated" + where);
            }
            const double blocks_min = vec_min(tangential_block_eigenvalues(cs));
            need(std::fabs(blocks_min - v.min_tangential_eigenvalue) <=
                     s.tol(1e-12) * (1.0 + std::fabs(blocks_min)),
                 "verdict minimum disagrees with the block sweep" + where);
            const double guard = slack * (1.0 + std::fabs(v.min_tangential_eigenvalue));
            if (v.tangentially_stable)
                need(v.min_tangential_eigenvalue >= -guard,
                     "stable verdict with negative bound " +
                         fmt17(v.min_tangential_eigenvalue) + where);
            else
                need(v.min_tangential_eigenvalue <= guard,
                     "unstable verdict with positive bound " +
                         fmt17(v.min_tangential_eigenvalue) + where);
        }
        return "200 seeded spectra satisfy all verdict implications";
    });

    // --- catalog ------------------------------------------------------------

    s.run("catalog-tables", [&] {
        need(catalog_rows(1).size() == 11,
             "table 1 should carry 11 rows, found " + std::to_string(catalog_rows(1).size()));
        need(catalog_rows(2).size() == 35,
             "table 2 should carry 35 rows, found " + std::to_string(catalog_rows(2).size()));
        const TableReport r1 = reproduce_table(1, 3);
        const TableReport r2 = reproduce_table(2, 3);
        need(r1.all_match, "table 1 recomputation mismatch");
        need(r2.all_match, "table 2 recomputation mismatch");
        need(r1.rows.size() >= 11 && r2.rows.size() >= 35, "sample lists too short");
        return "11 + 35 rows, " + std::to_string(r1.rows.size() + r2.rows.size()) +
               " samples all match";
    });

    s.run("catalog-threshold", [&] {
        need(lambda_threshold(3) == 4.0, "threshold at d=3 must be exactly 4");
        double prev = lambda_threshold(3);
        for (long long d = 4; d <= 300; ++d) {
            const double th = lambda_threshold(d);
            need(th < prev, "threshold not strictly decreasing at d=" + std::to_string(d));
            need(th > 2.0, "threshold not above the limit 2 at d=" + std::to_string(d));
            prev = th;
        }
        bool threw = false;
        try {
            lambda_threshold(2);
        } catch (const domain_error&) {
            threw = true;
        }
        need(threw, "d=2 must be rejected");
        return "strictly decreasing on [3,300], limit 2 respected, d=2 rejected";
    });

    // --- radial models ------------------------------------------------------

    s.run("radial-oracle", [&] {
        const double t = s.tol(1e-4);
        double worst = 0.0;
        for (double nu : {0.0, 1.0}) {
            const RadialModel model = build_radial_model(nu, 0.0, 1000, 2.0);
            need(model.tip_dof == (nu == 0.0), "tip degree of freedom misassigned");
            const double e1 = friedrichs_eigenvalues(model, 1)[0];
            const double z = bessel_zero(nu, 1);
            const double rel = std::fabs(e1 - z * z) / (z * z);
            worst = std::max(worst, rel);
            need(rel <= t, "relative error " + fmt17(rel) + " at nu=" + fmt17(nu) +
                               " exceeds tolerance " + fmt17(t));
        }
        return "max relative error " + fmt17(worst) + " (tolerance " + fmt17(t) + ")";
    });

    s.run("radial-monotone", [&] {
        double prev = -1.0;
        std::string seen;
        for (double nu : {0.0, 0.5, 1.0, 2.0, 3.5}) {
            const RadialModel model = build_radial_model(nu, 0.0, 600, 2.0);
            const double e1 = friedrichs_eigenvalues(model, 1)[0];
            need(e1 > prev, "ground eigenvalue not increasing at nu=" + fmt17(nu));
            prev = e1;
            if (!seen.empty()) seen += ", ";
            seen += fmt17(e1);
        }
        return "ground eigenvalues strictly increase: " + seen;
    });

    s.run("heat-decay", [&] {
        const RadialModel model = build_radial_model(1.0, 0.0, 800, 2.0);
        const HeatReport rep = heat_decay_check(model, {0.3, 0.4, 0.7});
        need(rep.pass, "radial heat check failed: " + rep.failure);
        const double t = s.tol(1e-12);
        for (std::size_t i = 0; i < rep.times.size(); ++i) {
            const double want = std::exp(-rep.times[i] * rep.lambda1);
            need(std::fabs(rep.norms[i] - want) <= t * want,
                 "norm at t=" + fmt17(rep.times[i]) + " off the spectral value");
            need(rep.norms[i] <= rep.bounds[i] * (1.0 + t), "norm exceeds its bound");
        }
        const double semigroup =
            std::fabs(rep.norms[0] * rep.norms[1] - rep.norms[2]) / rep.norms[2];
        need(semigroup <= t, "semigroup product identity off by " + fmt17(semigroup));

        const Tridiag sd{{0.0, 1.0, 2.0}, {0.0, 0.0}};
        const Tridiag bd{{1.0, 1.0, 1.0}, {0.0, 0.0}};
        const HeatReport diag = heat_decay_check(sd, bd, 1, {1.0});
        need(diag.pass, "diagonal heat check failed: " + diag.failure);
        need(std::fabs(diag.lambda1 - 1.0) <= s.tol(1e-9),
             "first eigenvalue above the kernel should be 1, got " + fmt17(diag.lambda1));
        need(std::fabs(diag.cn_measured - std::exp(-1.0)) <= s.tol(1e-6),
             "time-stepped decay " + fmt17(diag.cn_measured) + " too far from exp(-1)");
        return "semigroup identities hold; Crank-Nicolson matches exp(-1) to " +
               fmt17(rep.cn_rel_error);
    });

    s.run("hardy-quotient", [&] {
        std::string seen;
        for (int n : {2, 3, 4, 6}) {
            const double q = hardy_quotient(n, 500, 2.0);
            const double bound = 4.0 / ((n - 1.0) * (n - 1.0));
            need(q <= bound * 1.02, "quotient " + fmt17(q) + " exceeds 1.02x the constant " +
                                        fmt17(bound) + " at n=" + std::to_string(n));
            need(q >= bound * 0.5, "quotient " + fmt17(q) + " implausibly small at n=" +
                                       std::to_string(n));
            if (!seen.empty()) seen += ", ";
            seen += fmt17(q / bound);
        }
        return "quotient/constant ratios: " + seen;
    });

    s.run("garding-window", [&] {
        const SchrodingerForms forms = plain_hat_forms(200, 2.0);
        const Tridiag doubled = tridiag_combine(forms.kinetic, 1.0, forms.kinetic);
        const GardingReport pure = garding_constants(doubled, forms.kinetic, forms.mass, 0);
        need(pure.hypothesis_ok, "doubled gradient form rejected");
        need(pure.eps1 >= 1.0 - 1e-6, "window should saturate, eps1=" + fmt17(pure.eps1));
        need(pure.eps2 > 0.0, "saturated window lost its margin");

        const SchrodingerForms f500 = plain_hat_forms(500, 2.0);
        const Tridiag s_full = schrodinger_stiffness(f500, 0.0, 1.0);
        const GardingReport schr = garding_constants(s_full, f500.kinetic, f500.mass, 0);
        need(schr.hypothesis_ok && schr.eps1 > 0.5 && schr.eps2 > 0.0,
             "positive-margin operator rejected: eps1=" + fmt17(schr.eps1) +
                 " eps2=" + fmt17(schr.eps2));

        const SchrodingerForms f800 = plain_hat_forms(800, 4.0);
        const Tridiag sub = schrodinger_stiffness(f800, 0.0, -0.05);
        const GardingReport bad = garding_constants(sub, f800.kinetic, f800.mass, 0);
        need(!bad.hypothesis_ok, "sub-threshold potential accepted");
        need(bad.eps2 < 0.0, "sub-threshold ground state not negative");
        return "eps1=" + fmt17(schr.eps1) + " eps2=" + fmt17(schr.eps2) +
               " for the model operator; sub-threshold ground " + fmt17(bad.eps2);
    });

    s.run("margin-formula", [&] {
        const double cap = 1.0 - 1e-6;
        for (const auto& [C, n] : std::vector<std::pair<double, int>>{
                 {0.0, 4}, {0.1, 2}, {1.0, 3}, {-0.74, 3}, {100.0, 5}}) {
            const double v = min_eps_margin(C, n);
            need(v == cap, "admissible margin C=" + fmt17(C) + ", n=" + std::to_string(n) +
                               " should cap at " + fmt17(cap) + ", got " + fmt17(v));
        }
        for (const auto& [C, n] : std::vector<std::pair<double, int>>{
                 {-2.0, 3}, {0.0, 2}, {-0.75, 3}}) {
            bool threw = false;
            try {
                min_eps_margin(C, n);
            } catch (const domain_error&) {
                threw = true;
            }
            need(threw, "C=" + fmt17(C) + ", n=" + std::to_string(n) + " must be rejected");
        }
        return "cap 1-1e-6 attained on the whole admissible range; threshold rejected";
    });

    s.run("margin-stability", [&] {
        std::string seen;
        for (const auto& [C, n] : std::vector<std::pair<double, int>>{
                 {0.1, 2}, {0.0, 3}, {1.0, 4}}) {
            const double nu2 = C + 0.25 * (n - 1.0) * (n - 1.0);
            const double eps = 0.9 * min_eps_margin(C, n);
            double ground[2];
            int idx = 0;
            for (int m : {400, 800}) {
                const SchrodingerForms f = plain_hat_forms(m, 2.0);
                ground[idx++] = ground_state(schrodinger_stiffness(f, eps, nu2), f.mass);
            }
            need(ground[0] > 0.0 && ground[1] > 0.0,
                 "interpolated operator lost positivity at C=" + fmt17(C));
            const double drop = (ground[0] - ground[1]) / std::fabs(ground[0]);
            need(std::fabs(drop) < 0.10,
                 "ground state moved " + fmt17(drop) + " under mesh doubling at C=" +
                     fmt17(C) + ", n=" + std::to_string(n));
            if (!seen.empty()) seen += ", ";
            seen += fmt17(drop);
        }
        return "relative moves under doubling: " + seen;
    });

    s.run("hardy-divergence", [&] {
        const SchrodingerForms f = plain_hat_forms(16000, 4.0);
        const Tridiag sub = schrodinger_stiffness(f, 0.0, -0.025);
        const double g = ground_state(sub, f.mass);
        need(g < -1e3, "ground state " + fmt17(g) + " not below -1e3 for the 10% "
                       "sub-threshold potential");
        return "ground state " + fmt17(g) + " < -1e3";
    });

    s.run("cone-spectrum", [&] {
        const double t = s.tol(1e-4);
        const CrossSectionSpectrum cs = round_sphere(3);
        const ConeSpectrumReport rep = model_cone_spectrum(cs, 2, 2, 800, 2.0);
        need(rep.rows.size() == 4, "expected 4 merged rows");
        double worst = 0.0;
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            const ConeModeRow& row = rep.rows[i];
            need(row.nu == nu_root(row.lambda, 3), "row nu inconsistent with its lambda");
            worst = std::max(worst, row.rel_error);
            need(row.rel_error <= t, "row error " + fmt17(row.rel_error) +
                                         " exceeds tolerance " + fmt17(t));
            if (i > 0)
                need(rep.rows[i - 1].eigenvalue <= row.eigenvalue, "rows not sorted");
        }
        need(rep.lambda1 == rep.rows.front().eigenvalue, "lambda1 must head the list");
        const ConeSpectrumReport one = model_cone_spectrum(cs, 1, 2, 800, 2.0);
        need(one.lambda1 == rep.lambda1,
             "adding tangential modes changed the bottom of the spectrum");
        return "4 rows sorted, max relative error " + fmt17(worst);
    });

    // --- flow surrogate -----------------------------------------------------

    s.run("flow-constants", [&] {
        const FlowConstants fc = choose_constants(4, 1.0, 1.0, 1.0);
        need(fc.mu == 1.0 / 64.0, "mu should be 2^-6, got " + fmt17(fc.mu));
        need(fc.T == 4.0, "T should be 4, got " + fmt17(fc.T));
        need(fc.epsilon == 1.0 / 128.0, "epsilon should be 2^-7, got " + fmt17(fc.epsilon));
        need(fc.T * fc.mu * fc.mu <= fc.mu / 4.0 * (1.0 + 1e-12), "quadratic budget broken");
        need(fc.epsilon <= fc.mu / 2.0 * (1.0 + 1e-12), "start budget broken");
        need(2.0 * fc.T * fc.mu <= 0.5 * (1.0 + 1e-12), "contraction budget broken");

        auto admissible = [](double mu, int N, double c, double ctld, double alpha) {
            const double T = std::min(1.0 / (c * N), 1.0) / (4.0 * mu * c * ctld);
            return c * std::exp(-alpha * T) < 1.0 / (2.0 * N);
        };
        need(admissible(1.0 / 128.0, 4, 1.0, 1.0, 1.0), "mu=2^-7 should be admissible");
        need(!admissible(1.0 / 32.0, 4, 1.0, 1.0, 1.0), "mu=2^-5 should be inadmissible");

        const FlowConstants steep = choose_constants(2, 1.0, 1.0, 1000.0);
        need(steep.mu == 1.0, "a steep gap should accept mu=1, got " + fmt17(steep.mu));

        double prev = 2.0;
        for (int N = 2; N <= 10; ++N) {
            const double mu = choose_constants(N, 1.0, 1.0, 1.0).mu;
            need(mu <= prev, "mu not monotone in N at N=" + std::to_string(N));
            prev = mu;
        }
        return "mu=2^-6, T=4, eps=2^-7 at (N=4, c=1, ct=1, alpha=1); budgets verified";
    });

    s.run("flow-tier-a", [&] {
        const SurrogateSystem sys = make_tier_a(1.0, 1.0, opt.seed);
        const FlowConstants fc = choose_constants(4, sys.c, sys.c_tilde, sys.alpha);
        const FlowTrace tr = restart_flow(sys, default_start(sys, fc.epsilon), 4, 0.1, 512);
        need(tr.converged, "flow did not converge");
        need(tr.legs.size() >= 3 && tr.legs.size() <= 64,
             "unexpected leg count " + std::to_string(tr.legs.size()));
        need(tr.max_picard_ratio <= tr.contraction_bound * 1.10 + 1e-6,
             "observed defect ratio " + fmt17(tr.max_picard_ratio) +
                 " above the contraction bound " + fmt17(tr.contraction_bound));
        need(tr.final_dist_to_h0 <= tr.R * (1.0 + 1e-9), "final point left the ball");
        need(tr.max_orth_residual <= s.tol(1e-12),
             "exact projection left residual " + fmt17(tr.max_orth_residual));

        SurrogateSystem frozen = sys;
        frozen.q_scale = 0.0;
        const FlowTrace lin = restart_flow(frozen, default_start(frozen, fc.epsilon),
                                           4, 0.1, 512);
        for (const FlowLeg& leg : lin.legs) {
            const double want =
                0.9 * lin.epsilon * std::exp(-frozen.alpha * lin.T * leg.k);
            need(std::fabs(leg.dist_g_to_pi - want) <=
                     opt.tolerance_scale * (1e-9 * want + 1e-15),
                 "linearized leg " + std::to_string(leg.k) + " distance " +
                     fmt17(leg.dist_g_to_pi) + " differs from " + fmt17(want));
        }
        return std::to_string(tr.legs.size()) + " legs, max defect ratio " +
               fmt17(tr.max_picard_ratio) + "; linearized distances follow exp(-alpha k T)";
    });

    s.run("flow-tier-b", [&] {
        const SurrogateSystem sys = make_tier_b(1.0, 1.0, opt.seed);
        need(sys.tier == 'B', "tier flag wrong");
        need(sys.c == 1.2, "declared projection constant should be 1.2");
        need(1.05 * sys.c_sampled <= sys.c,
             "sampled projection ratio " + fmt17(sys.c_sampled) + " breaks the cap");
        need(sys.c_tilde == 1.05 * sys.c_tilde_sampled, "certificate inflation missing");
        need(sys.c_tilde_sampled <= 1.0 + 1e-9,
             "sampled quadratic ratio " + fmt17(sys.c_tilde_sampled) +
                 " above the design bound 1");
        const double r = (sys.c + 1.0) / 4.0;
        need(std::fabs(r - 0.55) <= 1e-15, "per-leg gain should be 0.55, got " + fmt17(r));
        const FlowConstants fc = choose_constants(4, sys.c, sys.c_tilde, sys.alpha);
        const FlowTrace tr = restart_flow(sys, default_start(sys, fc.epsilon), 4, 0.1, 512);
        need(tr.converged, "tier B flow did not converge");
        need(tr.max_orth_residual <= s.tol(1e-10),
             "chart projection residual " + fmt17(tr.max_orth_residual) +
                 " above tolerance");
        return std::to_string(tr.legs.size()) + " legs, gain 0.55, certified ct=" +
               fmt17(sys.c_tilde) + ", max residual " + fmt17(tr.max_orth_residual);
    });

    s.run("flow-richardson", [&] {
        const SurrogateSystem sys = make_tier_a(1.0, 1.0, opt.seed);
        const FlowConstants fc = choose_constants(4, sys.c, sys.c_tilde, sys.alpha);
        const LocalFrame lf = local_frame(sys, std::vector<double>(sys.d, 0.0));
        std::vector<double> gmh(sys.m, 0.0);
        for (int i = 0; i < sys.m; ++i)
            gmh[i] = 0.9 * fc.epsilon * sys.frame[i * sys.m + sys.d];
        const PicardResult coarse = picard_fixed_point(sys, lf, gmh, fc.T, fc.mu, 512);
        const PicardResult fine = picard_fixed_point(sys, lf, gmh, fc.T, fc.mu, 1024);
        double dev = 0.0;
        for (int i = 0; i < sys.m; ++i) {
            const double d = coarse.omega.back()[i] - fine.omega.back()[i];
            dev += d * d;
        }
        dev = std::sqrt(dev);
        need(dev <= s.tol(1e-8), "leg endpoint moved " + fmt17(dev) +
                                     " when halving the time step");
        return "endpoint shift " + fmt17(dev) + " under step halving (tolerance " +
               fmt17(s.tol(1e-8)) + ")";
    });

    s.run("render-determinism", [&] {
        auto catalog_once = [] { return render_catalog_csv(reproduce_table(1, 2)); };
        need(catalog_once() == catalog_once(), "catalog CSV not reproducible");

        auto cone_once = [] {
            return render_cone_tsv(model_cone_spectrum(round_sphere(3), 1, 2, 200, 2.0).rows);
        };
        need(cone_once() == cone_once(), "radial TSV not reproducible");

        auto verdict_once = [] {
            const CrossSectionSpectrum cs = round_sphere(4);
            const StabilityVerdict v = tangential_verdict(cs);
            return render_verdict_json(v, cs.n, cs.label,
                                       exceptional_weights(cs, WeightKind::lichnerowicz));
        };
        need(verdict_once() == verdict_once(), "verdict JSON not reproducible");

        auto flow_once = [&] {
            const SurrogateSystem sys = make_tier_a(1.0, 1.0, opt.seed);
            const FlowConstants fc = choose_constants(4, sys.c, sys.c_tilde, sys.alpha);
            return render_flow_tsv(
                restart_flow(sys, default_start(sys, fc.epsilon), 4, 0.1, 256));
        };
        need(flow_once() == flow_once(), "flow TSV not reproducible");
        return "catalog, radial, verdict and flow renderings are byte-stable";
    });

    CheckReport report;
    report.options = options;
    report.results = std::move(s.results);
    report.all_pass = true;
    for (const CheckResult& r : report.results)
        if (!r.pass) report.all_pass = false;
    return report;
}

std::string render_check_report(const CheckReport& report) {
    char seed_hex[32];
    std::snprintf(seed_hex, sizeof seed_hex, "%llx",
                  static_cast<unsigned long long>(report.options.seed));
    std::string out = "invariant suite: seed=0x";
    out += seed_hex;
    out += " tolerance-scale=" + fmt17(report.options.tolerance_scale);
    out += std::string(" corner-flip=") + (report.options.flip_scalar_corner ? "on" : "off");
    out += "\n";
    int passed = 0;
    for (const CheckResult& r : report.results) {
        out += r.pass ? "PASS " : "FAIL ";
        out += r.name;
        out += ": ";
        out += r.detail;
        out += "\n";
        if (r.pass) ++passed;
    }
    out += "summary: " + std::to_string(passed) + "/" +
           std::to_string(report.results.size()) + " checks passed\n";
    return out;
}

} // namespace conelab
