#include "stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "smalleig.hpp"

namespace conelab {

namespace {

constexpr double kEndpointTol = 1e-9; // endpoint / degeneracy snapping tolerance
constexpr double kGramDropTol = 1e-12; // relative threshold for deleting directions

} // namespace

BlockForm tt_form(double kappa, int n) {
    if (n < 2) throw domain_error("tt_form: n must be >= 2");
    BlockForm b;
    b.kind = BlockKind::tt;
    b.parameter = kappa;
    b.n = n;
    b.size = 1;
    b.form[0] = kappa;
    b.gram[0] = 1.0;
    return b;
}

BlockForm oneform_form(double mu, int n) {
    if (n < 2) throw domain_error("oneform_form: n must be >= 2");
    if (mu <= 0.0) throw domain_error("oneform_form: mu must be positive");
    if (mu < static_cast<double>(n - 1) - kEndpointTol) {
        std::ostringstream os;
        os << "oneform_form: mu = " << mu << " below n-1 = " << (n - 1)
           << " gives a negative Gram weight; no Einstein cross-section produces such a mode";
        throw domain_error(os.str());
    }
    if (std::fabs(mu - static_cast<double>(n - 1)) <= kEndpointTol)
        mu = static_cast<double>(n - 1);
    const double a = mu - static_cast<double>(n - 1);
    BlockForm b;
    b.kind = BlockKind::oneform;
    b.parameter = mu;
    b.n = n;
    b.size = 2;
    b.form[0] = 0.5 * a * a;
    b.form[1] = -2.0 * a;
    b.form[2] = -2.0 * a;
    b.form[3] = 2.0 * mu + 2.0 * n + 6.0;
    b.gram[0] = 0.5 * a;
    b.gram[3] = 2.0;
    return b;
}

BlockForm scalar_form(double lambda, int n, double epsilon) {
    if (n < 2) throw domain_error("scalar_form: n must be >= 2");
    if (lambda < -kEndpointTol) throw domain_error("scalar_form: lambda must be >= 0");
    if (epsilon < 0.0 || epsilon >= 2.0)
        throw domain_error("scalar_form: epsilon must lie in [0, 2)");
    if (std::fabs(lambda) <= kEndpointTol) lambda = 0.0;
    if (std::fabs(lambda - n) <= kEndpointTol) lambda = static_cast<double>(n);
    if (lambda > 0.0 && lambda < static_cast<double>(n)) {
        std::ostringstream os;
        os << "scalar_form: lambda = " << lambda << " lies strictly between 0 and n = " << n
           << ", where the Gram weights turn negative; no Einstein cross-section "
           << "produces such a mode";
        throw domain_error(os.str());
    }
    const double L = lambda;
    const double nn = static_cast<double>(n);
    BlockForm b;
    b.kind = BlockKind::scalar;
    b.parameter = L;
    b.n = n;
    b.epsilon = epsilon;
    b.size = 3;
    const double w1 = nn * (nn - 1.0) * L * (L - nn);
    b.form[0] = w1 * (L - 2.0 * (nn - 1.0) - epsilon);          // a11
    b.form[1] = -4.0 * (nn - 1.0) * L * (L - nn);               // a12
    b.form[2] = 0.0;                                            // a13
    b.form[3] = b.form[1];
    b.form[4] = 2.0 * L * (L + 4.0 - epsilon);                  // a22
    b.form[5] = 4.0 * (nn + 1.0) * L;                           // a23
    b.form[6] = 0.0;
    b.form[7] = b.form[5];
    b.form[8] = nn * ((nn + 1.0) * L - 2.0 * (nn - 1.0) - epsilon * (nn + 1.0) +
                      2.0 * nn * (nn + 3.0));                   // a33
    b.gram[0] = w1;
    b.gram[4] = 2.0 * L;
    b.gram[8] = nn * (nn + 1.0);
    return b;
}

double scalar_reduced_det(double lambda, int n) {
    if (lambda < 0.0) throw domain_error("scalar_reduced_det: lambda must be >= 0");
    if (n < 2) throw domain_error("scalar_reduced_det: n must be >= 2");
    const double nn = static_cast<double>(n);
    return lambda * nn * nn * (lambda - 2.0 * nn - 2.0) * (lambda + 2.0 * nn - 6.0);
}

// Column-rescaled scalar matrix: columns of A divided by (n-1)L(L-n), 2L, n+1.
// Entries written out directly so the rescaling never divides by the
// vanishing weights.
void scalar_rescaled_matrix(double L, int n, double eps, double m[9]) {
    if (n < 2) throw domain_error("scalar_rescaled_matrix: n must be >= 2");
    const double nn = static_cast<double>(n);
    m[0] = nn * (L - 2.0 * (nn - 1.0) - eps);   // a11 / ((n-1)L(L-n))
    m[1] = -2.0 * (nn - 1.0) * (L - nn);        // a12 / (2L)
    m[2] = 0.0;                                 // a13 / (n+1)
    m[3] = -4.0;                                // a12 / ((n-1)L(L-n))
    m[4] = L + 4.0 - eps;                       // a22 / (2L)
    m[5] = 4.0 * L;                             // a23 / (n+1)
    m[6] = 0.0;                                 // a13 / ((n-1)L(L-n))
    m[7] = 2.0 * (nn + 1.0);                    // a23 / (2L)
    m[8] = (nn * ((nn + 1.0) * L - 2.0 * (nn - 1.0) - eps * (nn + 1.0) +
                  2.0 * nn * (nn + 3.0))) / (nn + 1.0); // a33 / (n+1)
}

double scalar_rescaled_det(double lambda, int n, double epsilon) {
    if (n < 2) throw domain_error("scalar_rescaled_det: n must be >= 2");
    if (lambda < 0.0) throw domain_error("scalar_rescaled_det: lambda must be >= 0");
    if (std::fabs(lambda) <= kEndpointTol || std::fabs(lambda - n) <= kEndpointTol)
        throw domain_error("scalar_rescaled_det: lambda in {0, n} degenerates the rescaling");
    double m[9];
    scalar_rescaled_matrix(lambda, n, epsilon, m);
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

std::vector<double> scalar_rescaled_minors(double lambda, int n) {
    if (n < 2) throw domain_error("scalar_rescaled_minors: n must be >= 2");
    double m[9];
    scalar_rescaled_matrix(lambda, n, 0.0, m);
    const double m1 = m[0];
    const double m2 = m[0] * m[4] - m[1] * m[3];
    const double m3 = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                      m[2] * (m[3] * m[7] - m[4] * m[6]);
    return {m1, m2, m3};
}

std::vector<double> block_spectrum(const BlockForm& block) {
    if (block.size < 1 || block.size > 3)
        throw internal_error("block_spectrum: block size out of range");
    const int s = block.size;
    double scale = 0.0;
    for (int i = 0; i < s; ++i) scale = std::max(scale, std::fabs(block.gram[i * s + i]));
    if (scale == 0.0) throw internal_error("block_spectrum: zero Gram matrix");

    // Keep directions with a genuinely positive Gram weight.
    int keep[3];
    int k = 0;
    for (int i = 0; i < s; ++i) {
        const double g = block.gram[i * s + i];
        if (g > kGramDropTol * scale) {
            keep[k++] = i;
        } else if (g < -kGramDropTol * scale) {
            throw internal_error("block_spectrum: negative Gram weight after reduction");
        }
    }
    if (k == 0) throw internal_error("block_spectrum: all directions degenerate");

    // Congruence transform to a standard symmetric problem.
    double c[9];
    for (int i = 0; i < k; ++i) {
        const double di = std::sqrt(block.gram[keep[i] * s + keep[i]]);
        for (int j = 0; j < k; ++j) {
            const double dj = std::sqrt(block.gram[keep[j] * s + keep[j]]);
            c[i * k + j] = block.form[keep[i] * s + keep[j]] / (di * dj);
        }
    }
    return sym_eigenvalues(c, k);
}

std::vector<double> tangential_block_eigenvalues(const CrossSectionSpectrum& spectrum) {
    spectrum.validate();
    std::vector<double> merged;
    for (double kappa : spectrum.tt_einstein) {
        const auto th = block_spectrum(tt_form(kappa, spectrum.n));
        merged.insert(merged.end(), th.begin(), th.end());
    }
    for (double mu : spectrum.coclosed_oneforms) {
        const auto th = block_spectrum(oneform_form(mu, spectrum.n));
        merged.insert(merged.end(), th.begin(), th.end());
    }
    for (double lam : spectrum.laplace) {
        if (lam > kEndpointTol && lam < static_cast<double>(spectrum.n) - kEndpointTol)
            continue; // sub-n scalar mode: flagged by validate(), no valid block form
        const auto th = block_spectrum(scalar_form(lam, spectrum.n, 0.0));
        merged.insert(merged.end(), th.begin(), th.end());
    }
    std::sort(merged.begin(), merged.end());
    return merged;
}

StabilityVerdict tangential_verdict(const CrossSectionSpectrum& spectrum) {
    StabilityVerdict v;
    v.diagnostics = spectrum.validate();

    // Einstein condition on the TT spectrum (vacuous when no data given).
    if (spectrum.tt_einstein.empty()) {
        v.einstein_nonneg = true;
        v.einstein_positive = true;
        v.diagnostics.push_back(
            "tt_einstein list empty: Einstein condition is vacuously true");
    } else {
        const double kmin = spectrum.tt_einstein.front();
        v.einstein_nonneg = kmin >= -kEndpointTol;
        v.einstein_positive = kmin > kEndpointTol;
    }

    // Gap condition on the nonzero Laplace spectrum.
    const double n = static_cast<double>(spectrum.n);
    const double hi = 2.0 * (n + 1.0);
    bool open_violation = false;
    bool closed_violation = false;
    std::vector<double> offenders;
    for (double lam : spectrum.laplace) {
        if (lam <= kEndpointTol) continue; // the zero mode is exempt
        const bool in_closed = lam >= n - kEndpointTol && lam <= hi + kEndpointTol;
        const bool on_endpoint =
            std::fabs(lam - n) <= kEndpointTol || std::fabs(lam - hi) <= kEndpointTol;
        if (in_closed) {
            closed_violation = true;
            offenders.push_back(lam);
            if (!on_endpoint) open_violation = true;
        }
    }
    v.gap_open_ok = !open_violation;
    v.gap_closed_ok = !closed_violation;
    v.offending_eigenvalues = dedup_sorted(std::move(offenders));

    v.tangentially_stable = v.einstein_nonneg && v.gap_open_ok;
    v.strictly_tangentially_stable = v.einstein_positive && v.gap_closed_ok;

    const auto blocks = tangential_block_eigenvalues(spectrum);
    v.min_tangential_eigenvalue = blocks.front();
    return v;
}

std::vector<double> exceptional_weights(const CrossSectionSpectrum& spectrum, WeightKind kind) {
    spectrum.validate();
    if (kind == WeightKind::connection)
        return exceptional_weights_from(spectrum.laplace, spectrum.n);
    return exceptional_weights_from(tangential_block_eigenvalues(spectrum), spectrum.n);
}

} // namespace conelab
