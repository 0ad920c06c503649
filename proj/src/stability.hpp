#pragma once

#include <string>
#include <vector>

#include "spectral.hpp"

namespace conelab {

// The tangential operator acts block-diagonally on three kinds of
// cross-section data; each block is a small quadratic form together with the
// (diagonal) Gram matrix of its natural, non-orthonormal basis:
//   tt      - 1x1, parameter kappa: Einstein-operator eigenvalue on TT tensors;
//   oneform - 2x2, parameter mu: connection-Laplacian eigenvalue on coclosed
//             1-forms;
//   scalar  - 3x3, parameter lambda: Laplace-Beltrami eigenvalue, with an
//             optional shift parameter epsilon in [0,2) entering the diagonal.
enum class BlockKind { tt, oneform, scalar };

struct BlockForm {
    BlockKind kind = BlockKind::tt;
    double parameter = 0.0;
    int n = 0;
    double epsilon = 0.0; // scalar blocks only
    int size = 0;         // 1, 2 or 3
    double form[9] = {};  // row-major, symmetric
    double gram[9] = {};  // row-major, diagonal PSD
};

// kappa block: form [kappa], gram [1].
BlockForm tt_form(double kappa, int n);

// mu block: form [[ (mu-(n-1))^2/2, -2(mu-(n-1)) ], [ -2(mu-(n-1)), 2mu+2n+6 ]],
// gram diag( (mu-(n-1))/2, 2 ). mu must be positive and at least n-1: below
// n-1 the Gram weight of the first direction would be negative, which the
// underlying norm computation rules out for a valid cross-section; such
// inputs are rejected with a diagnostic. mu within 1e-9 of n-1 is snapped to
// exactly n-1 (degenerate first direction).
BlockForm oneform_form(double mu, int n);

// lambda block: 3x3 matrix A with
//   a11 = n(n-1)L(L-n)[L-2(n-1)-eps], a12 = -4(n-1)L(L-n),           a13 = 0,
//   a22 = 2L[L+4-eps],                a23 = 4(n+1)L,
//   a33 = n[(n+1)L - 2(n-1) - eps(n+1) + 2n(n+3)],
// gram diag( n(n-1)L(L-n), 2L, n(n+1) ). Defined for L = 0 or L >= n (the
// Gram weights are negative in between, which cannot occur for an Einstein
// cross-section); lambda within 1e-9 of 0 or n is snapped to the degenerate
// value. eps must lie in [0,2): the a33 > 0 argument needs eps < 2.
BlockForm scalar_form(double lambda, int n, double epsilon);

// The factored determinant lambda*n^2*(lambda-2n-2)*(lambda+2n-6) that the
// column-rescaled scalar matrix must reproduce at eps = 0.
double scalar_reduced_det(double lambda, int n);

// Column-rescaled scalar matrix M itself (row-major 3x3): columns of A
// divided by (n-1)*lambda*(lambda-n), 2*lambda, n+1, with every entry written
// division-free so the weights may vanish. Exposed so diagnostics can perturb
// individual entries and watch the determinant identity break.
void scalar_rescaled_matrix(double lambda, int n, double epsilon, double out[9]);

// Direct 3x3 determinant of the column-rescaled scalar matrix M (columns of
// A divided by (n-1)*lambda*(lambda-n), 2*lambda, n+1). Requires lambda
// outside {0, n} so the rescaling is non-degenerate.
double scalar_rescaled_det(double lambda, int n, double epsilon);

// Leading principal minors (orders 1..3) of the rescaled matrix at eps = 0.
std::vector<double> scalar_rescaled_minors(double lambda, int n);

// Generalized eigenvalues of (form, gram), ascending. Directions whose Gram
// diagonal entry vanishes (below 1e-12 relative to the largest entry) are
// deleted first; a negative Gram entry after that reduction signals a
// construction bug and raises internal_error. Solved in closed form via the
// congruence gram^{-1/2} * form * gram^{-1/2}.
std::vector<double> block_spectrum(const BlockForm& block);

struct StabilityVerdict {
    bool tangentially_stable = false;
    bool strictly_tangentially_stable = false;
    bool einstein_nonneg = false;   // all kappa >= 0 (vacuous if list empty)
    bool einstein_positive = false; // all kappa > 0
    bool gap_open_ok = false;       // no nonzero lambda strictly inside (n, 2(n+1))
    bool gap_closed_ok = false;     // no nonzero lambda in [n, 2(n+1)]
    // Nonzero Laplace eigenvalues in the closed interval [n, 2(n+1)]
    // (endpoint tolerance 1e-9), deduplicated.
    std::vector<double> offending_eigenvalues;
    // Infimum of all block spectra: the constant C in the lower bound for
    // the tangential operator on trace-free tensors.
    double min_tangential_eigenvalue = 0.0;
    std::vector<std::string> diagnostics;
};

// The decision procedure: stable iff the TT spectrum is nonnegative and no
// nonzero Laplace eigenvalue falls strictly inside (n, 2(n+1)); strictly
// stable iff the TT spectrum is positive and the closed interval
// [n, 2(n+1)] is avoided. Eigenvalues within 1e-9 of an endpoint count as
// on the endpoint (affects the strict verdict only).
StabilityVerdict tangential_verdict(const CrossSectionSpectrum& spectrum);

// Which eigenvalue family feeds the Fredholm-weight computation.
enum class WeightKind {
    lichnerowicz, // merged spectra of all tangential blocks
    connection    // raw Laplace eigenvalues
};

std::vector<double> exceptional_weights(const CrossSectionSpectrum& spectrum, WeightKind kind);

// All tangential block eigenvalues of a spectrum, merged and sorted
// ascending (multiplicities kept). Scalar blocks are built at eps = 0;
// Laplace eigenvalues in (0, n) are skipped, mirroring tangential_verdict.
std::vector<double> tangential_block_eigenvalues(const CrossSectionSpectrum& spectrum);

} // namespace conelab
