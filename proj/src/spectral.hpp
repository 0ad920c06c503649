#pragma once

#include <string>
#include <vector>

namespace conelab {

// Spectral data of a compact cross-section: its dimension n plus the leading
// eigenvalue lists (ascending, multiplicities as repeated entries) of the
// Einstein operator on TT tensors (kappa), the connection Laplacian on
// coclosed 1-forms (mu), and the Laplace-Beltrami operator on functions
// (lambda, starting at 0 for the constants).
struct CrossSectionSpectrum {
    int n = 0;
    std::vector<double> tt_einstein;
    std::vector<double> coclosed_oneforms;
    std::vector<double> laplace;
    std::string label;

    // Structural validation. Throws domain_error on hard violations
    // (n < 2, unsorted lists, mu <= 0, missing/nonzero leading Laplace
    // entry). Returns non-fatal warnings, e.g. nonzero Laplace eigenvalues
    // below n, which cannot occur for an Einstein cross-section but are
    // allowed through for synthetic data.
    std::vector<std::string> validate() const;
};

// Boundary-condition class of a mode at the cone tip under the form-closure
// (Friedrichs) extension.
enum class BoundaryClass {
    log_case,    // nu = 0: power and log branch; log branch excluded
    constrained, // nu in (0,1): decaying branch selected by the form domain
    free_case    // nu >= 1: the maximal domain already forces the choice
};

const char* boundary_class_name(BoundaryClass c);

struct IndicialData {
    double lambda = 0.0;
    double nu = 0.0;
    double exponent_plus = 0.0;  //  nu - (n-1)/2
    double exponent_minus = 0.0; // -nu - (n-1)/2
    BoundaryClass boundary_class = BoundaryClass::free_case;
};

// Indicial root sqrt(lambda + ((n-1)/2)^2) of the mode equation on the model
// cone. Strictly increasing in lambda. Requires lambda >= 0 and n >= 2.
double nu_root(double lambda, int n);

// Indicial data plus boundary class for a mode. Accepts n >= 1 (n = 1 is the
// degenerate cross-section where nu(0) = 0 produces the log case).
IndicialData friedrichs_classification(double lambda, int n);

// Sorts a copy, deduplicates with absolute tolerance 1e-9 (the library-wide
// multiplicity-collapsing tolerance).
std::vector<double> dedup_sorted(std::vector<double> values);

// Fredholm-obstruction weights {+-sqrt(theta + ((n-1)/2)^2)} over a
// tangential eigenvalue list, deduplicated and sorted. Entries with
// theta < -((n-1)/2)^2 would give imaginary weights and are skipped.
// Throws domain_error when the list is empty.
std::vector<double> exceptional_weights_from(const std::vector<double>& tangential, int n);

} // namespace conelab
