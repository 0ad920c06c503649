#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace conelab {

namespace {

bool is_sorted_ascending(const std::vector<double>& v) {
    return std::is_sorted(v.begin(), v.end());
}

} // namespace

std::vector<std::string> CrossSectionSpectrum::validate() const {
    if (n < 2) throw domain_error("spectrum: cross-section dimension n must be >= 2");
    if (!is_sorted_ascending(tt_einstein))
        throw domain_error("spectrum: tt_einstein must be sorted ascending");
    if (!is_sorted_ascending(coclosed_oneforms))
        throw domain_error("spectrum: coclosed_oneforms must be sorted ascending");
    if (!is_sorted_ascending(laplace))
        throw domain_error("spectrum: laplace must be sorted ascending");
    if (laplace.empty())
        throw domain_error("spectrum: laplace must be nonempty (leading entry 0)");
    if (std::fabs(laplace.front()) > 1e-12)
        throw domain_error("spectrum: leading laplace eigenvalue must be 0");
    for (double mu : coclosed_oneforms)
        if (mu <= 0.0)
            throw domain_error("spectrum: coclosed one-form eigenvalues must be positive");

    std::vector<std::string> warnings;
    for (double lam : laplace) {
        if (lam > 1e-9 && lam < static_cast<double>(n) - 1e-9) {
            std::ostringstream os;
            os << "laplace eigenvalue " << lam << " lies in (0, n): impossible for an "
               << "Einstein cross-section (lowest-eigenvalue bound); scalar block skipped";
            warnings.push_back(os.str());
        }
    }
    return warnings;
}

const char* boundary_class_name(BoundaryClass c) {
    switch (c) {
    case BoundaryClass::log_case: return "log-case";
    case BoundaryClass::constrained: return "constrained";
    case BoundaryClass::free_case: return "free";
    }
    return "?";
}

double nu_root(double lambda, int n) {
    if (lambda < 0.0) throw domain_error("nu_root: lambda must be >= 0");
    if (n < 2) throw domain_error("nu_root: n must be >= 2");
    const double half = 0.5 * (n - 1);
    return std::sqrt(lambda + half * half);
}

IndicialData friedrichs_classification(double lambda, int n) {
    if (lambda < 0.0) throw domain_error("friedrichs_classification: lambda must be >= 0");
    if (n < 1) throw domain_error("friedrichs_classification: n must be >= 1");
    const double half = 0.5 * (n - 1);
    IndicialData d;
    d.lambda = lambda;
    d.nu = std::sqrt(lambda + half * half);
    d.exponent_plus = d.nu - half;
    d.exponent_minus = -d.nu - half;
    if (d.nu == 0.0)
        d.boundary_class = BoundaryClass::log_case;
    else if (d.nu < 1.0)
        d.boundary_class = BoundaryClass::constrained;
    else
        d.boundary_class = BoundaryClass::free_case;
    return d;
}

std::vector<double> dedup_sorted(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    for (double v : values) {
        if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
    }
    return out;
}

std::vector<double> exceptional_weights_from(const std::vector<double>& tangential, int n) {
    if (tangential.empty())
        throw domain_error("exceptional_weights: empty tangential eigenvalue list");
    if (n < 2) throw domain_error("exceptional_weights: n must be >= 2");
    const double half = 0.5 * (n - 1);
    std::vector<double> weights;
    for (double theta : tangential) {
        const double rad = theta + half * half;
        if (rad < 0.0) continue; // imaginary weight: outside the real weight set
        const double w = std::sqrt(rad);
        weights.push_back(w);
        weights.push_back(-w);
    }
    return dedup_sorted(std::move(weights));
}

} // namespace conelab
