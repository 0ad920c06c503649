#pragma once

#include <string>
#include <utility>
#include <vector>

namespace conelab {

// Stability labels as printed in the classification tables.
enum class Label { unstable, stable, strictly_stable };

const char* label_text(Label l); // "unstable" / "stable" / "s. stable"

// Exact rational, reduced on construction. Catalog normalized eigenvalues
// are stored this way so threshold comparisons are integer arithmetic.
struct Rational {
    long long num = 0;
    long long den = 1;
    Rational() = default;
    Rational(long long n, long long d);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string text() const; // "num/den", or "num" when den == 1
};

// One row of the classification tables. Closed-form data as printed, plus a
// corrected dimension where the printed formula deviates from the standard
// dimension of the space (the labels must match under both).
struct CatalogRow {
    int table = 1;              // 1 = simple groups, 2 = non-group symmetric spaces
    const char* family = "";    // e.g. "Spin(2p+1)" or "SO(7)/(SO(4)xSO(3))"
    const char* cartan = "";    // e.g. "B", "E VI"
    const char* domain = "";    // parameter constraint, e.g. "p >= 4"
    int arity = 0;              // number of free integer parameters (0, 1, 2)
    bool (*admissible)(long long p, long long q) = nullptr;
    long long (*dim_printed)(long long p, long long q) = nullptr;
    long long (*dim_corrected)(long long p, long long q) = nullptr;
    Rational (*lambda_normalized)(long long p, long long q) = nullptr;
    Label einstein = Label::unstable;   // operative Einstein-stability label
    Label tangential = Label::unstable; // expected tangential-stability label
    const char* note = "";              // data quirks (printed-label/dim deviations)
};

const std::vector<CatalogRow>& catalog_rows(int table); // table in {1, 2}

// Gap threshold 2(d+1)/(d-1) on the normalized eigenvalue scale.
double lambda_threshold(long long d); // d >= 3, else domain error

// The tangential label implied by the Einstein label and the normalized
// eigenvalue: strictly stable needs a strictly stable Einstein metric AND
// lambda_abs = Lambda*(d-1) strictly outside [d, 2(d+1)]; stable needs at
// least a stable Einstein metric AND lambda_abs outside the open interval;
// anything else is unstable. Evaluated exactly in integer arithmetic.
Label recompute_label(Label einstein, const Rational& lambda, long long d);

// The `count` smallest admissible parameter assignments of a row, ordered by
// (p+q, p) for two-parameter families. Fewer are returned when the domain is
// finite.
std::vector<std::pair<long long, long long>> sample_params(const CatalogRow& row, int count);

struct RowSample {
    const CatalogRow* row = nullptr;
    long long p = 0, q = 0;
    long long dim_printed = 0;
    long long dim_corrected = 0;
    Rational lambda;
    Label recomputed_printed = Label::unstable;   // under the printed dimension
    Label recomputed_corrected = Label::unstable; // under the corrected dimension
    bool match = false; // both recomputed labels equal the expected tangential label
    std::string params_text() const;
};

struct TableReport {
    int table = 1;
    int samples = 1;
    std::vector<RowSample> rows;
    bool all_match = false;
};

// Recomputes every row of a table at `samples` parameter values per family.
TableReport reproduce_table(int which, int samples);

} // namespace conelab
