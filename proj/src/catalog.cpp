#include "catalog.hpp"

#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace conelab {

const char* label_text(Label l) {
    switch (l) {
    case Label::unstable: return "unstable";
    case Label::stable: return "stable";
    case Label::strictly_stable: return "s. stable";
    }
    return "?";
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

std::string Rational::text() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << "/" << den;
    return os.str();
}

double lambda_threshold(long long d) {
    if (d < 3) throw domain_error("lambda_threshold: dimension must be >= 3");
    return 2.0 * static_cast<double>(d + 1) / static_cast<double>(d - 1);
}

Label recompute_label(Label einstein, const Rational& lambda, long long d) {
    if (d < 2) throw domain_error("recompute_label: dimension must be >= 2");
    if (lambda.num <= 0) throw domain_error("recompute_label: Lambda must be positive");
    // lambda_abs = Lambda*(d-1) against d and 2(d+1), denominators cleared.
    const long long lhs = lambda.num * (d - 1);
    const long long lo = lambda.den * d;
    const long long hi = lambda.den * 2 * (d + 1);
    const bool outside_closed = lhs < lo || lhs > hi;
    const bool outside_open = lhs <= lo || lhs >= hi;
    if (einstein == Label::strictly_stable && outside_closed) return Label::strictly_stable;
    if (einstein != Label::unstable && outside_open) return Label::stable;
    return Label::unstable;
}

namespace {

using LL = long long;

// ---- Table 1: simple Lie groups --------------------------------------------

const std::vector<CatalogRow> kTable1 = {
    {1, "SU(p+1)", "A_p", "p >= 2", 1,
     +[](LL p, LL) { return p >= 2; },
     +[](LL p, LL) { return p * p - 1; },
     +[](LL p, LL) { return p * (p + 2); },
     +[](LL p, LL) { return Rational(2 * p * (p + 2), (p + 1) * (p + 1)); },
     Label::unstable, Label::unstable,
     "printed dim p^2-1; standard dim is p(p+2)"},
    {1, "Spin(5)", "B", "", 0, nullptr,
     +[](LL, LL) { return LL{10}; }, +[](LL, LL) { return LL{10}; },
     +[](LL, LL) { return Rational(5, 3); },
     Label::unstable, Label::unstable, ""},
    {1, "Spin(7)", "B", "", 0, nullptr,
     +[](LL, LL) { return LL{21}; }, +[](LL, LL) { return LL{21}; },
     +[](LL, LL) { return Rational(21, 10); },
     Label::strictly_stable, Label::unstable, ""},
    {1, "Spin(2p+1)", "B", "p >= 4", 1,
     +[](LL p, LL) { return p >= 4; },
     +[](LL p, LL) { return 2 * p * (p + 1); },
     +[](LL p, LL) { return p * (2 * p + 1); },
     +[](LL p, LL) { return Rational(4 * p, 2 * p - 1); },
     Label::strictly_stable, Label::strictly_stable,
     "printed dim 2p(p+1); standard dim is p(2p+1)"},
    {1, "Sp(p)", "C_p", "p >= 3", 1,
     +[](LL p, LL) { return p >= 3; },
     +[](LL p, LL) { return p * (2 * p + 1); },
     +[](LL p, LL) { return p * (2 * p + 1); },
     +[](LL p, LL) { return Rational(2 * p + 1, p + 1); },
     Label::unstable, Label::unstable, ""},
    {1, "Spin(2p)", "D_p", "p >= 3", 1,
     +[](LL p, LL) { return p >= 3; },
     +[](LL p, LL) { return p * (2 * p + 1); },
     +[](LL p, LL) { return p * (2 * p - 1); },
     +[](LL p, LL) { return Rational(2 * p - 1, p - 1); },
     Label::strictly_stable, Label::strictly_stable,
     "printed dim p(2p+1); standard dim is p(2p-1)"},
    {1, "E6", "E_6", "", 0, nullptr,
     +[](LL, LL) { return LL{156}; }, +[](LL, LL) { return LL{78}; },
     +[](LL, LL) { return Rational(26, 9); },
     Label::strictly_stable, Label::strictly_stable,
     "printed dim 156; standard dim is 78"},
    {1, "E7", "E_7", "", 0, nullptr,
     +[](LL, LL) { return LL{266}; }, +[](LL, LL) { return LL{133}; },
     +[](LL, LL) { return Rational(19, 6); },
     Label::strictly_stable, Label::strictly_stable,
     "printed dim 266; standard dim is 133"},
    {1, "E8", "E_8", "", 0, nullptr,
     +[](LL, LL) { return LL{496}; }, +[](LL, LL) { return LL{248}; },
     +[](LL, LL) { return Rational(4, 1); },
     Label::strictly_stable, Label::strictly_stable,
     "printed dim 496; standard dim is 248"},
    {1, "F4", "F_4", "", 0, nullptr,
     +[](LL, LL) { return LL{52}; }, +[](LL, LL) { return LL{52}; },
     +[](LL, LL) { return Rational(8, 3); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {1, "G2", "G_2", "", 0, nullptr,
     +[](LL, LL) { return LL{14}; }, +[](LL, LL) { return LL{14}; },
     +[](LL, LL) { return Rational(2, 1); },
     Label::stable, Label::unstable, ""},
};

// ---- Table 2: symmetric spaces of non-group type ----------------------------

const std::vector<CatalogRow> kTable2 = {
    {2, "SU(p)/SO(p)", "A I", "3 <= p <= 5", 1,
     +[](LL p, LL) { return p >= 3 && p <= 5; },
     +[](LL p, LL) { return (p - 1) * (p + 2) / 2; },
     +[](LL p, LL) { return (p - 1) * (p + 2) / 2; },
     +[](LL p, LL) { return Rational(2 * (p - 1) * (p + 2), p * p); },
     Label::stable, Label::unstable, ""},
    {2, "SU(p)/SO(p)", "A I", "p >= 6", 1,
     +[](LL p, LL) { return p >= 6; },
     +[](LL p, LL) { return (p - 1) * (p + 2) / 2; },
     +[](LL p, LL) { return (p - 1) * (p + 2) / 2; },
     +[](LL p, LL) { return Rational(2 * (p - 1) * (p + 2), p * p); },
     Label::strictly_stable, Label::strictly_stable,
     "Einstein column printed as stable; the strict classification statement and the "
     "tangential label require s. stable, which is stored as operative"},
    {2, "SU(4)/Sp(2)=S^5", "A II", "", 0, nullptr,
     +[](LL, LL) { return LL{5}; }, +[](LL, LL) { return LL{5}; },
     +[](LL, LL) { return Rational(5, 4); },
     Label::strictly_stable, Label::stable, ""},
    {2, "SU(2p)/Sp(p)", "A II", "p >= 3", 1,
     +[](LL p, LL) { return p >= 3; },
     +[](LL p, LL) { return 2 * p * p - p - 1; },
     +[](LL p, LL) { return 2 * p * p - p - 1; },
     +[](LL p, LL) { return Rational((2 * p + 1) * (p - 1), p * p); },
     Label::unstable, Label::unstable, ""},
    {2, "U(p+1)/(U(p)xU(1))=CP^p", "A III", "p >= 2", 1,
     +[](LL p, LL) { return p >= 2; },
     +[](LL p, LL) { return 2 * p; }, +[](LL p, LL) { return 2 * p; },
     +[](LL, LL) { return Rational(2, 1); },
     Label::stable, Label::unstable, ""},
    {2, "U(p+q)/(U(q)xU(p))", "A III", "q >= p >= 2", 2,
     +[](LL p, LL q) { return p >= 2 && q >= p; },
     +[](LL p, LL q) { return 2 * p * q; }, +[](LL p, LL q) { return 2 * p * q; },
     +[](LL, LL) { return Rational(2, 1); },
     Label::stable, Label::unstable, ""},
    {2, "SO(5)/(SO(3)xSO(2))", "B I", "", 0, nullptr,
     +[](LL, LL) { return LL{6}; }, +[](LL, LL) { return LL{6}; },
     +[](LL, LL) { return Rational(2, 1); },
     Label::unstable, Label::unstable, ""},
    {2, "SO(2p+3)/(SO(2p+1)xSO(2))", "B I", "p >= 2", 1,
     +[](LL p, LL) { return p >= 2; },
     +[](LL p, LL) { return 4 * p + 2; }, +[](LL p, LL) { return 4 * p + 2; },
     +[](LL, LL) { return Rational(2, 1); },
     Label::stable, Label::unstable, ""},
    {2, "SO(7)/(SO(4)xSO(3))", "B I", "", 0, nullptr,
     +[](LL, LL) { return LL{12}; }, +[](LL, LL) { return LL{12}; },
     +[](LL, LL) { return Rational(12, 5); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "SO(2p+3)/(SO(3)xSO(2p))", "B I", "p >= 3", 1,
     +[](LL p, LL) { return p >= 3; },
     +[](LL p, LL) { return 6 * p; }, +[](LL p, LL) { return 6 * p; },
     +[](LL p, LL) { return Rational(4 * p + 6, 2 * p + 1); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "SO(2q+2p+1)/(SO(2q+1)xSO(2p))", "B I", "p, q >= 2", 2,
     +[](LL p, LL q) { return p >= 2 && q >= 2; },
     +[](LL p, LL q) { return 2 * p * (2 * q + 1); },
     +[](LL p, LL q) { return 2 * p * (2 * q + 1); },
     +[](LL p, LL q) { return Rational(4 * (p + q) + 2, 2 * (p + q) - 1); },
     Label::strictly_stable, Label::strictly_stable,
     "table prints the formulas in letters (m, n) = (q, p)"},
    {2, "SO(2p+1)/SO(2p)=S^{2p}", "B II", "p >= 1", 1,
     +[](LL p, LL) { return p >= 1; },
     +[](LL p, LL) { return 2 * p; }, +[](LL p, LL) { return 2 * p; },
     +[](LL p, LL) { return Rational(2 * p, 2 * p - 1); },
     Label::strictly_stable, Label::stable, ""},
    {2, "Sp(p)/U(p)", "C I", "p >= 3", 1,
     +[](LL p, LL) { return p >= 3; },
     +[](LL p, LL) { return p * (p + 1); }, +[](LL p, LL) { return p * (p + 1); },
     +[](LL, LL) { return Rational(2, 1); },
     Label::unstable, Label::unstable, ""},
    {2, "Sp(2)/(Sp(1)xSp(1))=S^4", "C II", "", 0, nullptr,
     +[](LL, LL) { return LL{4}; }, +[](LL, LL) { return LL{4}; },
     +[](LL, LL) { return Rational(4, 3); },
     Label::strictly_stable, Label::stable, ""},
    {2, "Sp(p+1)/(Sp(p)xSp(1))=HP^p", "C II", "p >= 2", 1,
     +[](LL p, LL) { return p >= 2; },
     +[](LL p, LL) { return 4 * p; }, +[](LL p, LL) { return 4 * p; },
     +[](LL p, LL) { return Rational(2 * (p + 1), p + 2); },
     Label::unstable, Label::unstable, ""},
    {2, "Sp(p+q)/(Sp(q)xSp(p))", "C II", "q >= p >= 2", 2,
     +[](LL p, LL q) { return p >= 2 && q >= p; },
     +[](LL p, LL q) { return 4 * p * q; }, +[](LL p, LL q) { return 4 * p * q; },
     +[](LL p, LL q) { return Rational(2 * (p + q), p + q + 1); },
     Label::unstable, Label::unstable, ""},
    {2, "SO(8)/(SO(5)xSO(3))", "D I", "", 0, nullptr,
     +[](LL, LL) { return LL{15}; }, +[](LL, LL) { return LL{15}; },
     +[](LL, LL) { return Rational(5, 2); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "SO(2p+2)/(SO(2p)xSO(2))", "D I", "p >= 3", 1,
     +[](LL p, LL) { return p >= 3; },
     +[](LL p, LL) { return 4 * p; }, +[](LL p, LL) { return 4 * p; },
     +[](LL, LL) { return Rational(2, 1); },
     Label::stable, Label::unstable, ""},
    {2, "SO(2p)/(SO(p)xSO(p))", "D I", "p >= 4", 1,
     +[](LL p, LL) { return p >= 4; },
     +[](LL p, LL) { return p * p; }, +[](LL p, LL) { return p * p; },
     +[](LL p, LL) { return Rational(2 * p, p - 1); },
     Label::strictly_stable, Label::strictly_stable,
     "table prints Lambda as 2n/(n-1) with n = p"},
    {2, "SO(2p+2)/(SO(p+2)xSO(p))", "D I", "p >= 4", 1,
     +[](LL p, LL) { return p >= 4; },
     +[](LL p, LL) { return p * (p + 2); }, +[](LL p, LL) { return p * (p + 2); },
     +[](LL p, LL) { return Rational(2 * p + 2, p); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "SO(2p)/(SO(2p-q)xSO(q))", "D I", "p-2 >= q >= 3", 2,
     +[](LL p, LL q) { return q >= 3 && q <= p - 2; },
     +[](LL p, LL q) { return (2 * p - q) * q; },
     +[](LL p, LL q) { return (2 * p - q) * q; },
     +[](LL p, LL) { return Rational(2 * p, p - 1); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "SO(2p+2)/SO(2p+1)=S^{2p+1}", "D II", "p >= 3", 1,
     +[](LL p, LL) { return p >= 3; },
     +[](LL p, LL) { return 2 * p + 1; }, +[](LL p, LL) { return 2 * p + 1; },
     +[](LL p, LL) { return Rational(2 * p + 1, 2 * p); },
     Label::strictly_stable, Label::stable, ""},
    {2, "SO(2p)/U(p)", "D III", "p >= 5", 1,
     +[](LL p, LL) { return p >= 5; },
     +[](LL p, LL) { return p * (p - 1); }, +[](LL p, LL) { return p * (p - 1); },
     +[](LL, LL) { return Rational(2, 1); },
     Label::stable, Label::unstable, ""},
    {2, "E6/[Sp(4)/{+-I}]", "E I", "", 0, nullptr,
     +[](LL, LL) { return LL{42}; }, +[](LL, LL) { return LL{42}; },
     +[](LL, LL) { return Rational(28, 9); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "E6/SU(2).SU(6)", "E II", "", 0, nullptr,
     +[](LL, LL) { return LL{40}; }, +[](LL, LL) { return LL{40}; },
     +[](LL, LL) { return Rational(3, 1); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "E6/SO(10).SO(2)", "E III", "", 0, nullptr,
     +[](LL, LL) { return LL{32}; }, +[](LL, LL) { return LL{32}; },
     +[](LL, LL) { return Rational(2, 1); },
     Label::stable, Label::unstable, ""},
    {2, "E6/F4", "E IV", "", 0, nullptr,
     +[](LL, LL) { return LL{26}; }, +[](LL, LL) { return LL{26}; },
     +[](LL, LL) { return Rational(13, 9); },
     Label::unstable, Label::unstable, ""},
    {2, "E7/[SU(8)/{+-I}]", "E V", "", 0, nullptr,
     +[](LL, LL) { return LL{70}; }, +[](LL, LL) { return LL{70}; },
     +[](LL, LL) { return Rational(10, 3); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "E7/SO(12).SU(2)", "E VI", "", 0, nullptr,
     +[](LL, LL) { return LL{64}; }, +[](LL, LL) { return LL{64}; },
     +[](LL, LL) { return Rational(28, 9); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "E7/E6.SO(2)", "E VII", "", 0, nullptr,
     +[](LL, LL) { return LL{54}; }, +[](LL, LL) { return LL{54}; },
     +[](LL, LL) { return Rational(2, 1); },
     Label::stable, Label::unstable, ""},
    {2, "E8/SO(16)", "E VIII", "", 0, nullptr,
     +[](LL, LL) { return LL{128}; }, +[](LL, LL) { return LL{128}; },
     +[](LL, LL) { return Rational(62, 15); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "E8/E7.SU(2)", "E IX", "", 0, nullptr,
     +[](LL, LL) { return LL{112}; }, +[](LL, LL) { return LL{112}; },
     +[](LL, LL) { return Rational(16, 5); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "F4/Sp(3).SU(2)", "F I", "", 0, nullptr,
     +[](LL, LL) { return LL{28}; }, +[](LL, LL) { return LL{28}; },
     +[](LL, LL) { return Rational(26, 9); },
     Label::strictly_stable, Label::strictly_stable, ""},
    {2, "F4/Spin(9)", "F II", "", 0, nullptr,
     +[](LL, LL) { return LL{16}; }, +[](LL, LL) { return LL{16}; },
     +[](LL, LL) { return Rational(4, 3); },
     Label::unstable, Label::unstable, ""},
    {2, "G2/SO(4)", "G", "", 0, nullptr,
     +[](LL, LL) { return LL{8}; }, +[](LL, LL) { return LL{8}; },
     +[](LL, LL) { return Rational(7, 3); },
     Label::strictly_stable, Label::unstable, ""},
};

} // namespace

const std::vector<CatalogRow>& catalog_rows(int table) {
    if (table == 1) return kTable1;
    if (table == 2) return kTable2;
    throw domain_error("catalog_rows: table selector must be 1 or 2");
}

std::vector<std::pair<long long, long long>> sample_params(const CatalogRow& row, int count) {
    if (count < 1) throw domain_error("sample_params: count must be >= 1");
    std::vector<std::pair<long long, long long>> out;
    if (row.arity == 0) {
        out.emplace_back(0, 0);
        return out;
    }
    if (row.arity == 1) {
        for (long long p = 1; p <= 100000 && static_cast<int>(out.size()) < count; ++p)
            if (row.admissible(p, 0)) out.emplace_back(p, 0);
        return out;
    }
    // Two parameters: walk the diagonals s = p+q upward, p ascending inside.
    for (long long s = 2; s <= 2000 && static_cast<int>(out.size()) < count; ++s)
        for (long long p = 1; p < s && static_cast<int>(out.size()) < count; ++p)
            if (row.admissible(p, s - p)) out.emplace_back(p, s - p);
    return out;
}

std::string RowSample::params_text() const {
    std::ostringstream os;
    if (row->arity >= 1) os << "p=" << p;
    if (row->arity >= 2) os << " q=" << q;
    return os.str();
}

TableReport reproduce_table(int which, int samples) {
    if (samples < 1) throw domain_error("reproduce_table: samples must be >= 1");
    TableReport rep;
    rep.table = which;
    rep.samples = samples;
    rep.all_match = true;
    for (const CatalogRow& row : catalog_rows(which)) {
        for (const auto& [p, q] : sample_params(row, samples)) {
            RowSample s;
            s.row = &row;
            s.p = p;
            s.q = q;
            s.dim_printed = row.dim_printed(p, q);
            s.dim_corrected = row.dim_corrected(p, q);
            s.lambda = row.lambda_normalized(p, q);
            if (s.dim_printed < 2 || s.dim_corrected < 2)
                throw internal_error("reproduce_table: dimension below 2 in catalog data");
            s.recomputed_printed = recompute_label(row.einstein, s.lambda, s.dim_printed);
            s.recomputed_corrected = recompute_label(row.einstein, s.lambda, s.dim_corrected);
            s.match = s.recomputed_printed == row.tangential &&
                      s.recomputed_corrected == row.tangential;
            rep.all_match = rep.all_match && s.match;
            rep.rows.push_back(std::move(s));
        }
    }
    return rep;
}

} // namespace conelab
