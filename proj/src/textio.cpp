#include "textio.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "errors.hpp"

namespace conelab {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string number_list(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt17(v[i]);
    }
    return out + "]";
}

std::pair<int, int> line_column(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::vector<double> number_array(const nlohmann::json& j, const char* field) {
    if (!j.is_array())
        throw parse_error(std::string("spectrum field '") + field +
                          "' must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number())
            throw parse_error(std::string("spectrum field '") + field +
                              "' must contain numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

void append_block_json(std::ostringstream& os, BlockKind kind, int n,
                       double parameter, double epsilon) {
    const char* name = kind == BlockKind::tt        ? "tt"
                       : kind == BlockKind::oneform ? "oneform"
                                                    : "scalar";
    os << "    {\n      \"kind\": \"" << name << "\",\n      \"parameter\": "
       << fmt17(parameter) << ",\n";
    try {
        BlockForm b;
        if (kind == BlockKind::tt) {
            b = tt_form(parameter, n);
        } else if (kind == BlockKind::oneform) {
            b = oneform_form(parameter, n);
        } else {
            b = scalar_form(parameter, n, epsilon);
        }
        const std::vector<double> eigs = block_spectrum(b);
        os << "      \"size\": " << b.size << ",\n      \"form\": [";
        for (int i = 0; i < b.size * b.size; ++i)
            os << (i ? ", " : "") << fmt17(b.form[i]);
        os << "],\n      \"gram\": [";
        for (int i = 0; i < b.size; ++i)
            os << (i ? ", " : "") << fmt17(b.gram[i * b.size + i]);
        os << "],\n      \"eigenvalues\": " << number_list(eigs) << "\n    }";
    } catch (const domain_error& e) {
        os << "      \"error\": \"" << json_escape(e.what()) << "\"\n    }";
    }
}

} // namespace

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CrossSectionSpectrum parse_spectrum_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw parse_error("spectrum document: line " + std::to_string(line) +
                          ":" + std::to_string(col) + ": " + e.what());
    }
    if (!j.is_object())
        throw parse_error("spectrum document: top level must be an object");

    static const char* kFields[] = {"n", "tt_einstein", "coclosed_oneforms",
                                    "laplace", "label"};
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* f : kFields) known |= (item.key() == f);
        if (!known)
            throw parse_error("spectrum document: unknown field '" + item.key() + "'");
    }
    for (const char* f : kFields)
        if (!j.contains(f))
            throw parse_error(std::string("spectrum document: missing field '") + f + "'");

    if (!j["n"].is_number_integer() && !j["n"].is_number_unsigned())
        throw parse_error("spectrum field 'n' must be an integer");
    if (!j["label"].is_string())
        throw parse_error("spectrum field 'label' must be a string");

    CrossSectionSpectrum cs;
    cs.n = j["n"].get<int>();
    cs.tt_einstein = number_array(j["tt_einstein"], "tt_einstein");
    cs.coclosed_oneforms = number_array(j["coclosed_oneforms"], "coclosed_oneforms");
    cs.laplace = number_array(j["laplace"], "laplace");
    cs.label = j["label"].get<std::string>();
    return cs;
}

std::string render_verdict_json(const StabilityVerdict& verdict, int n,
                                const std::string& label,
                                const std::vector<double>& weights) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"label\": \"" << json_escape(label) << "\",\n";
    os << "  \"n\": " << n << ",\n";
    os << "  \"tangentially_stable\": " << bool_text(verdict.tangentially_stable) << ",\n";
    os << "  \"strictly_tangentially_stable\": "
       << bool_text(verdict.strictly_tangentially_stable) << ",\n";
    os << "  \"offending_eigenvalues\": " << number_list(verdict.offending_eigenvalues)
       << ",\n";
    os << "  \"min_tangential_eigenvalue\": " << fmt17(verdict.min_tangential_eigenvalue)
       << ",\n";
    os << "  \"exceptional_weights\": " << number_list(weights) << "\n";
    os << "}\n";
    return os.str();
}

std::string render_blocks_json(int n, double value, double epsilon) {
    std::ostringstream os;
    os << "{\n  \"n\": " << n << ",\n  \"parameter\": " << fmt17(value)
       << ",\n  \"epsilon\": " << fmt17(epsilon) << ",\n  \"blocks\": [\n";
    append_block_json(os, BlockKind::tt, n, value, epsilon);
    os << ",\n";
    append_block_json(os, BlockKind::oneform, n, value, epsilon);
    os << ",\n";
    append_block_json(os, BlockKind::scalar, n, value, epsilon);
    os << "\n  ]\n}\n";
    return os.str();
}

std::string render_catalog_csv(const TableReport& report) {
    std::ostringstream os;
    os << "family,cartan_type,params,dim_printed,dim_corrected,Lambda,threshold,"
          "expected_einstein,expected_tangential,recomputed_tangential,match\n";
    for (const RowSample& s : report.rows) {
        const Rational threshold(2 * (s.dim_corrected + 1), s.dim_corrected - 1);
        os << s.row->family << ',' << s.row->cartan << ',' << s.params_text() << ','
           << s.dim_printed << ',' << s.dim_corrected << ',' << s.lambda.text() << ','
           << threshold.text() << ',' << label_text(s.row->einstein) << ','
           << label_text(s.row->tangential) << ','
           << label_text(s.recomputed_corrected) << ',' << (s.match ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string render_cone_tsv(const std::vector<ConeModeRow>& rows) {
    std::ostringstream os;
    os << "lambda\tnu\tm\teigenvalue\toracle\trel_error\n";
    for (const ConeModeRow& r : rows)
        os << fmt17(r.lambda) << '\t' << fmt17(r.nu) << '\t' << r.m << '\t'
           << fmt17(r.eigenvalue) << '\t' << fmt17(r.oracle) << '\t'
           << fmt17(r.rel_error) << '\n';
    return os.str();
}

std::string render_heat_tsv(const HeatReport& report) {
    std::ostringstream os;
    os << "t\tnorm\tbound\n";
    for (size_t i = 0; i < report.times.size(); ++i)
        os << fmt17(report.times[i]) << '\t' << fmt17(report.norms[i]) << '\t'
           << fmt17(report.bounds[i]) << '\n';
    return os.str();
}

std::string render_flow_tsv(const FlowTrace& trace) {
    std::ostringstream os;
    os << "k\tdist_g_to_Pi\tbound_g_to_Pi\tdist_step\tbound_step\tdist_Pi_step\t"
          "bound_Pi_step\twithin_R\n";
    for (const FlowLeg& leg : trace.legs)
        os << leg.k << '\t' << fmt17(leg.dist_g_to_pi) << '\t'
           << fmt17(leg.bound_g_to_pi) << '\t' << fmt17(leg.dist_step) << '\t'
           << fmt17(leg.bound_step) << '\t' << fmt17(leg.dist_pi_step) << '\t'
           << fmt17(leg.bound_pi_step) << '\t' << (leg.within_r ? 1 : 0) << '\n';
    return os.str();
}

} // namespace conelab
