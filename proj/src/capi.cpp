#include "conelab/conelab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "catalog.hpp"
#include "check.hpp"
#include "errors.hpp"
#include "flow.hpp"
#include "radial.hpp"
#include "spectral.hpp"
#include "stability.hpp"
#include "textio.hpp"

using namespace conelab;

struct conelab_spectrum {
    CrossSectionSpectrum data;
    std::vector<std::string> warnings;
};

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p == nullptr) std::abort();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += lines[i];
        if (i + 1 < lines.size()) out += '\n';
    }
    return out;
}

template <typename Body>
conelab_status guarded(Body&& body) {
    try {
        body();
        g_last_error.clear();
        return CONELAB_OK;
    } catch (const domain_error& e) {
        g_last_error = e.what();
        return CONELAB_ERROR_DOMAIN;
    } catch (const parse_error& e) {
        g_last_error = e.what();
        return CONELAB_ERROR_PARSE;
    } catch (const numeric_error& e) {
        g_last_error = e.what();
        return CONELAB_ERROR_NUMERIC;
    } catch (const assertion_error& e) {
        g_last_error = e.what();
        return CONELAB_ERROR_ASSERTION;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CONELAB_ERROR_INTERNAL;
    }
}

conelab_status null_argument(const char* what) {
    g_last_error = std::string(what) + " must not be NULL";
    return CONELAB_ERROR_DOMAIN;
}

} // namespace

extern "C" {

const char* conelab_version(void) { return "1.0.0"; }

const char* conelab_last_error(void) { return g_last_error.c_str(); }

void conelab_string_free(char* s) { std::free(s); }

conelab_status conelab_spectrum_parse(const char* json, conelab_spectrum** out) {
    if (json == nullptr) return null_argument("json");
    if (out == nullptr) return null_argument("out");
    return guarded([&] {
        auto handle = new conelab_spectrum;
        try {
            handle->data = parse_spectrum_json(json);
            handle->warnings = handle->data.validate();
        } catch (...) {
            delete handle;
            throw;
        }
        *out = handle;
    });
}

void conelab_spectrum_free(conelab_spectrum* spectrum) { delete spectrum; }

conelab_status conelab_spectrum_dimension(const conelab_spectrum* spectrum, int* out_n) {
    if (spectrum == nullptr) return null_argument("spectrum");
    if (out_n == nullptr) return null_argument("out_n");
    *out_n = spectrum->data.n;
    g_last_error.clear();
    return CONELAB_OK;
}

conelab_status conelab_spectrum_warnings(const conelab_spectrum* spectrum, char** out) {
    if (spectrum == nullptr) return null_argument("spectrum");
    if (out == nullptr) return null_argument("out");
    *out = copy_out(join_lines(spectrum->warnings));
    g_last_error.clear();
    return CONELAB_OK;
}

conelab_status conelab_spectrum_verdict_json(const conelab_spectrum* spectrum,
                                             char** out_json, char** out_diagnostics) {
    if (spectrum == nullptr) return null_argument("spectrum");
    if (out_json == nullptr) return null_argument("out_json");
    return guarded([&] {
        const StabilityVerdict v = tangential_verdict(spectrum->data);
        const std::vector<double> weights =
            exceptional_weights(spectrum->data, WeightKind::lichnerowicz);
        std::string json = render_verdict_json(v, spectrum->data.n,
                                               spectrum->data.label, weights);
        if (out_diagnostics != nullptr)
            *out_diagnostics = copy_out(join_lines(v.diagnostics));
        *out_json = copy_out(json);
    });
}

conelab_status conelab_catalog_csv(int table, int samples, char** out_csv,
                                   int* out_all_match) {
    if (out_csv == nullptr) return null_argument("out_csv");
    return guarded([&] {
        const TableReport report = reproduce_table(table, samples);
        if (out_all_match != nullptr) *out_all_match = report.all_match ? 1 : 0;
        *out_csv = copy_out(render_catalog_csv(report));
    });
}

conelab_status conelab_blocks_json(int n, double value, double epsilon, char** out_json) {
    if (out_json == nullptr) return null_argument("out_json");
    return guarded([&] { *out_json = copy_out(render_blocks_json(n, value, epsilon)); });
}

conelab_status conelab_radial_tsv(const conelab_spectrum* spectrum, int modes,
                                  int per_mode, int segments, double gamma,
                                  char** out_tsv) {
    if (spectrum == nullptr) return null_argument("spectrum");
    if (out_tsv == nullptr) return null_argument("out_tsv");
    return guarded([&] {
        const ConeSpectrumReport report =
            model_cone_spectrum(spectrum->data, modes, per_mode, segments, gamma);
        *out_tsv = copy_out(render_cone_tsv(report.rows));
    });
}

conelab_status conelab_radial_nu_tsv(double nu, int per_mode, int segments,
                                     double gamma, char** out_tsv) {
    if (out_tsv == nullptr) return null_argument("out_tsv");
    return guarded([&] {
        if (per_mode < 1) throw domain_error("radial: per-mode count must be >= 1");
        const RadialModel model = build_radial_model(nu, 0.0, segments, gamma);
        const std::vector<double> eigs = friedrichs_eigenvalues(model, per_mode);
        std::vector<ConeModeRow> rows;
        rows.reserve(eigs.size());
        for (int m = 1; m <= per_mode; ++m) {
            ConeModeRow row;
            row.lambda = nu * nu - 0.25; // two-dimensional cross-section convention
            row.nu = nu;
            row.m = m;
            row.eigenvalue = eigs[m - 1];
            const double z = bessel_zero(nu, m);
            row.oracle = z * z;
            row.rel_error = std::fabs(row.eigenvalue - row.oracle) / row.oracle;
            rows.push_back(row);
        }
        *out_tsv = copy_out(render_cone_tsv(rows));
    });
}

conelab_status conelab_heat_tsv(double nu, const double* times, size_t n_times,
                                int segments, double gamma, int steps,
                                char** out_tsv, int* out_pass, char** out_failure) {
    if (times == nullptr && n_times > 0) return null_argument("times");
    if (out_tsv == nullptr) return null_argument("out_tsv");
    return guarded([&] {
        const RadialModel model = build_radial_model(nu, 0.0, segments, gamma);
        const std::vector<double> ts(times, times + n_times);
        const HeatReport report = heat_decay_check(model, ts, steps);
        if (out_pass != nullptr) *out_pass = report.pass ? 1 : 0;
        if (out_failure != nullptr) *out_failure = copy_out(report.failure);
        *out_tsv = copy_out(render_heat_tsv(report));
    });
}

conelab_status conelab_flow_tsv(char tier, int gain_n, double c, double c_tilde,
                                double alpha, double big_r,
                                unsigned long long seed, int time_steps,
                                char** out_tsv) {
    if (out_tsv == nullptr) return null_argument("out_tsv");
    return guarded([&] {
        SurrogateSystem sys;
        if (tier == 'A') {
            if (c != 1.0)
                throw domain_error("flow: tier A realizes the exact constant c = 1");
            sys = make_tier_a(alpha, c_tilde, seed);
        } else if (tier == 'B') {
            if (c != 1.2)
                throw domain_error("flow: tier B certifies only the declared constant c = 1.2");
            sys = make_tier_b(alpha, c_tilde, seed);
        } else {
            throw domain_error("flow: tier must be 'A' or 'B'");
        }
        const FlowConstants fc = choose_constants(gain_n, sys.c, sys.c_tilde, sys.alpha);
        const FlowTrace trace = restart_flow(sys, default_start(sys, fc.epsilon),
                                             gain_n, big_r, time_steps);
        *out_tsv = copy_out(render_flow_tsv(trace));
    });
}

conelab_status conelab_check_report(double tolerance_scale, int flip_scalar_corner,
                                    unsigned long long seed, char** out_report,
                                    int* out_all_pass) {
    if (out_report == nullptr) return null_argument("out_report");
    return guarded([&] {
        CheckOptions opt;
        opt.tolerance_scale = tolerance_scale;
        opt.flip_scalar_corner = flip_scalar_corner != 0;
        opt.seed = seed;
        const CheckReport report = run_checks(opt);
        if (out_all_pass != nullptr) *out_all_pass = report.all_pass ? 1 : 0;
        *out_report = copy_out(render_check_report(report));
    });
}

} // extern "C"
