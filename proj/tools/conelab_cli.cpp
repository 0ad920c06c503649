// Command-line front end. Everything numerical goes through the C API in
// conelab/conelab.h; this file only parses arguments, moves bytes and maps
// statuses to exit codes (0 success, 1 assertion/mismatch, 2 usage/schema).

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conelab/conelab.h"

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5EED;

int exit_code_for(conelab_status status) {
    switch (status) {
        case CONELAB_OK:
            return 0;
        case CONELAB_ERROR_DOMAIN:
        case CONELAB_ERROR_PARSE:
            return 2;
        default:
            return 1;
    }
}

int report_failure(conelab_status status) {
    std::cerr << "error: " << conelab_last_error() << "\n";
    return exit_code_for(status);
}

// Takes ownership of the C string and releases it.
std::string take(char* s) {
    std::string out = s == nullptr ? "" : s;
    conelab_string_free(s);
    return out;
}

bool emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return true;
    }
    std::ofstream f(out_path, std::ios::binary);
    f << text;
    f.close();
    if (!f) {
        std::cerr << "error: could not write " << out_path << "\n";
        return false;
    }
    return true;
}

bool read_input(const std::string& path, std::string& out) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        out = buf.str();
        return true;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: could not read " << path << "\n";
        return false;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    out = buf.str();
    return true;
}

bool parse_time_list(const std::string& text, std::vector<double>& out) {
    out.clear();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) return false;
            out.push_back(v);
        } catch (const std::exception&) {
            return false;
        }
    }
    return !out.empty();
}

void print_lines_to_stderr(const std::string& text, const char* prefix) {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) std::cerr << prefix << line << "\n";
}

int run_classify(const std::string& input_path, const std::string& out_path) {
    std::string text;
    if (!read_input(input_path, text)) return 2;

    conelab_spectrum* spectrum = nullptr;
    conelab_status st = conelab_spectrum_parse(text.c_str(), &spectrum);
    if (st != CONELAB_OK) return report_failure(st);

    char* warnings = nullptr;
    conelab_spectrum_warnings(spectrum, &warnings);
    print_lines_to_stderr(take(warnings), "warning: ");

    char* json = nullptr;
    char* diagnostics = nullptr;
    st = conelab_spectrum_verdict_json(spectrum, &json, &diagnostics);
    conelab_spectrum_free(spectrum);
    if (st != CONELAB_OK) return report_failure(st);
    print_lines_to_stderr(take(diagnostics), "note: ");
    return emit(take(json), out_path) ? 0 : 1;
}

int run_catalog(int table, int samples, const std::string& out_path) {
    char* csv = nullptr;
    int all_match = 0;
    const conelab_status st = conelab_catalog_csv(table, samples, &csv, &all_match);
    if (st != CONELAB_OK) return report_failure(st);
    if (!emit(take(csv), out_path)) return 1;
    if (all_match == 0) {
        std::cerr << "error: at least one recomputed label disagrees with the table\n";
        return 1;
    }
    return 0;
}

int run_blocks(int n, double value, double epsilon, const std::string& out_path) {
    char* json = nullptr;
    const conelab_status st = conelab_blocks_json(n, value, epsilon, &json);
    if (st != CONELAB_OK) return report_failure(st);
    return emit(take(json), out_path) ? 0 : 1;
}

int run_radial(const std::string& input_path, bool have_nu, double nu, int modes,
               int per_mode, int segments, double gamma, const std::string& out_path) {
    char* tsv = nullptr;
    conelab_status st = CONELAB_OK;
    if (have_nu) {
        st = conelab_radial_nu_tsv(nu, per_mode, segments, gamma, &tsv);
    } else {
        std::string text;
        if (!read_input(input_path, text)) return 2;
        conelab_spectrum* spectrum = nullptr;
        st = conelab_spectrum_parse(text.c_str(), &spectrum);
        if (st != CONELAB_OK) return report_failure(st);
        char* warnings = nullptr;
        conelab_spectrum_warnings(spectrum, &warnings);
        print_lines_to_stderr(take(warnings), "warning: ");
        st = conelab_radial_tsv(spectrum, modes, per_mode, segments, gamma, &tsv);
        conelab_spectrum_free(spectrum);
    }
    if (st != CONELAB_OK) return report_failure(st);
    return emit(take(tsv), out_path) ? 0 : 1;
}

int run_heat(double nu, const std::vector<double>& times, int segments, double gamma,
             const std::string& out_path) {
    char* tsv = nullptr;
    char* failure = nullptr;
    int pass = 0;
    const conelab_status st = conelab_heat_tsv(nu, times.data(), times.size(), segments,
                                               gamma, 2048, &tsv, &pass, &failure);
    if (st != CONELAB_OK) return report_failure(st);
    if (!emit(take(tsv), out_path)) return 1;
    const std::string why = take(failure);
    if (pass == 0) {
        std::cerr << "error: " << (why.empty() ? "decay cross-check failed" : why) << "\n";
        return 1;
    }
    return 0;
}

int run_flow(const std::string& tier, bool have_c, double c, double c_tilde, double alpha,
             int gain_n, double big_r, std::uint64_t seed, const std::string& out_path) {
    if (tier != "A" && tier != "B") {
        std::cerr << "error: --tier must be A or B\n";
        return 2;
    }
    const double c_used = have_c ? c : (tier == "A" ? 1.0 : 1.2);
    char* tsv = nullptr;
    const conelab_status st = conelab_flow_tsv(tier[0], gain_n, c_used, c_tilde, alpha,
                                               big_r, seed, 2048, &tsv);
    if (st != CONELAB_OK) return report_failure(st);
    return emit(take(tsv), out_path) ? 0 : 1;
}

int run_check(double tolerance, bool flip, std::uint64_t seed, const std::string& out_path) {
    char* report = nullptr;
    int all_pass = 0;
    const conelab_status st = conelab_check_report(tolerance, flip ? 1 : 0, seed,
                                                   &report, &all_pass);
    if (st != CONELAB_OK) return report_failure(st);
    if (!emit(take(report), out_path)) return 1;
    return all_pass == 1 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tangential stability, radial models and restarted-flow surrogates "
                 "for spaces with isolated conical singularities"};
    app.set_version_flag("--version", std::string(conelab_version()));
    app.require_subcommand(1);

    std::string out_path;
    const auto add_out = [&out_path](CLI::App* sub) {
        sub->add_option("--out", out_path,
                        "Write the main document to a file instead of stdout");
    };

    // classify
    auto* classify = app.add_subcommand(
        "classify", "Stability verdict for a cross-section spectrum document");
    add_out(classify);
    std::string classify_input;
    classify->add_option("input", classify_input,
                         "Spectrum JSON file (default: stdin, '-' for stdin)");

    // catalog
    auto* catalog = app.add_subcommand(
        "catalog", "Recompute a classification table and emit the comparison CSV");
    add_out(catalog);
    int table = 1;
    int samples = 3;
    catalog->add_option("--table", table, "Table selector (1 or 2)")
        ->capture_default_str();
    catalog->add_option("--samples", samples, "Parameter samples per family")
        ->capture_default_str();

    // blocks
    auto* blocks = app.add_subcommand(
        "blocks", "Inspect the three tangential quadratic-form blocks");
    add_out(blocks);
    int blocks_n = 0;
    double blocks_value = 0.0;
    double blocks_eps = 0.0;
    blocks->add_option("n", blocks_n, "Cross-section dimension")->required();
    blocks->add_option("value", blocks_value, "Eigenvalue argument for all three blocks")
        ->required();
    blocks->add_option("epsilon", blocks_eps, "Interpolation weight in [0, 2)")
        ->capture_default_str();

    // radial
    auto* radial = app.add_subcommand(
        "radial", "Model-cone eigenvalues against their closed-form references");
    add_out(radial);
    std::string radial_input;
    double radial_nu = 0.0;
    int modes = 3;
    int per_mode = 3;
    int segments = 4000;
    double gamma = 2.0;
    radial->add_option("input", radial_input, "Spectrum JSON file");
    auto* radial_nu_opt =
        radial->add_option("--nu", radial_nu, "Single indicial root instead of a spectrum");
    radial->add_option("--modes", modes, "Tangential modes to expand")->capture_default_str();
    radial->add_option("--per-mode", per_mode, "Radial eigenvalues per mode")
        ->capture_default_str();
    radial->add_option("--M", segments, "Mesh segments")->capture_default_str();
    radial->add_option("--gamma", gamma, "Mesh grading exponent")->capture_default_str();

    // heat
    auto* heat = app.add_subcommand(
        "heat", "Semigroup decay table with a time-stepping cross-check");
    add_out(heat);
    double heat_nu = 0.0;
    std::string heat_times = "0.5,1,2";
    heat->add_option("--nu", heat_nu, "Indicial root of the radial model")->required();
    heat->add_option("--t", heat_times, "Comma-separated evaluation times")
        ->capture_default_str();
    int heat_segments = 2000;
    double heat_gamma = 2.0;
    heat->add_option("--M", heat_segments, "Mesh segments")->capture_default_str();
    heat->add_option("--gamma", heat_gamma, "Mesh grading exponent")->capture_default_str();

    // flow
    auto* flow = app.add_subcommand(
        "flow", "Restarted-flow surrogate trace in the figure format");
    add_out(flow);
    std::string tier = "A";
    int gain_n = 4;
    double flow_c = 1.0;
    double flow_ctilde = 1.0;
    double flow_alpha = 1.0;
    double flow_r = 0.1;
    std::uint64_t flow_seed = kDefaultSeed;
    flow->add_option("--tier", tier, "Constant certification tier (A or B)")
        ->capture_default_str();
    flow->add_option("--N", gain_n, "Restart gain divisor")->capture_default_str();
    auto* flow_c_opt =
        flow->add_option("--c", flow_c, "Projection constant (tier A: 1, tier B: 1.2)");
    flow->add_option("--ctilde", flow_ctilde,
                     "Quadratic bound (tier B recertifies it from samples)")
        ->capture_default_str();
    flow->add_option("--alpha", flow_alpha, "Spectral gap of the linearization")
        ->capture_default_str();
    flow->add_option("--R", flow_r, "Radius of the trust ball")->capture_default_str();
    flow->add_option("--seed", flow_seed, "Random seed")->capture_default_str();

    // check
    auto* check = app.add_subcommand("check", "Run the cross-module invariant suite");
    add_out(check);
    double tolerance = 1.0;
    std::uint64_t check_seed = kDefaultSeed;
    bool flip = false;
    check->add_option("--tolerance", tolerance, "Scale factor on every numeric tolerance")
        ->capture_default_str();
    check->add_option("--seed", check_seed, "Random seed")->capture_default_str();
    check->add_flag("--debug-flip-a33", flip,
                    "Negate the rescaled scalar corner entry (mutation self-test)")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (classify->parsed()) return run_classify(classify_input, out_path);
    if (catalog->parsed()) return run_catalog(table, samples, out_path);
    if (blocks->parsed()) return run_blocks(blocks_n, blocks_value, blocks_eps, out_path);
    if (radial->parsed()) {
        const bool have_nu = radial_nu_opt->count() > 0;
        if (have_nu && !radial_input.empty()) {
            std::cerr << "error: pass either a spectrum file or --nu, not both\n";
            return 2;
        }
        return run_radial(radial_input, have_nu, radial_nu, modes, per_mode, segments,
                          gamma, out_path);
    }
    if (heat->parsed()) {
        std::vector<double> times;
        if (!parse_time_list(heat_times, times)) {
            std::cerr << "error: --t expects a comma-separated list of times\n";
            return 2;
        }
        return run_heat(heat_nu, times, heat_segments, heat_gamma, out_path);
    }
    if (flow->parsed())
        return run_flow(tier, flow_c_opt->count() > 0, flow_c, flow_ctilde, flow_alpha,
                        gain_n, flow_r, flow_seed, out_path);
    if (check->parsed()) return run_check(tolerance, flip, check_seed, out_path);

    std::cerr << "error: no command selected\n";
    return 2;
}
