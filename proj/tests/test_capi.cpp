#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "conelab/conelab.h"

namespace {

std::string data_file(const char* name) {
    return std::string(CONELAB_DATA_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(static_cast<bool>(f));
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// Owned C string -> std::string.
std::string take(char* s) {
    std::string out = s == nullptr ? "" : s;
    conelab_string_free(s);
    return out;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + CONELAB_CLI_PATH + "\" " + args +
                            " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// Cell (row, col) of a TSV document; row 0 is the header.
std::string tsv_cell(const std::string& text, int row, int col) {
    const std::vector<std::string> lines = split(text, '\n');
    REQUIRE(static_cast<int>(lines.size()) > row);
    const std::vector<std::string> cells = split(lines[row], '\t');
    REQUIRE(static_cast<int>(cells.size()) > col);
    return cells[col];
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("shared library: version and error strings") {
    const char* v = conelab_version();
    REQUIRE(v != nullptr);
    CHECK(contains(v, "."));
    conelab_string_free(nullptr); // must be a no-op
}

TEST_CASE("shared library: spectrum lifecycle and verdict document") {
    const std::string text = slurp(data_file("sphere_s3.json"));
    conelab_spectrum* sp = nullptr;
    REQUIRE(conelab_spectrum_parse(text.c_str(), &sp) == CONELAB_OK);
    CHECK(std::string(conelab_last_error()).empty());

    int n = 0;
    REQUIRE(conelab_spectrum_dimension(sp, &n) == CONELAB_OK);
    CHECK(n == 3);

    char* warnings = nullptr;
    REQUIRE(conelab_spectrum_warnings(sp, &warnings) == CONELAB_OK);
    CHECK(take(warnings).empty());

    char* json = nullptr;
    char* diag = nullptr;
    REQUIRE(conelab_spectrum_verdict_json(sp, &json, &diag) == CONELAB_OK);
    const std::string verdict = take(json);
    take(diag);
    conelab_spectrum_free(sp);

    CHECK(contains(verdict, "\"label\": \"S^3\""));
    CHECK(contains(verdict, "\"n\": 3"));
    CHECK(contains(verdict, "\"tangentially_stable\": true"));
    CHECK(contains(verdict, "\"strictly_tangentially_stable\": false"));
    CHECK(contains(verdict, "\"offending_eigenvalues\": [3, 8]"));
    // Fixed field order.
    CHECK(verdict.find("\"label\"") < verdict.find("\"n\""));
    CHECK(verdict.find("\"n\"") < verdict.find("\"tangentially_stable\""));
    CHECK(verdict.find("\"offending_eigenvalues\"") <
          verdict.find("\"min_tangential_eigenvalue\""));
    CHECK(verdict.find("\"min_tangential_eigenvalue\"") <
          verdict.find("\"exceptional_weights\""));
}

TEST_CASE("shared library: parse and validation failures carry messages") {
    conelab_spectrum* sp = nullptr;

    CHECK(conelab_spectrum_parse("{ not json", &sp) == CONELAB_ERROR_PARSE);
    CHECK(contains(conelab_last_error(), "line "));

    CHECK(conelab_spectrum_parse(
              "{\"n\": 3, \"tt_einstein\": [6], \"coclosed_oneforms\": [2],"
              " \"laplace\": [0, 3], \"label\": \"x\", \"extra\": 1}",
              &sp) == CONELAB_ERROR_PARSE);
    CHECK(contains(conelab_last_error(), "unknown field 'extra'"));

    // Structurally invalid (dimension too small) is a domain error, not parse.
    CHECK(conelab_spectrum_parse(
              "{\"n\": 1, \"tt_einstein\": [6], \"coclosed_oneforms\": [2],"
              " \"laplace\": [0, 3], \"label\": \"x\"}",
              &sp) == CONELAB_ERROR_DOMAIN);

    CHECK(conelab_spectrum_parse(nullptr, &sp) == CONELAB_ERROR_DOMAIN);
    CHECK(contains(conelab_last_error(), "must not be NULL"));

    // A low nonzero tangential eigenvalue is only a warning.
    conelab_spectrum* warned = nullptr;
    REQUIRE(conelab_spectrum_parse(
                "{\"n\": 4, \"tt_einstein\": [8], \"coclosed_oneforms\": [3],"
                " \"laplace\": [0, 2, 10], \"label\": \"w\"}",
                &warned) == CONELAB_OK);
    char* w = nullptr;
    REQUIRE(conelab_spectrum_warnings(warned, &w) == CONELAB_OK);
    CHECK(contains(take(w), "(0, n)"));
    conelab_spectrum_free(warned);
}

TEST_CASE("shared library: block documents report per-block domain errors") {
    char* json = nullptr;
    REQUIRE(conelab_blocks_json(4, 5.0, 0.0, &json) == CONELAB_OK);
    const std::string good = take(json);
    CHECK(contains(good, "\"kind\": \"tt\""));
    CHECK(contains(good, "\"kind\": \"oneform\""));
    CHECK(contains(good, "\"kind\": \"scalar\""));
    CHECK(contains(good, "\"eigenvalues\": ["));
    CHECK_FALSE(contains(good, "\"error\""));

    // value = 1 is below the one-form window and strictly inside (0, n).
    REQUIRE(conelab_blocks_json(4, 1.0, 0.0, &json) == CONELAB_OK);
    const std::string mixed = take(json);
    CHECK(contains(mixed, "\"error\""));
    CHECK(contains(mixed, "\"kind\": \"tt\""));
}

TEST_CASE("shared library: catalog, radial, heat and flow front doors") {
    char* csv = nullptr;
    int all_match = 0;
    REQUIRE(conelab_catalog_csv(1, 2, &csv, &all_match) == CONELAB_OK);
    const std::string table = take(csv);
    CHECK(all_match == 1);
    CHECK(split(table, '\n').front() ==
          "family,cartan_type,params,dim_printed,dim_corrected,Lambda,threshold,"
          "expected_einstein,expected_tangential,recomputed_tangential,match");
    CHECK(conelab_catalog_csv(3, 2, &csv, &all_match) == CONELAB_ERROR_DOMAIN);

    char* tsv = nullptr;
    REQUIRE(conelab_radial_nu_tsv(0.5, 1, 400, 2.0, &tsv) == CONELAB_OK);
    const std::string radial = take(tsv);
    CHECK(tsv_cell(radial, 0, 0) == "lambda");
    CHECK(tsv_cell(radial, 1, 0) == "0"); // nu^2 - 1/4 = 0
    const double pi2 = 9.869604401089358;
    CHECK(std::fabs(std::stod(tsv_cell(radial, 1, 4)) - pi2) <= 1e-9);
    CHECK(std::fabs(std::stod(tsv_cell(radial, 1, 3)) - pi2) / pi2 <= 1e-4);

    const double times[2] = {0.5, 1.0};
    int pass = -1;
    char* failure = nullptr;
    REQUIRE(conelab_heat_tsv(1.0, times, 2, 300, 2.0, 2048, &tsv, &pass, &failure) ==
            CONELAB_OK);
    const std::string heat = take(tsv);
    CHECK(pass == 1);
    CHECK(take(failure).empty());
    REQUIRE(split(heat, '\n').size() >= 3);
    CHECK(split(heat, '\n').front() == "t\tnorm\tbound");

    // A single time step cannot reproduce the decay constant within 1%.
    REQUIRE(conelab_heat_tsv(1.0, times, 2, 300, 2.0, 1, &tsv, &pass, &failure) ==
            CONELAB_OK);
    take(tsv);
    CHECK(pass == 0);
    CHECK(contains(take(failure), "time-stepping decay mismatch"));

    REQUIRE(conelab_flow_tsv('A', 4, 1.0, 1.0, 1.0, 0.1, 0x5EED, 256, &tsv) ==
            CONELAB_OK);
    const std::string flow = take(tsv);
    CHECK(split(flow, '\n').front() ==
          "k\tdist_g_to_Pi\tbound_g_to_Pi\tdist_step\tbound_step\tdist_Pi_step\t"
          "bound_Pi_step\twithin_R");
    CHECK(split(flow, '\n').size() >= 4);

    CHECK(conelab_flow_tsv('A', 4, 2.0, 1.0, 1.0, 0.1, 1, 256, &tsv) ==
          CONELAB_ERROR_DOMAIN);
    CHECK(contains(conelab_last_error(), "tier A"));
    CHECK(conelab_flow_tsv('B', 4, 1.0, 1.0, 1.0, 0.1, 1, 256, &tsv) ==
          CONELAB_ERROR_DOMAIN);
    CHECK(contains(conelab_last_error(), "tier B"));
    CHECK(conelab_flow_tsv('X', 4, 1.0, 1.0, 1.0, 0.1, 1, 256, &tsv) ==
          CONELAB_ERROR_DOMAIN);
}

TEST_CASE("shared library: invariant suite passes and catches a planted bug") {
    char* report = nullptr;
    int all_pass = 0;
    REQUIRE(conelab_check_report(1.0, 0, 0x5EED, &report, &all_pass) == CONELAB_OK);
    const std::string clean = take(report);
    CHECK(all_pass == 1);
    CHECK(contains(clean, "corner-flip=off"));
    CHECK(contains(clean, "summary: "));
    CHECK_FALSE(contains(clean, "FAIL"));

    REQUIRE(conelab_check_report(1.0, 1, 0x5EED, &report, &all_pass) == CONELAB_OK);
    const std::string flipped = take(report);
    CHECK(all_pass == 0);
    CHECK(contains(flipped, "corner-flip=on"));
    CHECK(contains(flipped, "FAIL scalar-det-identity"));
}

TEST_CASE("command line: exit codes and output contracts") {
    // classify: verdict on stdout, exit 0 regardless of the verdict itself.
    const CliResult classify = run_cli("classify " + data_file("sphere_s3.json"));
    CHECK(classify.exit_code == 0);
    CHECK(contains(classify.out, "\"label\": \"S^3\""));
    CHECK(contains(classify.out, "\"tangentially_stable\": true"));

    // classify: schema violations are usage errors (exit 2).
    const std::string bad =
        (std::filesystem::temp_directory_path() / "conelab_bad_spectrum.json").string();
    std::ofstream(bad) << "{\"n\": 3}";
    CHECK(run_cli("classify " + bad).exit_code == 2);
    std::filesystem::remove(bad);
    CHECK(run_cli("classify no_such_file.json").exit_code == 2);

    // catalog: exit 0 when every row matches; unknown table is usage.
    const CliResult catalog = run_cli("catalog --table 2 --samples 1");
    CHECK(catalog.exit_code == 0);
    CHECK(contains(catalog.out, "family,cartan_type"));
    CHECK(run_cli("catalog --table 3").exit_code == 2);

    // radial: bare-order mode; exactly one input source.
    const CliResult radial = run_cli("radial --nu 0.5 --per-mode 1 --M 400");
    CHECK(radial.exit_code == 0);
    CHECK(std::fabs(std::stod(tsv_cell(radial.out, 1, 3)) - 9.869604401089358) <= 1e-2);
    CHECK(run_cli("radial --nu 0.5 " + data_file("sphere_s3.json")).exit_code == 2);

    // heat: pass/fail is an assertion-style exit.
    CHECK(run_cli("heat --nu 1 --t 0.5,1 --M 300").exit_code == 0);
    CHECK(run_cli("heat --nu 1 --t bogus --M 300").exit_code == 2);

    // flow: tier B insists on its declared constant.
    const CliResult flow_a = run_cli("flow --tier A --N 4");
    CHECK(flow_a.exit_code == 0);
    CHECK(contains(flow_a.out, "k\tdist_g_to_Pi"));
    CHECK(run_cli("flow --tier C").exit_code == 2);
    CHECK(run_cli("flow --tier B --c 1.0").exit_code == 2);

    // check: a planted bug and a zeroed tolerance both fail with exit 1.
    CHECK(run_cli("check --debug-flip-a33").exit_code == 1);
    CHECK(run_cli("check --tolerance 0").exit_code == 1);

    // usage errors.
    CHECK(run_cli("bogus").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
}
