#pragma once

#include <string>
#include <vector>

#include "catalog.hpp"
#include "flow.hpp"
#include "radial.hpp"
#include "spectral.hpp"
#include "stability.hpp"

namespace conelab {

// All numeric text output uses 17 significant digits (round-trip safe).
std::string fmt17(double v);

// Strict schema parse of a spectrum document: a flat JSON object with
// exactly the fields n (integer), tt_einstein, coclosed_oneforms, laplace
// (arrays of numbers) and label (string). Unknown or missing fields, or a
// document that is not an object, raise parse_error with a line:column
// reference. Structural validation (sorted lists etc.) is separate; see
// CrossSectionSpectrum::validate.
CrossSectionSpectrum parse_spectrum_json(const std::string& text);

// Verdict document, field order: label, n, tangentially_stable,
// strictly_tangentially_stable, offending_eigenvalues,
// min_tangential_eigenvalue, exceptional_weights.
std::string render_verdict_json(const StabilityVerdict& verdict, int n,
                                const std::string& label,
                                const std::vector<double>& weights);

// Inspection document for the three block forms at a common parameter value.
std::string render_blocks_json(int n, double value, double epsilon);

// Comparison CSV, one line per sampled parameter assignment. Columns:
// family, cartan_type, params, dim_printed, dim_corrected, Lambda,
// threshold, expected_einstein, expected_tangential, recomputed_tangential,
// match. The recomputed label and the threshold use the corrected dimension;
// match additionally requires agreement under the printed dimension.
std::string render_catalog_csv(const TableReport& report);

// Radial eigenvalue TSV: lambda, nu, m, eigenvalue, oracle, rel_error.
std::string render_cone_tsv(const std::vector<ConeModeRow>& rows);

// Heat decay TSV: t, norm, bound.
std::string render_heat_tsv(const HeatReport& report);

// Flow trace TSV: k, dist_g_to_Pi, bound_g_to_Pi, dist_step, bound_step,
// dist_Pi_step, bound_Pi_step, within_R.
std::string render_flow_tsv(const FlowTrace& trace);

} // namespace conelab
