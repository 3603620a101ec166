#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpd4/types.hpp"

namespace cpd4 {

using Json = nlohmann::ordered_json;

// One grid node in a report. Fields that were not computed (or could not be
// computed at this node) stay NaN and serialize as null.
struct ReportPoint {
  static constexpr Real kUnset = std::numeric_limits<Real>::quiet_NaN();

  Real s = 0.0;
  Real t = 0.0;
  bool excluded = false;      // adapted frame unavailable at this node
  bool chart_failed = false;  // coordinate-chart assumptions violated here

  Real theta = kUnset;
  Real h3_11 = kUnset, h3_12 = kUnset, h3_22 = kUnset;
  Real h4_11 = kUnset, h4_12 = kUnset, h4_22 = kUnset;
  Real e1_theta = kUnset;
  Real dtheta_ds = kUnset, dtheta_dt = kUnset;

  Real r_codazzi_a = kUnset, r_codazzi_b = kUnset;
  Real r_theta = kUnset, r_m = kUnset;

  Real K_ext = kUnset, K_int = kUnset;
  Real commutator = kUnset;
  Vector4 H = Vector4::Constant(kUnset);
};

// Maxima of absolute values over the finite entries of the point records,
// plus bookkeeping counts. Every numeric field here is a reduction over
// ReportPoint fields; see summarize().
struct ReportSummary {
  static constexpr Real kUnset = std::numeric_limits<Real>::quiet_NaN();

  std::string verdict;  // "yes" | "no" | "inconclusive"; empty -> omitted
  int total = 0;
  int excluded = 0;
  int chart_violations = 0;

  Real max_offdiag = kUnset;  // max over |h3_12|, |h4_12|
  Real max_h4_11 = kUnset;
  Real max_h3_11_plus_e1_theta = kUnset;
  Real max_dtheta_ds = kUnset;
  Real max_dtheta_dt = kUnset;
  Real max_codazzi = kUnset;  // max over |r_codazzi_a|, |r_codazzi_b|
  Real max_r_theta = kUnset;
  Real max_r_m = kUnset;
  Real max_K_gap = kUnset;  // max over |K_ext - K_int|
  Real max_commutator = kUnset;
};

struct ReportDocument {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string command;  // "verify" | "invariants"
  std::string label;
  Json config_echo;
  std::vector<ReportPoint> points;
  ReportSummary summary;
};

// Recomputes every numeric summary field as a maximum over the finite
// per-point values; counts excluded and chart-failed nodes. Leaves the
// verdict empty (callers set it).
ReportSummary summarize(const std::vector<ReportPoint>& points);

Json to_json(const ReportPoint& point);
Json to_json(const ReportSummary& summary);
Json to_json(const ReportDocument& doc);

// Serializes the document to `path` (2-space indentation, trailing newline).
void write_report(const ReportDocument& doc, const std::filesystem::path& path);

}  // namespace cpd4
