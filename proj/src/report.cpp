#include "cpd4/report.hpp"

#include <cmath>
#include <fstream>

#include "cpd4/errors.hpp"

namespace cpd4 {

namespace {

// Tracks the maximum absolute value over finite samples; NaN when none seen.
struct MaxAbs {
  Real value = ReportSummary::kUnset;
  void feed(Real x) {
    if (!std::isfinite(x)) return;
    const Real a = std::abs(x);
    if (!(value >= a)) value = a;  // also replaces the initial NaN
  }
};

Json number_or_null(Real x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

ReportSummary summarize(const std::vector<ReportPoint>& points) {
  ReportSummary s;
  s.total = static_cast<int>(points.size());
  MaxAbs offdiag, h4_11, diag_b, dts, dtt, codazzi, r_theta, r_m, k_gap, comm;
  for (const ReportPoint& p : points) {
    if (p.excluded) ++s.excluded;
    if (p.chart_failed) ++s.chart_violations;
    offdiag.feed(p.h3_12);
    offdiag.feed(p.h4_12);
    h4_11.feed(p.h4_11);
    if (std::isfinite(p.h3_11) && std::isfinite(p.e1_theta)) {
      diag_b.feed(p.h3_11 + p.e1_theta);
    }
    dts.feed(p.dtheta_ds);
    dtt.feed(p.dtheta_dt);
    codazzi.feed(p.r_codazzi_a);
    codazzi.feed(p.r_codazzi_b);
    r_theta.feed(p.r_theta);
    r_m.feed(p.r_m);
    if (std::isfinite(p.K_ext) && std::isfinite(p.K_int)) {
      k_gap.feed(p.K_ext - p.K_int);
    }
    comm.feed(p.commutator);
  }
  s.max_offdiag = offdiag.value;
  s.max_h4_11 = h4_11.value;
  s.max_h3_11_plus_e1_theta = diag_b.value;
  s.max_dtheta_ds = dts.value;
  s.max_dtheta_dt = dtt.value;
  s.max_codazzi = codazzi.value;
  s.max_r_theta = r_theta.value;
  s.max_r_m = r_m.value;
  s.max_K_gap = k_gap.value;
  s.max_commutator = comm.value;
  return s;
}

Json to_json(const ReportPoint& p) {
  Json j;
  j["s"] = p.s;
  j["t"] = p.t;
  j["excluded"] = p.excluded;
  j["chart_failed"] = p.chart_failed;
  j["theta"] = number_or_null(p.theta);
  j["h3_11"] = number_or_null(p.h3_11);
  j["h3_12"] = number_or_null(p.h3_12);
  j["h3_22"] = number_or_null(p.h3_22);
  j["h4_11"] = number_or_null(p.h4_11);
  j["h4_12"] = number_or_null(p.h4_12);
  j["h4_22"] = number_or_null(p.h4_22);
  j["e1_theta"] = number_or_null(p.e1_theta);
  j["dtheta_ds"] = number_or_null(p.dtheta_ds);
  j["dtheta_dt"] = number_or_null(p.dtheta_dt);
  j["r_codazzi_a"] = number_or_null(p.r_codazzi_a);
  j["r_codazzi_b"] = number_or_null(p.r_codazzi_b);
  j["r_theta"] = number_or_null(p.r_theta);
  j["r_m"] = number_or_null(p.r_m);
  j["K_ext"] = number_or_null(p.K_ext);
  j["K_int"] = number_or_null(p.K_int);
  j["commutator"] = number_or_null(p.commutator);
  if (p.H.allFinite()) {
    j["H"] = Json::array({p.H(0), p.H(1), p.H(2), p.H(3)});
  } else {
    j["H"] = nullptr;
  }
  return j;
}

Json to_json(const ReportSummary& s) {
  Json j;
  if (!s.verdict.empty()) j["verdict"] = s.verdict;
  j["total"] = s.total;
  j["excluded"] = s.excluded;
  j["chart_violations"] = s.chart_violations;
  j["max_offdiag"] = number_or_null(s.max_offdiag);
  j["max_h4_11"] = number_or_null(s.max_h4_11);
  j["max_h3_11_plus_e1_theta"] = number_or_null(s.max_h3_11_plus_e1_theta);
  j["max_dtheta_ds"] = number_or_null(s.max_dtheta_ds);
  j["max_dtheta_dt"] = number_or_null(s.max_dtheta_dt);
  j["max_codazzi"] = number_or_null(s.max_codazzi);
  j["max_r_theta"] = number_or_null(s.max_r_theta);
  j["max_r_m"] = number_or_null(s.max_r_m);
  j["max_K_gap"] = number_or_null(s.max_K_gap);
  j["max_commutator"] = number_or_null(s.max_commutator);
  return j;
}

Json to_json(const ReportDocument& doc) {
  Json j;
  j["tool"] = doc.tool;
  j["version"] = doc.version;
  j["command"] = doc.command;
  j["label"] = doc.label;
  j["config"] = doc.config_echo;
  j["summary"] = to_json(doc.summary);
  Json pts = Json::array();
  for (const ReportPoint& p : doc.points) pts.push_back(to_json(p));
  j["points"] = std::move(pts);
  return j;
}

void write_report(const ReportDocument& doc,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open report file for writing: " + path.string());
  }
  out << to_json(doc).dump(2) << "\n";
  if (!out) {
    throw IoError("failed while writing report file: " + path.string());
  }
}

}  // namespace cpd4
