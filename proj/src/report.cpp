#include "pcalib/report.hpp"

#include <cstdio>
#include <cstdlib>

#include "pcalib/calibration.hpp"

namespace pcalib {

double round_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string format_sig(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

EvidenceReport make_report(const std::string& formula,
                           nlohmann::ordered_json inputs, double bf,
                           double pi0, std::vector<std::string> warnings) {
  EvidenceReport r;
  r.formula = formula;
  r.inputs = std::move(inputs);
  r.bf = bf;
  r.pi0 = pi0;
  r.posterior = posterior_from_bf(bf, pi0);
  r.warnings = std::move(warnings);
  return r;
}

nlohmann::ordered_json to_json(const EvidenceReport& report) {
  nlohmann::ordered_json j;
  j["formula"] = report.formula;
  j["inputs"] = report.inputs;
  j["bf"] = round_sig(report.bf);
  j["pi0"] = round_sig(report.pi0);
  j["posterior"] = round_sig(report.posterior);
  j["warnings"] = report.warnings;
  return j;
}

nlohmann::ordered_json to_json(const ValidationResult& result) {
  nlohmann::ordered_json j;
  j["suite"] = result.suite;
  j["seed"] = result.seed;
  j["samples"] = result.samples;
  j["exact"] = result.exact;
  j["pass"] = result.pass;
  j["worst_margin"] = round_sig(result.worst_margin);
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : result.checks) {
    nlohmann::ordered_json cj;
    cj["alpha"] = round_sig(c.alpha);
    if (result.suite == "fisher") cj["null_p"] = round_sig(c.null_p);
    cj["empirical"] = round_sig(c.empirical);
    if (result.suite == "rlb") cj["exact"] = round_sig(c.exact);
    cj["se"] = round_sig(c.se);
    cj["margin"] = round_sig(c.margin);
    cj["ok"] = c.bound_ok && c.exact_ok;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["warnings"] = result.warnings;
  return j;
}

nlohmann::ordered_json to_json(const FindleyCurveRow& row) {
  nlohmann::ordered_json j;
  j["n"] = row.n;
  j["alpha"] = round_sig(row.alpha);
  j["h_n"] = round_sig(row.h_n);
  j["theta_hat"] = round_sig(row.theta_hat);
  j["v"] = round_sig(row.v);
  j["C"] = round_sig(row.C);
  j["bf_bic_raw_n"] = round_sig(row.bf_bic_raw_n);
  j["bf_bic_tess"] = round_sig(row.bf_bic_tess);
  j["bf_pbic"] = round_sig(row.bf_pbic);
  j["post_bic_raw_n"] = round_sig(row.post_bic_raw_n);
  j["post_bic_tess"] = round_sig(row.post_bic_tess);
  j["post_pbic"] = round_sig(row.post_pbic);
  return j;
}

}  // namespace pcalib
