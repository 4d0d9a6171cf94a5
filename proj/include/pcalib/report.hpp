#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pcalib/harness.hpp"

namespace pcalib {

// One evidence statement: which formula produced the Bayes factor, the
// echoed inputs, and the implied posterior probability of the null.
struct EvidenceReport {
  std::string formula;  // rlb | rlb_xi | bf_bic | bf_pbic_linear |
                        // bf_anova | bf_ttest | bf_fisher
  nlohmann::ordered_json inputs;
  double bf = 1;
  double pi0 = 0.5;
  double posterior = 0.5;  // always posterior_from_bf(bf, pi0)
  std::vector<std::string> warnings;
};

/// Builds a report with the posterior derived from (bf, pi0).
EvidenceReport make_report(const std::string& formula,
                           nlohmann::ordered_json inputs, double bf,
                           double pi0,
                           std::vector<std::string> warnings = {});

/// Round to the given number of significant digits (printed values carry
/// nine, enough to compare against seven-digit references).
double round_sig(double x, int digits = 9);
std::string format_sig(double x, int digits = 9);

nlohmann::ordered_json to_json(const EvidenceReport& report);
nlohmann::ordered_json to_json(const ValidationResult& result);
nlohmann::ordered_json to_json(const FindleyCurveRow& row);

}  // namespace pcalib
