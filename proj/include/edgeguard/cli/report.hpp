#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgeguard/margin.hpp"
#include "edgeguard/testing_set.hpp"
#include "edgeguard/verify.hpp"
#include "json.hpp"

namespace edgeguard::cli {

/// {stable, status, set, patterns, max_dimension, problems_checked,
/// routh_evaluations, wall_time_ms, marginal, witness?, min_modulus?,
/// min_modulus_omega?}. Without timing, wall_time_ms is omitted so reports
/// of identical runs compare equal.
nlohmann::json verdict_json(const Verdict& v, bool with_timing = true);
std::string verdict_table(const Verdict& v);

nlohmann::json margin_json(const MarginResult& r, std::string_view set);
std::string margin_table(const MarginResult& r, std::string_view set);

/// One row of a set comparison; `verdict` is unset when the set was skipped.
struct CompareRow {
  std::string set;
  std::optional<Verdict> verdict;
  std::string skipped_reason;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  /// True when every evaluated set reached a definite verdict and they all match.
  bool agree = false;
  std::optional<VerdictStatus> common_status;
};

CompareReport summarize_comparison(std::vector<CompareRow> rows);
nlohmann::json compare_json(const CompareReport& r);
std::string compare_table(const CompareReport& r);

std::string counts_table(const CountsReport& r);
nlohmann::json counts_json(const CountsReport& r);

/// Formats a polynomial with ascending powers, e.g. "4.599 + 5.508s + 6.677s^2".
std::string polynomial_text(const Polynomial& p);

}  // namespace edgeguard::cli
