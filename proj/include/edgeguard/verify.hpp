#pragma once

#include <chrono>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgeguard/family.hpp"
#include "edgeguard/testing_set.hpp"

namespace edgeguard {

enum class Method { kGrid, kZeroExclusion, kBoth };

struct CheckConfig {
  /// λ samples per slot axis, endpoints included.
  int grid_points_per_axis = 33;
  int freq_points = 512;
  /// Upper end of the frequency sweep; unset selects it from a root
  /// magnitude bound over the sampled members.
  std::optional<double> freq_max;
  double margin_tol = kDefaultMarginTol;
  Method method = Method::kGrid;
  /// Worker threads for problem-level parallelism; 0 means 1.
  std::size_t jobs = 1;
  /// When positive, any sampled member whose rightmost root has real part
  /// in [−band, band] marks the verdict marginal.
  double borderline_band = 0.0;
  /// Routh tests allowed for oracle_family.
  std::uint64_t oracle_budget = 10'000'000;
  /// Bisection depth used to confirm a suspected zero crossing.
  int zero_exclusion_refine_depth = 4;

  /// Throws std::invalid_argument for out-of-range settings.
  void validate() const;
};

enum class VerdictStatus { kStable, kUnstable, kMarginal };

std::string_view status_name(VerdictStatus s);

/// Enough data to replay a failure: assemble the problem at `lambdas` (or
/// the oracle coefficient setting) and test `polynomial`.
struct Witness {
  std::string problem;
  std::vector<double> lambdas;
  std::optional<double> omega;
  Polynomial polynomial;
  std::string reason;
  std::optional<std::complex<double>> rightmost_root;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::kStable;
  std::optional<Witness> witness;
  /// Problems (or oracle members) whose evidence was inconclusive.
  std::vector<std::string> marginal;
  std::string set;
  std::size_t patterns = 0;
  std::size_t max_dimension = 0;
  std::uint64_t problems_checked = 0;
  std::uint64_t routh_evaluations = 0;
  std::chrono::nanoseconds wall_time{0};
  /// Zero-exclusion robustness indicator: smallest sampled |char(jω)|
  /// relative to the coefficient magnitude bound at that ω.
  std::optional<double> min_modulus;
  std::optional<double> min_modulus_omega;

  bool stable() const { return status == VerdictStatus::kStable; }
};

/// Raised by check_family when the leading matrix can be singular.
class AssumptionAViolation : public std::runtime_error {
 public:
  explicit AssumptionAViolation(AssumptionAReport report);
  const AssumptionAReport& report() const { return report_; }

 private:
  AssumptionAReport report_;
};

/// Grid sweep over λ ∈ [0,1]^k: every sample must be Hurwitz with the full
/// characteristic degree. Stops at the first clearly unstable sample.
/// Throws std::invalid_argument when the problem has more than 4 slots.
Verdict check_problem_grid(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg);

/// Zero exclusion: a Hurwitz base member (λ = 0), constant degree, and a
/// value set at jω that avoids the origin on every frequency interval.
Verdict check_problem_zero_exclusion(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg);

struct ValueSetSample {
  double omega = 0.0;
  std::vector<double> lambdas;
  std::complex<double> value;
};

/// The value set char(jω; λ) at every λ grid sample and every frequency of
/// the zero-exclusion sweep, frequency-major.
std::vector<ValueSetSample> sample_value_set(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg);

/// Checks every problem of the chosen testing set. Throws
/// AssumptionAViolation if the family's leading matrix can be singular.
Verdict check_family(const UncertainFamily& fam, const CheckConfig& cfg, SetChoice choice);

/// Brute force over the full coefficient box: every non-point coefficient
/// of B and D takes points_per_coeff evenly spaced values, endpoints
/// included. Throws std::invalid_argument when the member count exceeds
/// cfg.oracle_budget.
Verdict oracle_family(const UncertainFamily& fam, const CheckConfig& cfg, int points_per_coeff = 3);

/// Number of members oracle_family would test.
double oracle_member_count(const UncertainFamily& fam, int points_per_coeff);

}  // namespace edgeguard
