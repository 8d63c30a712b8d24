#pragma once

#include <functional>
#include <optional>

#include "edgeguard/verify.hpp"

namespace edgeguard {

struct MarginResult {
  /// Largest ε shown stable; equals last_stable.
  double epsilon = 0.0;
  double last_stable = 0.0;
  /// Smallest ε shown not stable; unset when the upper end is stable.
  std::optional<double> first_unstable;
  int steps = 0;
};

/// Verdict of the scaled family at one ε.
using MarginChecker = std::function<Verdict(const UncertainFamily&)>;

/// Bisection on ε for families nested in ε. A marginal verdict counts as
/// not stable. Throws std::domain_error when the family at eps_lo is not
/// stable and std::invalid_argument for a bad bracket or tolerance.
MarginResult bisect_margin(const ScaledFamily& tmpl, const MarginChecker& check, double eps_lo = 0.0,
                           double eps_hi = 1.0, double tol = 1e-3);

/// bisect_margin with check_family over the chosen testing set.
MarginResult margin_bisect(const ScaledFamily& tmpl, const CheckConfig& cfg, SetChoice choice = SetChoice::kMinimal,
                           double eps_lo = 0.0, double eps_hi = 1.0, double tol = 1e-3);

/// bisect_margin with oracle_family.
MarginResult margin_bisect_oracle(const ScaledFamily& tmpl, const CheckConfig& cfg, int points_per_coeff = 3,
                                  double eps_lo = 0.0, double eps_hi = 1.0, double tol = 1e-3);

}  // namespace edgeguard
