#include "edgeguard/margin.hpp"

#include <cmath>
#include <stdexcept>

namespace edgeguard {

MarginResult bisect_margin(const ScaledFamily& tmpl, const MarginChecker& check, double eps_lo, double eps_hi,
                           double tol) {
  tmpl.validate();
  if (!(eps_lo >= 0.0 && eps_lo <= eps_hi && std::isfinite(eps_hi))) {
    throw std::invalid_argument("margin bracket must satisfy 0 <= eps_lo <= eps_hi");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("margin tolerance must be positive");

  MarginResult r;
  ++r.steps;
  if (!check(tmpl.at(eps_lo)).stable()) throw std::domain_error("family is not stable at the lower end of the bracket");
  r.last_stable = eps_lo;
  ++r.steps;
  if (check(tmpl.at(eps_hi)).stable()) {
    r.last_stable = eps_hi;
    r.epsilon = eps_hi;
    return r;
  }
  double lo = eps_lo;
  double hi = eps_hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    ++r.steps;
    if (check(tmpl.at(mid)).stable()) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  r.last_stable = lo;
  r.epsilon = lo;
  r.first_unstable = hi;
  return r;
}

MarginResult margin_bisect(const ScaledFamily& tmpl, const CheckConfig& cfg, SetChoice choice, double eps_lo,
                           double eps_hi, double tol) {
  return bisect_margin(
      tmpl, [&](const UncertainFamily& fam) { return check_family(fam, cfg, choice); }, eps_lo, eps_hi, tol);
}

MarginResult margin_bisect_oracle(const ScaledFamily& tmpl, const CheckConfig& cfg, int points_per_coeff,
                                  double eps_lo, double eps_hi, double tol) {
  return bisect_margin(
      tmpl, [&](const UncertainFamily& fam) { return oracle_family(fam, cfg, points_per_coeff); }, eps_lo, eps_hi,
      tol);
}

}  // namespace edgeguard
