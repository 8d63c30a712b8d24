#include "edgeguard/cli/report.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

namespace edgeguard::cli {
namespace {

using nlohmann::json;

double millis(std::chrono::nanoseconds t) { return static_cast<double>(t.count()) / 1e6; }

json witness_json(const Witness& w) {
  json j;
  j["problem"] = w.problem;
  j["lambdas"] = w.lambdas;
  j["polynomial"] = w.polynomial.coeffs();
  j["reason"] = w.reason;
  if (w.omega) j["omega"] = *w.omega;
  if (w.rightmost_root) j["rightmost_root"] = {w.rightmost_root->real(), w.rightmost_root->imag()};
  return j;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) s += (s.empty() ? "" : ", ") + fmt::format("{:.6g}", x);
  return s;
}

}  // namespace

std::string polynomial_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    const double c = p.coeffs()[k];
    if (c == 0.0) continue;
    std::string mag = fmt::format("{:.10g}", std::abs(c));
    if (k > 0 && mag == "1") mag.clear();
    const std::string power = k == 0 ? "" : (k == 1 ? "s" : fmt::format("s^{}", k));
    if (s.empty()) {
      s = (c < 0 ? "-" : "") + mag + power;
    } else {
      s += (c < 0 ? " - " : " + ") + mag + power;
    }
  }
  return s;
}

json verdict_json(const Verdict& v, bool with_timing) {
  json j;
  j["stable"] = v.stable();
  j["status"] = std::string(status_name(v.status));
  j["set"] = v.set;
  j["patterns"] = v.patterns;
  j["max_dimension"] = v.max_dimension;
  j["problems_checked"] = v.problems_checked;
  j["routh_evaluations"] = v.routh_evaluations;
  j["marginal"] = v.marginal;
  if (with_timing) j["wall_time_ms"] = millis(v.wall_time);
  if (v.witness) j["witness"] = witness_json(*v.witness);
  if (v.min_modulus) {
    j["min_modulus"] = *v.min_modulus;
    j["min_modulus_omega"] = *v.min_modulus_omega;
  }
  return j;
}

std::string verdict_table(const Verdict& v) {
  std::string s;
  s += fmt::format("{:<20}{}\n", "verdict", status_name(v.status));
  s += fmt::format("{:<20}{}\n", "set", v.set);
  s += fmt::format("{:<20}{}\n", "patterns", v.patterns);
  s += fmt::format("{:<20}{}\n", "max dimension", v.max_dimension);
  s += fmt::format("{:<20}{}\n", "problems checked", v.problems_checked);
  s += fmt::format("{:<20}{}\n", "routh evaluations", v.routh_evaluations);
  s += fmt::format("{:<20}{:.1f} ms\n", "wall time", millis(v.wall_time));
  if (v.min_modulus) {
    s += fmt::format("{:<20}{:.6g} at omega {:.6g}\n", "min modulus", *v.min_modulus, *v.min_modulus_omega);
  }
  if (!v.marginal.empty()) {
    s += fmt::format("{:<20}{}\n", "marginal", v.marginal.front());
    for (std::size_t i = 1; i < v.marginal.size(); ++i) s += fmt::format("{:<20}{}\n", "", v.marginal[i]);
  }
  if (v.witness) {
    const Witness& w = *v.witness;
    s += fmt::format("{:<20}{}\n", "witness", w.problem);
    s += fmt::format("{:<20}{}\n", "  reason", w.reason);
    s += fmt::format("{:<20}({})\n", "  parameters", join_numbers(w.lambdas));
    if (w.omega) s += fmt::format("{:<20}{:.6g}\n", "  omega", *w.omega);
    s += fmt::format("{:<20}{}\n", "  polynomial", polynomial_text(w.polynomial));
    if (w.rightmost_root) {
      s += fmt::format("{:<20}{:.6g} {} {:.6g}j\n", "  rightmost root", w.rightmost_root->real(),
                       w.rightmost_root->imag() < 0 ? "-" : "+", std::abs(w.rightmost_root->imag()));
    }
  }
  return s;
}

json margin_json(const MarginResult& r, std::string_view set) {
  json j;
  j["set"] = std::string(set);
  j["epsilon"] = r.epsilon;
  j["last_stable"] = r.last_stable;
  j["first_unstable"] = r.first_unstable ? json(*r.first_unstable) : json(nullptr);
  j["steps"] = r.steps;
  return j;
}

std::string margin_table(const MarginResult& r, std::string_view set) {
  std::string s;
  s += fmt::format("{:<20}{}\n", "set", set);
  s += fmt::format("{:<20}{:.6f}\n", "epsilon*", r.epsilon);
  s += fmt::format("{:<20}{:.6f}\n", "last stable", r.last_stable);
  s += fmt::format("{:<20}{}\n", "first unstable", r.first_unstable ? fmt::format("{:.6f}", *r.first_unstable) : "none");
  s += fmt::format("{:<20}{}\n", "checks", r.steps);
  return s;
}

CompareReport summarize_comparison(std::vector<CompareRow> rows) {
  CompareReport r;
  r.rows = std::move(rows);
  r.agree = true;
  for (const auto& row : r.rows) {
    if (!row.verdict) continue;
    const VerdictStatus st = row.verdict->status;
    if (st == VerdictStatus::kMarginal || (r.common_status && *r.common_status != st)) r.agree = false;
    if (!r.common_status) r.common_status = st;
  }
  if (!r.common_status) r.agree = false;
  if (!r.agree) r.common_status.reset();
  return r;
}

json compare_json(const CompareReport& r) {
  json j;
  j["agree"] = r.agree;
  j["status"] = r.common_status ? json(std::string(status_name(*r.common_status))) : json("disagreement");
  json sets = json::array();
  for (const auto& row : r.rows) {
    json e;
    e["set"] = row.set;
    if (row.verdict) {
      e["verdict"] = verdict_json(*row.verdict);
    } else {
      e["skipped"] = row.skipped_reason;
    }
    sets.push_back(e);
  }
  j["sets"] = sets;
  return j;
}

std::string compare_table(const CompareReport& r) {
  std::string s = fmt::format("{:<10}{:>10}{:>12}{:>8}{:>16}{:>14}  {}\n", "set", "patterns", "problems", "dim",
                              "routh evals", "wall ms", "verdict");
  for (const auto& row : r.rows) {
    if (!row.verdict) {
      s += fmt::format("{:<10}{:>10}{:>12}{:>8}{:>16}{:>14}  skipped: {}\n", row.set, "-", "-", "-", "-", "-",
                       row.skipped_reason);
      continue;
    }
    const Verdict& v = *row.verdict;
    s += fmt::format("{:<10}{:>10}{:>12}{:>8}{:>16}{:>14.1f}  {}\n", row.set, v.patterns, v.problems_checked,
                     v.max_dimension, v.routh_evaluations, millis(v.wall_time), status_name(v.status));
  }
  s += r.agree ? fmt::format("verdicts agree: {}\n", status_name(*r.common_status))
               : std::string("verdicts disagree or are marginal: flagged for investigation\n");
  return s;
}

json counts_json(const CountsReport& r) {
  auto one = [](const SetCounts& c) {
    json j;
    j["patterns"] = c.patterns;
    j["problems"] = c.problems;
    j["max_dimension"] = c.max_dimension;
    j["nominal_problems"] = c.nominal_problems;
    j["nominal_dimension"] = c.nominal_dimension;
    return j;
  };
  json j;
  j["minimal"] = one(r.minimal);
  j["kd"] = one(r.kamal_dahleh);
  return j;
}

std::string counts_table(const CountsReport& r) {
  std::string s = fmt::format("{:<10}{:>10}{:>12}{:>8}{:>18}{:>14}\n", "set", "patterns", "problems", "dim",
                              "nominal problems", "nominal dim");
  auto row = [&](std::string_view name, const SetCounts& c) {
    s += fmt::format("{:<10}{:>10}{:>12}{:>8}{:>18.0f}{:>14}\n", name, c.patterns, c.problems, c.max_dimension,
                     c.nominal_problems, c.nominal_dimension);
  };
  row("minimal", r.minimal);
  row("kd", r.kamal_dahleh);
  return s;
}

}  // namespace edgeguard::cli
