// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "edgeguard/cli/commands.hpp"
#include "edgeguard/cli/family_file.hpp"
#include "edgeguard/manipulator.hpp"
#include "edgeguard/margin.hpp"
#include "edgeguard/verify.hpp"
#include "json.hpp"
#include "oracles.hpp"
#include "random_family.hpp"

using namespace edgeguard;
namespace fs = std::filesystem;

namespace {

using P = Polynomial;
using Clock = std::chrono::steady_clock;
using SlotSet = std::set<std::string>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first one becomes the reported detail.
struct Checker {
  Outcome out;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (out.pass) out.detail = what;
    out.pass = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs >= limit_s) {
    r.detail = fmt::format("{:.1f} s over the {:.0f} s limit{}{}", secs, limit_s, r.detail.empty() ? "" : "; ",
                           r.detail);
    r.pass = false;
  }
  if (!r.pass) ++failures;
  std::cout << fmt::format("{} {} {} ({:.2f} s){}{}\n", r.pass ? "PASS" : "FAIL", id, name, secs,
                           r.detail.empty() ? "" : ": ", r.detail)
            << std::flush;
}

SlotSet slot_set(const TestProblem& tp) {
  SlotSet s;
  for (const auto& slot : tp.slots) s.insert(slot_label(slot.position()));
  return s;
}

std::set<SlotSet> structural_patterns(const std::vector<TestProblem>& problems) {
  std::set<SlotSet> out;
  for (const auto& tp : problems) out.insert(slot_set(tp));
  return out;
}

std::string describe(const std::set<SlotSet>& patterns) {
  std::string s;
  for (const auto& p : patterns) {
    s += s.empty() ? "{" : " {";
    for (const auto& l : p) s += l + (l == *p.rbegin() ? "" : ",");
    s += "}";
  }
  return s;
}

bool coefficients_match(const P& a, const P& b, double tol) {
  const int n = std::max(a.degree(), b.degree());
  for (int k = 0; k <= n; ++k) {
    if (std::abs(a.coeff(k) - b.coeff(k)) > tol) return false;
  }
  return true;
}

bool same_set(const std::vector<P>& got, const std::vector<P>& want, double tol) {
  if (got.size() != want.size()) return false;
  for (const auto& w : want) {
    if (std::none_of(got.begin(), got.end(), [&](const P& g) { return coefficients_match(g, w, tol); })) return false;
  }
  return true;
}

Outcome minimal_structure() {
  Checker c;
  const auto problems = enumerate_minimal(manipulator_family(0.1));
  const auto patterns = structural_patterns(problems);
  const std::set<SlotSet> expected{
      {"B(1,2)", "B(2,1)"}, {"B(1,2)", "D(2,2)"}, {"B(1,2)", "D(2,1)"}, {"B(2,1)", "D(1,2)"},
      {"B(2,1)", "D(1,1)"}, {"D(1,1)", "D(2,2)"}, {"D(1,2)", "D(2,1)"},
  };
  c.expect(patterns == expected, "patterns " + describe(patterns));
  c.expect(!patterns.count({"D(1,1)", "D(2,1)"}) && !patterns.count({"D(1,2)", "D(2,2)"}),
           "a column-clashing D pattern is present");
  return c.out;
}

Outcome kd_structure() {
  Checker c;
  const auto patterns = structural_patterns(enumerate_kamal_dahleh(manipulator_family(0.1)));
  const std::set<SlotSet> expected{
      {"B(1,2)", "B(2,1)", "D(1,2)", "D(2,1)"},
      {"B(1,2)", "B(2,1)", "D(1,1)", "D(2,2)"},
  };
  c.expect(patterns == expected, "patterns " + describe(patterns));
  return c.out;
}

Outcome kharitonov_conformance() {
  Checker c;
  const double eps = 0.1, tol = 1e-12;
  const auto fam = manipulator_family(eps);
  const P s3 = P::Monomial(1, 3);

  c.expect(same_set(kharitonov_vertices(fam.b(0, 1)), {s3, 2 * s3}, tol), "B12 vertices");
  c.expect(same_set(kharitonov_vertices(fam.b(1, 0)), {-1 * s3, P{}}, tol), "B21 vertices");
  const auto e12 = kharitonov_edges(fam.b(0, 1));
  const auto e21 = kharitonov_edges(fam.b(1, 0));
  c.expect(e12.size() == 1 && e21.size() == 1, "B edge counts");
  if (e12.size() == 1 && e21.size() == 1) {
    for (double l : {0.0, 0.3, 1.0}) {
      // λ·s³ + (1−λ)·2s³ and −λ·s³ are traced by the edges up to the direction of λ.
      const bool b12 = coefficients_match(e12[0].at(l), (l + (1 - l) * 2) * s3, tol) ||
                       coefficients_match(e12[0].at(1 - l), (l + (1 - l) * 2) * s3, tol);
      const bool b21 = coefficients_match(e21[0].at(l), -l * s3, tol) ||
                       coefficients_match(e21[0].at(1 - l), -l * s3, tol);
      c.expect(b12 && b21, fmt::format("B edge point at lambda {}", l));
    }
  }

  // Nominal gains; each interval is center ± center·ε.
  const double kd[] = {6.07, 2.22, 2.22, 1.62};
  const double kp[] = {6.12, 2.24, 2.24, 1.64};
  const double kr[] = {5.11, 1.87, 1.87, 1.37};
  for (std::size_t e = 0; e < 4; ++e) {
    const double kdl = kd[e] - kd[e] * eps, kdu = kd[e] + kd[e] * eps;
    const double kpl = kp[e] - kp[e] * eps, kpu = kp[e] + kp[e] * eps;
    const double krl = kr[e] - kr[e] * eps, kru = kr[e] + kr[e] * eps;
    const std::vector<P> patterns{
        P{krl, kpl, kdu},
        P{krl, kpu, kdu},
        P{kru, kpl, kdl},
        P{kru, kpu, kdl},
    };
    const auto got = kharitonov_vertices(fam.d(e / 2, e % 2));
    c.expect(same_set(got, patterns, tol), fmt::format("D({},{}) vertices", e / 2 + 1, e % 2 + 1));
    for (std::size_t v = 0; v < got.size() && v < 4; ++v) {
      c.expect(coefficients_match(got[v], patterns[v], tol),
               fmt::format("D({},{}) vertex r{} out of order", e / 2 + 1, e % 2 + 1, v + 1));
    }
  }
  return c.out;
}

Outcome equivalence_suite() {
  Checker c;
  std::mt19937_64 rng(20240613);
  CheckConfig cfg;
  cfg.grid_points_per_axis = 17;
  cfg.borderline_band = 1e-3;
  int accepted = 0, borderline = 0, stable = 0, draws = 0;
  while (accepted < 50 && draws < 400) {
    ++draws;
    const auto fam = reference::random_family(rng);
    const Verdict minimal = check_family(fam, cfg, SetChoice::kMinimal);
    const Verdict kd = check_family(fam, cfg, SetChoice::kKamalDahleh);
    const Verdict oracle = oracle_family(fam, cfg, 3);
    const auto marginal = VerdictStatus::kMarginal;
    if (minimal.status == marginal || kd.status == marginal || oracle.status == marginal) {
      ++borderline;
      continue;
    }
    ++accepted;
    stable += minimal.stable() ? 1 : 0;
    c.expect(minimal.status == kd.status && kd.status == oracle.status,
             fmt::format("draw {}: minimal {} kd {} oracle {}", draws, status_name(minimal.status),
                         status_name(kd.status), status_name(oracle.status)));
  }
  c.expect(accepted == 50, fmt::format("only {} non-borderline families in {} draws", accepted, draws));
  c.expect(stable > 0 && stable < accepted, fmt::format("{} of {} stable; the suite needs both outcomes", stable, accepted));
  if (c.out.pass) {
    c.out.detail = fmt::format("{} families, {} stable, {} borderline draws skipped", accepted, stable, borderline);
  }
  return c.out;
}

Outcome manipulator_margin() {
  Checker c;
  const double tol = 1e-3;
  CheckConfig cfg;
  const auto tmpl = manipulator_template();
  const MarginResult minimal = margin_bisect(tmpl, cfg, SetChoice::kMinimal, 0.0, 1.0, tol);
  const MarginResult oracle = margin_bisect_oracle(tmpl, cfg, 3, 0.0, 1.0, tol);
  c.expect(std::abs(minimal.epsilon - oracle.epsilon) <= 2 * tol,
           fmt::format("minimal {:.5f} vs oracle {:.5f}", minimal.epsilon, oracle.epsilon));

  std::string sequence;
  int switches = 0;
  bool previous = true;
  for (int k = 0; k <= 10; ++k) {
    const bool s = check_family(tmpl.at(k / 10.0), cfg, SetChoice::kMinimal).stable();
    sequence += s ? 'T' : 'F';
    if (k == 0) c.expect(s, "unstable at epsilon 0");
    if (k > 0 && s != previous) ++switches;
    previous = s;
  }
  c.expect(switches == 1, "verdict sequence " + sequence);
  if (c.out.pass) {
    c.out.detail = fmt::format("eps* minimal {:.5f}, oracle {:.5f}; sequence {}", minimal.epsilon, oracle.epsilon,
                               sequence);
  }
  return c.out;
}

Outcome dimension_reduction() {
  Checker c;
  const fs::path file = fs::temp_directory_path() / "edgeguard_acceptance_manipulator.json";
  std::ostringstream out, err;
  int code = cli::run({"edgeguard", "example", "manipulator", "--epsilon", "0.01", "--emit", file.string()}, out, err);
  c.expect(code == cli::kExitStable, "example emit failed: " + err.str());
  out.str("");
  code = cli::run({"edgeguard", "compare", file.string(), "--grid", "33", "--output", "json"}, out, err);
  fs::remove(file);
  const auto j = nlohmann::json::parse(out.str());
  std::map<std::string, nlohmann::json> sets;
  for (const auto& s : j["sets"]) sets[s["set"].get<std::string>()] = s;
  if (!sets.count("minimal") || !sets.count("kd") || !sets["minimal"].contains("verdict") ||
      !sets["kd"].contains("verdict")) {
    return {false, "compare did not evaluate both testing sets: " + out.str()};
  }
  const auto& m = sets["minimal"]["verdict"];
  const auto& k = sets["kd"]["verdict"];
  c.expect(m["max_dimension"] == 2 && k["max_dimension"] == 4,
           fmt::format("dimensions {} vs {}", m["max_dimension"].dump(), k["max_dimension"].dump()));
  const double ratio = k["routh_evaluations"].get<double>() / m["routh_evaluations"].get<double>();
  c.expect(ratio >= 10.0, fmt::format("Routh ratio {:.1f}", ratio));
  c.expect(j["agree"].get<bool>() && code == cli::kExitStable, "verdicts differ or are not definite: exit " +
                                                                 std::to_string(code));
  if (c.out.pass) {
    c.out.detail = fmt::format("Routh evaluations {} (minimal) vs {} (kd), ratio {:.0f}; verdict {}",
                               m["routh_evaluations"].dump(), k["routh_evaluations"].dump(), ratio,
                               m["status"].get<std::string>());
  }
  return c.out;
}

Outcome assumption_a() {
  Checker c;
  const auto r = check_assumption_a(manipulator_family(0.1));
  auto dets = r.vertex_determinants;
  std::sort(dets.begin(), dets.end());
  const std::vector<double> want{1, 1, 2, 3};
  bool match = dets.size() == want.size();
  for (std::size_t i = 0; match && i < dets.size(); ++i) match = std::abs(dets[i] - want[i]) <= 1e-12;
  c.expect(r.holds && match, "vertex determinants do not equal {2, 3, 1, 1}");

  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> v(-4, 4);
  for (int t = 0; t < 20; ++t) {
    const auto fam = reference::random_family(rng);
    PolynomialMatrix b(2), d(2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        b(i, j) = fam.b(i, j).midpoint();
        d(i, j) = fam.d(i, j).midpoint();
      }
    }
    for (int tag = 0; tag < 2; ++tag) {
      for (std::size_t e = 0; e < 4; ++e) {
        auto f = [&](double x) {
          auto bb = b, dd = d;
          auto& m = tag == 0 ? bb : dd;
          std::vector<double> coeffs = m(e / 2, e % 2).coeffs();
          coeffs.resize(static_cast<std::size_t>(fam.n_deg) + 1, 0.0);
          coeffs.back() = x;
          m(e / 2, e % 2) = P(std::move(coeffs));
          return det_scalar(member_leading_matrix(fam, bb, dd));
        };
        const double a = v(rng), z = v(rng);
        const double lhs = f(a) + f(z), rhs = 2 * f((a + z) / 2);
        c.expect(std::abs(lhs - rhs) <= 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)}),
                 fmt::format("affinity probe failed on family {}", t));
      }
    }
  }
  return c.out;
}

Outcome stability_primitives() {
  Checker c;
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> coef(-5, 5);
  std::uniform_int_distribution<int> deg(1, 8);
  int compared = 0, skipped = 0;
  while (compared < 500) {
    std::vector<double> cs(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : cs) x = coef(rng);
    const P p(std::move(cs));
    if (p.degree() < 1) continue;
    double abscissa = -1e300;
    for (const auto& r : roots_oracle(p)) abscissa = std::max(abscissa, r.real());
    if (std::abs(abscissa) <= 1e-6) {
      ++skipped;
      continue;
    }
    ++compared;
    c.expect(is_hurwitz(p) == (abscissa < 0), "is_hurwitz disagrees with the roots");
  }

  std::uniform_int_distribution<int> icoef(-4, 4), ideg(0, 3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    PolynomialMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> e(static_cast<std::size_t>(ideg(rng)) + 1);
        for (auto& x : e) x = icoef(rng);
        m(i, j) = P(std::move(e));
      }
    }
    c.expect(det_cofactor(m) == det_bareiss(m).det, fmt::format("determinants differ on instance {}", t));
  }

  double worst = 0.0;
  auto probe = [&](const RowAssembler& build, std::size_t row) {
    const auto parts = row_affine_decompose(build, row, rng());
    for (int k = 0; k < 5; ++k) {
      P b{coef(rng), coef(rng), coef(rng), coef(rng)}, d{coef(rng), coef(rng), coef(rng)};
      const P direct = reference::det_leibniz(build(b, d));
      const P split = b * parts.delta_b + d * parts.delta_d + parts.delta_rest;
      const double scale = std::max({1.0, direct.max_abs_coeff(), split.max_abs_coeff()});
      worst = std::max(worst, (direct - split).max_abs_coeff() / scale);
    }
  };
  const auto manip = manipulator_family(0.1);
  for (int t = 0; t < 50; ++t) {
    const auto fam = t < 2 ? manip : reference::random_family(rng);
    const std::size_t row = static_cast<std::size_t>(t % 2);
    const std::size_t kb = row == 0 ? 1 : 0, kd = static_cast<std::size_t>((t / 2) % 2);
    probe(
        [&](const P& b, const P& d) {
          PolynomialMatrix bm(2), dm(2);
          for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
              bm(i, j) = fam.b(i, j).midpoint();
              dm(i, j) = fam.d(i, j).midpoint();
            }
          }
          bm(row, kb) = b;
          dm(row, kd) = d;
          return mat_add(mat_mul(bm, fam.a), mat_mul(dm, fam.c));
        },
        row);
  }
  c.expect(worst < 1e-10, fmt::format("row-affine residual {:.3g}", worst));
  if (c.out.pass) {
    c.out.detail = fmt::format("{} polynomials compared ({} near the axis skipped), worst residual {:.2g}", compared,
                               skipped, worst);
  }
  return c.out;
}

}  // namespace

int main() {
  criterion(1, "minimal-set golden structure", 1, minimal_structure);
  criterion(2, "Kamal-Dahleh golden structure", 1, kd_structure);
  criterion(3, "Kharitonov conformance", 1, kharitonov_conformance);
  criterion(4, "testing-set equivalence on random families", 300, equivalence_suite);
  criterion(5, "manipulator margin", 300, manipulator_margin);
  criterion(6, "dimension reduction", 120, dimension_reduction);
  criterion(7, "Assumption A exactness", 1, assumption_a);
  criterion(8, "stability primitives", 60, stability_primitives);
  std::cout << (failures == 0 ? "all criteria passed" : fmt::format("{} criteria failed", failures)) << '\n';
  return failures == 0 ? 0 : 1;
}
