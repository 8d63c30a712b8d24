#include "edgeguard/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "edgeguard/kernels/kernels.hpp"
#include "parallel.hpp"
#include "verify_internal.hpp"

namespace edgeguard {
namespace detail {
namespace {

std::vector<double> padded(const Polynomial& p, std::size_t ncoeff) {
  if (p.coeffs().size() > ncoeff) throw std::logic_error("member degree exceeds the characteristic degree");
  std::vector<double> c = p.coeffs();
  c.resize(ncoeff, 0.0);
  return c;
}

Polynomial member_at(const TestProblem& tp, const UncertainFamily& fam, std::span<const double> lambdas) {
  auto [bc, dc] = instantiate(tp, lambdas);
  return assemble_unchecked(fam, bc, dc);
}

std::string member_reason(MemberClass c) {
  switch (c) {
    case MemberClass::kUnstable:
      return "not Hurwitz";
    case MemberClass::kDegreeDrop:
      return "degree drop";
    case MemberClass::kSingular:
      return "root on or near the imaginary axis";
    case MemberClass::kStable:
      break;
  }
  return "stable";
}

}  // namespace

MemberClass classify_member(const Polynomial& p, int degree, double tol) {
  if (p.degree() != degree || std::abs(p.leading()) <= tol * p.max_abs_coeff()) return MemberClass::kDegreeDrop;
  switch (routh_classify(p.coeffs(), tol)) {
    case RouthStatus::kStable:
      return MemberClass::kStable;
    case RouthStatus::kUnstable:
      return MemberClass::kUnstable;
    case RouthStatus::kSingular:
      break;
  }
  return MemberClass::kSingular;
}

Witness make_witness(std::string problem, std::vector<double> lambdas, Polynomial p, std::string reason,
                     std::optional<double> omega) {
  Witness w{std::move(problem), std::move(lambdas), omega, std::move(p), std::move(reason), std::nullopt};
  if (w.polynomial.degree() >= 1) {
    try {
      w.rightmost_root = roots_oracle(w.polynomial).back();
    } catch (const std::runtime_error&) {
    }
  }
  return w;
}

void Outcome::mark_marginal(Witness w) {
  if (status != VerdictStatus::kStable) return;
  status = VerdictStatus::kMarginal;
  witness = std::move(w);
}

LambdaGrid::LambdaGrid(std::size_t slots, int points) : slots_(slots), points_(points), size_(1) {
  for (std::size_t i = 0; i < slots; ++i) size_ *= static_cast<std::uint64_t>(points);
}

double LambdaGrid::value(int digit) const {
  return digit == points_ - 1 ? 1.0 : static_cast<double>(digit) / static_cast<double>(points_ - 1);
}

void LambdaGrid::lambdas(std::uint64_t sample, std::span<double> out) const {
  for (std::size_t i = slots_; i-- > 0;) {
    out[i] = value(static_cast<int>(sample % static_cast<std::uint64_t>(points_)));
    sample /= static_cast<std::uint64_t>(points_);
  }
}

LambdaGrid::Cursor::Cursor(const LambdaGrid& grid, std::uint64_t start)
    : grid_(&grid), digits_(grid.slots()), lambdas_(grid.slots()) {
  for (std::size_t i = grid.slots(); i-- > 0;) {
    digits_[i] = static_cast<int>(start % static_cast<std::uint64_t>(grid.points()));
    start /= static_cast<std::uint64_t>(grid.points());
    lambdas_[i] = grid.value(digits_[i]);
  }
}

void LambdaGrid::Cursor::advance() {
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < grid_->points()) {
      lambdas_[i] = grid_->value(digits_[i]);
      return;
    }
    digits_[i] = 0;
    lambdas_[i] = 0.0;
  }
}

void multiaffine_weights(std::span<const double> lambdas, std::span<double> w) {
  w[0] = 1.0;
  for (std::size_t mask = 1; mask < w.size(); ++mask) {
    w[mask] = w[mask & (mask - 1)] * lambdas[static_cast<std::size_t>(std::countr_zero(mask))];
  }
}

MultiaffineBasis MultiaffineBasis::Build(const TestProblem& tp, const UncertainFamily& fam) {
  MultiaffineBasis b;
  b.slots = tp.dimension();
  b.terms = std::size_t{1} << b.slots;
  b.ncoeff = static_cast<std::size_t>(fam.characteristic_degree()) + 1;
  b.corners.reserve(b.terms * b.ncoeff);
  std::vector<double> lam(b.slots);
  for (std::size_t mask = 0; mask < b.terms; ++mask) {
    for (std::size_t i = 0; i < b.slots; ++i) lam[i] = (mask >> i) & 1U ? 1.0 : 0.0;
    const auto c = padded(member_at(tp, fam, lam), b.ncoeff);
    b.corners.insert(b.corners.end(), c.begin(), c.end());
  }
  b.q = b.corners;
  for (std::size_t i = 0; i < b.slots; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < b.terms; ++mask) {
      if (!(mask & bit)) continue;
      for (std::size_t k = 0; k < b.ncoeff; ++k) b.q[mask * b.ncoeff + k] -= b.q[(mask ^ bit) * b.ncoeff + k];
    }
  }
  return b;
}

Outcome grid_outcome(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg) {
  if (tp.dimension() > kMaxGridSlots) {
    throw std::invalid_argument("problem " + tp.id() + " has " + std::to_string(tp.dimension()) +
                                " slots; grid checking allows at most 4 (use the minimal testing set)");
  }
  const auto& kt = kernels::active_kernels();
  const int degree = fam.characteristic_degree();
  const double tol = cfg.margin_tol;
  const double band = cfg.borderline_band;
  const MultiaffineBasis basis = MultiaffineBasis::Build(tp, fam);
  const std::size_t ncoeff = basis.ncoeff;

  std::vector<double> shifted;
  if (band > 0.0) {
    for (std::size_t t = 0; t < basis.terms; ++t) {
      const auto row = basis.term(t);
      const auto c = padded(taylor_shift(Polynomial(std::vector<double>(row.begin(), row.end())), -band), ncoeff);
      shifted.insert(shifted.end(), c.begin(), c.end());
    }
  }

  // The last slot varies fastest, so each run of samples along it is
  // p = P0 + λ·P1 with P0, P1 fixed by the other slots.
  const std::size_t k = basis.slots;
  const LambdaGrid grid(k, cfg.grid_points_per_axis);
  const std::uint64_t total = grid.size();
  const std::size_t count = k == 0 ? 1 : static_cast<std::size_t>(cfg.grid_points_per_axis);
  const LambdaGrid outer(k == 0 ? 0 : k - 1, cfg.grid_points_per_axis);
  const std::size_t half = basis.terms / 2;
  const std::size_t stride = kernels::padded_stride(count);
  std::vector<double> weights(2 * stride, 0.0);
  for (std::size_t l = 0; l < count; ++l) {
    weights[l] = 1.0;
    weights[stride + l] = k == 0 ? 0.0 : grid.value(static_cast<int>(l));
  }
  std::vector<double> pair(2 * ncoeff);
  std::vector<double> band_pair(2 * ncoeff);
  std::vector<double> coeffs(ncoeff * stride, 0.0);
  std::vector<std::uint8_t> status(stride);
  std::vector<std::uint8_t> band_status(stride, 0);
  std::vector<double> lam(k);
  std::vector<double> w(std::max<std::size_t>(half, 1));
  constexpr auto kStable = static_cast<std::uint8_t>(RouthStatus::kStable);

  auto fold = [&](const double* q, std::vector<double>& dst) {
    std::fill(dst.begin(), dst.end(), 0.0);
    if (k == 0) {
      std::copy(q, q + ncoeff, dst.begin());
      return;
    }
    for (std::size_t m = 0; m < half; ++m) {
      for (std::size_t c = 0; c < ncoeff; ++c) {
        dst[c] += w[m] * q[m * ncoeff + c];
        dst[ncoeff + c] += w[m] * q[(m + half) * ncoeff + c];
      }
    }
  };

  Outcome out;
  out.members = total;
  LambdaGrid::Cursor cursor(outer, 0);
  for (std::uint64_t o = 0; o < outer.size(); ++o, cursor.advance()) {
    const std::uint64_t start = o * count;
    multiaffine_weights(cursor.lambdas(), w);
    fold(basis.q.data(), pair);
    kt.combine(pair.data(), 2, ncoeff, weights.data(), count, stride, coeffs.data());
    kt.routh(coeffs.data(), ncoeff, count, stride, tol, status.data());
    if (band > 0.0) {
      fold(shifted.data(), band_pair);
      kt.combine(band_pair.data(), 2, ncoeff, weights.data(), count, stride, coeffs.data());
      kt.routh(coeffs.data(), ncoeff, count, stride, tol, band_status.data());
    }

    for (std::size_t l = 0; l < count; ++l) {
      out.routh += band > 0.0 ? 2 : 1;
      if (status[l] == kStable && band_status[l] == kStable) continue;
      grid.lambdas(start + l, lam);
      Polynomial p = member_at(tp, fam, lam);
      ++out.routh;
      const MemberClass cls = classify_member(p, degree, tol);
      if (cls == MemberClass::kStable) {
        const char* why = status[l] == kStable ? "rightmost root within the borderline band"
                                               : "sample on the stability boundary";
        out.mark_marginal(make_witness(tp.id(), lam, std::move(p), why));
      } else if (cls == MemberClass::kSingular) {
        out.mark_marginal(make_witness(tp.id(), lam, std::move(p), member_reason(cls)));
      } else if (cls == MemberClass::kUnstable && band > 0.0 && spectral_abscissa(p) <= band) {
        out.mark_marginal(make_witness(tp.id(), lam, std::move(p), "rightmost root within the borderline band"));
      } else {
        out.status = VerdictStatus::kUnstable;
        out.witness = make_witness(tp.id(), lam, std::move(p), member_reason(cls));
        out.members = start + l + 1;
        return out;
      }
    }
  }
  return out;
}

}  // namespace detail

namespace {

using detail::Outcome;

constexpr std::size_t kMaxMarginalListed = 1000;

Outcome both_outcome(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg) {
  Outcome g = detail::grid_outcome(tp, fam, cfg);
  Outcome z = detail::zero_exclusion_outcome(tp, fam, cfg);
  Outcome out = g;
  out.routh = g.routh + z.routh;
  out.min_modulus = z.min_modulus;
  out.min_modulus_omega = z.min_modulus_omega;
  const bool clear_split = (g.status == VerdictStatus::kStable && z.status == VerdictStatus::kUnstable) ||
                           (g.status == VerdictStatus::kUnstable && z.status == VerdictStatus::kStable);
  if (clear_split) {
    out.status = VerdictStatus::kMarginal;
    out.witness = g.witness ? g.witness : z.witness;
    out.witness->reason = "grid and zero exclusion disagree: " + out.witness->reason;
  } else if (g.status == VerdictStatus::kStable && z.status == VerdictStatus::kMarginal) {
    out.status = VerdictStatus::kMarginal;
    out.witness = z.witness;
  } else if (g.status == VerdictStatus::kMarginal && z.status == VerdictStatus::kUnstable) {
    out.status = VerdictStatus::kUnstable;
    out.witness = z.witness;
  }
  return out;
}

Outcome problem_outcome(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg) {
  switch (cfg.method) {
    case Method::kGrid:
      return detail::grid_outcome(tp, fam, cfg);
    case Method::kZeroExclusion:
      return detail::zero_exclusion_outcome(tp, fam, cfg);
    case Method::kBoth:
      break;
  }
  return both_outcome(tp, fam, cfg);
}

Verdict single_problem_verdict(const TestProblem& tp, Outcome o, std::chrono::steady_clock::time_point t0) {
  Verdict v;
  v.status = o.status;
  v.witness = std::move(o.witness);
  if (v.status == VerdictStatus::kMarginal) v.marginal.push_back(tp.id());
  v.patterns = 1;
  v.max_dimension = tp.dimension();
  v.problems_checked = 1;
  v.routh_evaluations = o.routh;
  v.min_modulus = o.min_modulus;
  v.min_modulus_omega = o.min_modulus_omega;
  v.wall_time = std::chrono::steady_clock::now() - t0;
  return v;
}

struct ProblemRecord {
  VerdictStatus status = VerdictStatus::kStable;
  std::uint64_t routh = 0;
  double min_modulus = 0.0;
  double min_modulus_omega = 0.0;
  bool has_modulus = false;
};

}  // namespace

void CheckConfig::validate() const {
  if (grid_points_per_axis < 2) throw std::invalid_argument("grid_points_per_axis must be at least 2");
  if (freq_points < 2) throw std::invalid_argument("freq_points must be at least 2");
  if (freq_max && !(std::isfinite(*freq_max) && *freq_max > 0.0)) {
    throw std::invalid_argument("freq_max must be positive and finite");
  }
  if (!(std::isfinite(margin_tol) && margin_tol >= 0.0)) throw std::invalid_argument("margin_tol must be non-negative");
  if (!(std::isfinite(borderline_band) && borderline_band >= 0.0)) {
    throw std::invalid_argument("borderline_band must be non-negative");
  }
  if (oracle_budget == 0) throw std::invalid_argument("oracle_budget must be positive");
  if (zero_exclusion_refine_depth < 0 || zero_exclusion_refine_depth > 12) {
    throw std::invalid_argument("zero_exclusion_refine_depth must lie in [0, 12]");
  }
}

std::string_view status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::kStable:
      return "stable";
    case VerdictStatus::kUnstable:
      return "unstable";
    case VerdictStatus::kMarginal:
      break;
  }
  return "marginal";
}

AssumptionAViolation::AssumptionAViolation(AssumptionAReport report)
    : std::runtime_error("leading coefficient matrix can be singular (Assumption A fails)"),
      report_(std::move(report)) {}

Verdict check_problem_grid(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  return single_problem_verdict(tp, detail::grid_outcome(tp, fam, cfg), t0);
}

Verdict check_problem_zero_exclusion(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  return single_problem_verdict(tp, detail::zero_exclusion_outcome(tp, fam, cfg), t0);
}

Verdict check_family(const UncertainFamily& fam, const CheckConfig& cfg, SetChoice choice) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  AssumptionAReport report = check_assumption_a(fam);
  if (!report.holds) throw AssumptionAViolation(std::move(report));

  const TestingSet set = TestingSet::Build(fam, choice);
  if (set.max_dimension() > detail::kMaxGridSlots) {
    throw std::invalid_argument("testing set has problems with " + std::to_string(set.max_dimension()) +
                                " slots; at most 4 are supported (use the minimal testing set)");
  }
  const std::uint64_t count = set.problem_count();
  std::vector<ProblemRecord> records(static_cast<std::size_t>(count));
  std::map<std::uint64_t, Witness> witnesses;
  std::mutex witness_mutex;

  const std::uint64_t stop = detail::run_ordered(count, cfg.jobs, [&](std::uint64_t i) {
    Outcome o = problem_outcome(set.problem(i), fam, cfg);
    ProblemRecord& r = records[static_cast<std::size_t>(i)];
    r.status = o.status;
    r.routh = o.routh;
    if (o.min_modulus) {
      r.has_modulus = true;
      r.min_modulus = *o.min_modulus;
      r.min_modulus_omega = *o.min_modulus_omega;
    }
    if (o.witness) {
      std::lock_guard lock(witness_mutex);
      witnesses.emplace(i, std::move(*o.witness));
    }
    return o.status == VerdictStatus::kUnstable;
  });

  Verdict v;
  v.set = std::string(set_name(choice));
  v.patterns = set.patterns().size();
  v.max_dimension = set.max_dimension();
  const std::uint64_t end = stop < count ? stop + 1 : count;
  v.problems_checked = end;
  for (std::uint64_t i = 0; i < end; ++i) {
    const ProblemRecord& r = records[static_cast<std::size_t>(i)];
    v.routh_evaluations += r.routh;
    if (r.has_modulus && (!v.min_modulus || r.min_modulus < *v.min_modulus)) {
      v.min_modulus = r.min_modulus;
      v.min_modulus_omega = r.min_modulus_omega;
    }
    if (r.status == VerdictStatus::kMarginal) {
      if (v.marginal.size() < kMaxMarginalListed) v.marginal.push_back(witnesses.at(i).problem);
      if (!v.witness) v.witness = witnesses.at(i);
      v.status = VerdictStatus::kMarginal;
    }
  }
  if (stop < count) {
    v.status = VerdictStatus::kUnstable;
    v.witness = witnesses.at(stop);
  }
  v.wall_time = std::chrono::steady_clock::now() - t0;
  return v;
}

}  // namespace edgeguard
