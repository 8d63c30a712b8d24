#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "verify_internal.hpp"

namespace edgeguard::detail {
namespace {

using Complex = std::complex<double>;

constexpr std::size_t kMaxConfirmNodes = 4096;
constexpr std::size_t kMaxAmbiguousCells = 64;

double segment_distance(Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  const double t = len2 > 0.0 ? std::clamp(-(std::conj(d) * a).real() / len2, 0.0, 1.0) : 0.0;
  return std::abs(a + t * d);
}

/// True when the origin lies within distance r of the convex hull of pts;
/// the cheap rejections run first.
bool origin_near_hull(std::span<const Complex> pts, double r) {
  Complex mean = 0.0;
  for (const Complex& z : pts) {
    if (std::abs(z) <= r) return true;
    mean += z;
  }
  mean /= static_cast<double>(pts.size());
  double radius = 0.0;
  for (const Complex& z : pts) radius = std::max(radius, std::abs(z - mean));
  if (std::abs(mean) > radius + r) return false;

  if (std::abs(mean) > 0.0) {
    const Complex u = mean / std::abs(mean);
    if (std::all_of(pts.begin(), pts.end(), [&](const Complex& z) { return (std::conj(u) * z).real() > r; })) {
      return false;
    }
  }

  std::vector<double> angles;
  angles.reserve(pts.size());
  for (const Complex& z : pts) angles.push_back(std::arg(z));
  std::sort(angles.begin(), angles.end());
  double max_gap = 2.0 * std::numbers::pi - (angles.back() - angles.front());
  for (std::size_t i = 1; i < angles.size(); ++i) max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  if (max_gap <= std::numbers::pi) return true;
  if (r == 0.0) return false;

  // Outside the hull: its nearest point lies on a segment between two samples.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (segment_distance(pts[i], pts[j]) <= r) return true;
    }
  }
  return false;
}

enum class CellResult { kExcluded, kUnstable, kAmbiguous };

class ZeroExclusion {
 public:
  ZeroExclusion(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg)
      : tp_(tp), fam_(fam), cfg_(cfg), basis_(MultiaffineBasis::Build(tp, fam)),
        degree_(fam.characteristic_degree()) {
    for (std::size_t t = 0; t < basis_.terms; ++t) {
      const auto row = basis_.term(t);
      terms_.emplace_back(std::vector<double>(row.begin(), row.end()));
    }
  }

  Outcome run();
  std::vector<ValueSetSample> samples();

 private:
  double frequency(int index) const;

  bool check_corners_and_base();
  void bound_coefficients(const LambdaGrid& grid);
  void term_values(double omega, std::vector<Complex>& out) const;
  Complex value(std::span<const Complex> zq, std::span<const double> lambdas) const;
  double scale(double omega) const;
  /// Bound on the distance between char(jω; λ), ω ∈ [w_lo, w_hi], and the
  /// chord joining its endpoint values.
  double chord_radius(double w_lo, double w_hi) const;
  CellResult test_member(std::span<const double> lambdas, double omega);
  CellResult confirm(std::vector<double> lo, std::vector<double> hi, double w_lo, double w_hi, int depth);

  const TestProblem& tp_;
  const UncertainFamily& fam_;
  const CheckConfig& cfg_;
  MultiaffineBasis basis_;
  int degree_;
  std::vector<Polynomial> terms_;
  std::vector<double> coef_max_;
  double root_bound_ = 0.0;
  std::size_t confirm_nodes_ = 0;
  Outcome out_;
};

Complex ZeroExclusion::value(std::span<const Complex> zq, std::span<const double> lambdas) const {
  std::vector<double> w(basis_.terms);
  multiaffine_weights(lambdas, w);
  Complex z = 0.0;
  for (std::size_t t = 0; t < basis_.terms; ++t) z += w[t] * zq[t];
  return z;
}

void ZeroExclusion::term_values(double omega, std::vector<Complex>& out) const {
  out.resize(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) out[t] = eval_imag(terms_[t], omega);
}

double ZeroExclusion::scale(double omega) const {
  double s = 0.0;
  double wk = 1.0;
  for (double c : coef_max_) {
    s += c * wk;
    wk *= omega;
  }
  return s;
}

double ZeroExclusion::chord_radius(double w_lo, double w_hi) const {
  double second = 0.0;
  double wk = 1.0;
  for (std::size_t k = 2; k < coef_max_.size(); ++k) {
    second += static_cast<double>(k * (k - 1)) * coef_max_[k] * wk;
    wk *= w_hi;
  }
  const double dw = w_hi - w_lo;
  return second * dw * dw / 8.0;
}

bool ZeroExclusion::check_corners_and_base() {
  const std::size_t lead = static_cast<std::size_t>(degree_);
  const double sign0 = basis_.corner(0)[lead] < 0.0 ? -1.0 : 1.0;
  std::vector<double> lam(basis_.slots);
  for (std::size_t mask = 0; mask < basis_.terms; ++mask) {
    const auto c = basis_.corner(mask);
    double m = 0.0;
    for (double x : c) m = std::max(m, std::abs(x));
    const double sign = c[lead] < 0.0 ? -1.0 : 1.0;
    if (std::abs(c[lead]) <= cfg_.margin_tol * m || sign != sign0) {
      for (std::size_t i = 0; i < basis_.slots; ++i) lam[i] = (mask >> i) & 1U ? 1.0 : 0.0;
      out_.status = VerdictStatus::kUnstable;
      out_.witness = make_witness(tp_.id(), lam, Polynomial(std::vector<double>(c.begin(), c.end())), "degree drop");
      return false;
    }
  }

  std::fill(lam.begin(), lam.end(), 0.0);
  auto [bc, dc] = instantiate(tp_, lam);
  Polynomial base = assemble_unchecked(fam_, bc, dc);
  ++out_.routh;
  const MemberClass cls = classify_member(base, degree_, cfg_.margin_tol);
  if (cls == MemberClass::kStable) return true;
  if (cls == MemberClass::kSingular) {
    out_.mark_marginal(make_witness(tp_.id(), lam, std::move(base), "base member has a root on or near the imaginary axis"));
  } else {
    out_.status = VerdictStatus::kUnstable;
    out_.witness = make_witness(tp_.id(), lam, std::move(base),
                                cls == MemberClass::kDegreeDrop ? "degree drop" : "base member not Hurwitz");
  }
  return false;
}

void ZeroExclusion::bound_coefficients(const LambdaGrid& grid) {
  const std::size_t ncoeff = basis_.ncoeff;
  coef_max_.assign(ncoeff, 0.0);
  std::vector<double> lam(basis_.slots);
  std::vector<double> w(basis_.terms);
  std::vector<double> c(ncoeff);
  for (std::uint64_t s = 0; s < grid.size(); ++s) {
    grid.lambdas(s, lam);
    multiaffine_weights(lam, w);
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t t = 0; t < basis_.terms; ++t) {
      const auto row = basis_.term(t);
      for (std::size_t k = 0; k < ncoeff; ++k) c[k] += w[t] * row[k];
    }
    double ratio = 0.0;
    for (std::size_t k = 0; k < ncoeff; ++k) {
      coef_max_[k] = std::max(coef_max_[k], std::abs(c[k]));
      if (k + 1 < ncoeff) ratio = std::max(ratio, std::abs(c[k]));
    }
    root_bound_ = std::max(root_bound_, 1.0 + ratio / std::abs(c[ncoeff - 1]));
  }
}

CellResult ZeroExclusion::test_member(std::span<const double> lambdas, double omega) {
  std::vector<double> lam(lambdas.begin(), lambdas.end());
  auto [bc, dc] = instantiate(tp_, lam);
  Polynomial p = assemble_unchecked(fam_, bc, dc);
  ++out_.routh;
  const MemberClass cls = classify_member(p, degree_, cfg_.margin_tol);
  if (cls == MemberClass::kStable) return CellResult::kExcluded;
  if (cls == MemberClass::kSingular) {
    out_.mark_marginal(make_witness(tp_.id(), std::move(lam), std::move(p), "value set touches the origin", omega));
    return CellResult::kAmbiguous;
  }
  out_.status = VerdictStatus::kUnstable;
  out_.witness = make_witness(tp_.id(), std::move(lam), std::move(p),
                              cls == MemberClass::kDegreeDrop ? "degree drop" : "value set contains the origin", omega);
  return CellResult::kUnstable;
}

CellResult ZeroExclusion::confirm(std::vector<double> lo, std::vector<double> hi, double w_lo, double w_hi,
                                  int depth) {
  const std::size_t k = basis_.slots;
  const double w_mid = 0.5 * (w_lo + w_hi);
  std::vector<double> lam(k);
  for (std::size_t i = 0; i < k; ++i) lam[i] = 0.5 * (lo[i] + hi[i]);
  if (test_member(lam, w_mid) == CellResult::kUnstable) return CellResult::kUnstable;
  for (std::size_t mask = 0; mask < basis_.terms; ++mask) {
    for (std::size_t i = 0; i < k; ++i) lam[i] = (mask >> i) & 1U ? hi[i] : lo[i];
    if (test_member(lam, w_mid) == CellResult::kUnstable) return CellResult::kUnstable;
  }
  if (depth == 0 || ++confirm_nodes_ > kMaxConfirmNodes) return CellResult::kAmbiguous;

  bool ambiguous = false;
  const double omegas[3] = {w_lo, w_mid, w_hi};
  std::vector<Complex> zq;
  std::vector<Complex> pts(2 * basis_.terms);
  for (int h = 0; h < 2; ++h) {
    for (std::size_t sub = 0; sub < basis_.terms; ++sub) {
      std::vector<double> slo(k);
      std::vector<double> shi(k);
      for (std::size_t i = 0; i < k; ++i) {
        const double mid = 0.5 * (lo[i] + hi[i]);
        slo[i] = (sub >> i) & 1U ? mid : lo[i];
        shi[i] = (sub >> i) & 1U ? hi[i] : mid;
      }
      for (int e = 0; e < 2; ++e) {
        term_values(omegas[h + e], zq);
        for (std::size_t mask = 0; mask < basis_.terms; ++mask) {
          for (std::size_t i = 0; i < k; ++i) lam[i] = (mask >> i) & 1U ? shi[i] : slo[i];
          pts[static_cast<std::size_t>(e) * basis_.terms + mask] = value(zq, lam);
        }
      }
      if (!origin_near_hull(pts, chord_radius(omegas[h], omegas[h + 1]))) continue;
      const CellResult r = confirm(slo, shi, omegas[h], omegas[h + 1], depth - 1);
      if (r == CellResult::kUnstable) return r;
      if (r == CellResult::kAmbiguous) ambiguous = true;
    }
  }
  return ambiguous ? CellResult::kAmbiguous : CellResult::kExcluded;
}

double ZeroExclusion::frequency(int index) const {
  const double w_max = cfg_.freq_max.value_or(1.0 + 2.0 * root_bound_);
  if (index == cfg_.freq_points - 1) return w_max;
  return w_max * index / (cfg_.freq_points - 1);
}

std::vector<ValueSetSample> ZeroExclusion::samples() {
  const LambdaGrid grid(basis_.slots, cfg_.grid_points_per_axis);
  bound_coefficients(grid);
  std::vector<ValueSetSample> out;
  out.reserve(static_cast<std::size_t>(grid.size()) * static_cast<std::size_t>(cfg_.freq_points));
  std::vector<Complex> zq;
  std::vector<double> lam(basis_.slots);
  for (int fi = 0; fi < cfg_.freq_points; ++fi) {
    const double omega = frequency(fi);
    term_values(omega, zq);
    for (std::uint64_t s = 0; s < grid.size(); ++s) {
      grid.lambdas(s, lam);
      out.push_back({omega, lam, value(zq, lam)});
    }
  }
  return out;
}

Outcome ZeroExclusion::run() {
  if (basis_.slots > kMaxGridSlots) {
    throw std::invalid_argument("problem " + tp_.id() + " has " + std::to_string(basis_.slots) +
                                " slots; zero exclusion allows at most 4 (use the minimal testing set)");
  }
  if (!check_corners_and_base()) return out_;

  const LambdaGrid grid(basis_.slots, cfg_.grid_points_per_axis);
  bound_coefficients(grid);
  const std::uint64_t total = grid.size();
  out_.members = total;

  const std::size_t k = basis_.slots;
  const int g = cfg_.grid_points_per_axis;
  std::vector<std::uint64_t> axis_stride(k);
  std::uint64_t st = 1;
  for (std::size_t i = k; i-- > 0;) {
    axis_stride[i] = st;
    st *= static_cast<std::uint64_t>(g);
  }
  std::vector<std::uint64_t> corner_offset(basis_.terms, 0);
  for (std::size_t mask = 0; mask < basis_.terms; ++mask) {
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1U) corner_offset[mask] += axis_stride[i];
    }
  }

  std::vector<Complex> prev(total);
  std::vector<Complex> cur(total);
  std::vector<Complex> zq;
  std::vector<Complex> pts(2 * basis_.terms);
  std::vector<double> lam(k);
  std::vector<double> w(basis_.terms);
  std::vector<int> digits(k);
  std::size_t ambiguous_cells = 0;
  double min_mod = std::numeric_limits<double>::infinity();
  double min_omega = 0.0;
  std::uint64_t min_sample = 0;

  for (int fi = 0; fi < cfg_.freq_points; ++fi) {
    const double omega = frequency(fi);
    const double omega_prev = fi == 0 ? 0.0 : frequency(fi - 1);
    term_values(omega, zq);
    const double sc = scale(omega);
    for (std::uint64_t s = 0; s < total; ++s) {
      grid.lambdas(s, lam);
      multiaffine_weights(lam, w);
      Complex z = 0.0;
      for (std::size_t t = 0; t < basis_.terms; ++t) z += w[t] * zq[t];
      cur[s] = z;
      const double m = sc > 0.0 ? std::abs(z) / sc : std::abs(z);
      if (m < min_mod) {
        min_mod = m;
        min_omega = omega;
        min_sample = s;
      }
    }

    if (fi > 0) {
      const double radius = chord_radius(omega_prev, omega);
      std::fill(digits.begin(), digits.end(), 0);
      for (;;) {
        std::uint64_t base = 0;
        for (std::size_t i = 0; i < k; ++i) base += static_cast<std::uint64_t>(digits[i]) * axis_stride[i];
        for (std::size_t mask = 0; mask < basis_.terms; ++mask) {
          pts[mask] = prev[base + corner_offset[mask]];
          pts[basis_.terms + mask] = cur[base + corner_offset[mask]];
        }
        if (origin_near_hull(pts, radius)) {
          std::vector<double> lo(k);
          std::vector<double> hi(k);
          for (std::size_t i = 0; i < k; ++i) {
            lo[i] = grid.value(digits[i]);
            hi[i] = grid.value(digits[i] + 1);
          }
          confirm_nodes_ = 0;
          const CellResult r = confirm(lo, hi, omega_prev, omega, cfg_.zero_exclusion_refine_depth);
          if (r == CellResult::kUnstable) return out_;
          if (r == CellResult::kAmbiguous && ++ambiguous_cells >= kMaxAmbiguousCells) return out_;
        }
        std::size_t i = k;
        while (i > 0 && digits[i - 1] == g - 2) digits[--i] = 0;
        if (i == 0) break;
        ++digits[i - 1];
      }
    }
    std::swap(prev, cur);
  }

  out_.min_modulus = min_mod;
  out_.min_modulus_omega = min_omega;
  if (min_mod <= cfg_.margin_tol || (cfg_.borderline_band > 0.0 && min_mod < cfg_.borderline_band)) {
    grid.lambdas(min_sample, lam);
    if (test_member(lam, min_omega) == CellResult::kExcluded) {
      auto [bc, dc] = instantiate(tp_, lam);
      out_.mark_marginal(make_witness(tp_.id(), lam, assemble_unchecked(fam_, bc, dc),
                                      "value set within the borderline band of the origin", min_omega));
    }
  }
  return out_;
}

}  // namespace

Outcome zero_exclusion_outcome(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg) {
  return ZeroExclusion(tp, fam, cfg).run();
}

}  // namespace edgeguard::detail

namespace edgeguard {

std::vector<ValueSetSample> sample_value_set(const TestProblem& tp, const UncertainFamily& fam, const CheckConfig& cfg) {
  cfg.validate();
  if (tp.dimension() > detail::kMaxGridSlots) throw std::invalid_argument("value set sampling allows at most 4 slots");
  return detail::ZeroExclusion(tp, fam, cfg).samples();
}

}  // namespace edgeguard
