#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "edgeguard/kernels/kernels.hpp"
#include "edgeguard/verify.hpp"
#include "parallel.hpp"
#include "verify_internal.hpp"

namespace edgeguard {
namespace {

using detail::MemberClass;
using detail::Outcome;

/// det(B·A + D·C) on flat coefficient arrays, independent of the
/// Polynomial-based assembly path. Minors over column subsets are built
/// bottom-up, expanding each along its first remaining row.
class FlatAssembler {
 public:
  explicit FlatAssembler(const UncertainFamily& fam)
      : n_(fam.order()), entry_len_(static_cast<std::size_t>(fam.n_deg) + 1),
        m_len_(static_cast<std::size_t>(fam.leading_power()) + 1),
        det_len_(static_cast<std::size_t>(fam.characteristic_degree()) + 1),
        a_len_(static_cast<std::size_t>(std::max(0, max_degree(fam.a))) + 1),
        c_len_(static_cast<std::size_t>(std::max(0, max_degree(fam.c))) + 1),
        a_(flatten(fam.a, a_len_)), c_(flatten(fam.c, c_len_)), m_(n_ * n_ * m_len_),
        minors_((std::size_t{1} << n_) * det_len_) {}

  std::size_t entry_len() const { return entry_len_; }
  std::size_t det_len() const { return det_len_; }

  /// b and d hold n×n entries of entry_len() ascending coefficients each.
  void assemble(const std::vector<double>& b, const std::vector<double>& d, double* out, std::size_t stride) {
    std::fill(m_.begin(), m_.end(), 0.0);
    accumulate_product(b, a_, a_len_);
    accumulate_product(d, c_, c_len_);

    const std::size_t full = (std::size_t{1} << n_) - 1;
    std::fill(minors_.begin(), minors_.end(), 0.0);
    minors_[0] = 1.0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
      const std::size_t row = n_ - static_cast<std::size_t>(std::popcount(mask));
      double* dst = &minors_[mask * det_len_];
      int sign = 1;
      for (std::size_t col = 0; col < n_; ++col) {
        if (!((mask >> col) & 1U)) continue;
        const double* entry = &m_[(row * n_ + col) * m_len_];
        const double* minor = &minors_[(mask ^ (std::size_t{1} << col)) * det_len_];
        const std::size_t minor_len = (n_ - row - 1) * (m_len_ - 1) + 1;
        for (std::size_t i = 0; i < m_len_; ++i) {
          if (entry[i] == 0.0) continue;
          const double f = sign * entry[i];
          for (std::size_t j = 0; j < minor_len; ++j) dst[i + j] += f * minor[j];
        }
        sign = -sign;
      }
    }
    const double* det = &minors_[full * det_len_];
    for (std::size_t k = 0; k < det_len_; ++k) out[k * stride] = det[k];
  }

 private:
  std::vector<double> flatten(const PolynomialMatrix& x, std::size_t len) const {
    std::vector<double> out(n_ * n_ * len, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const auto& c = x(i, j).coeffs();
        std::copy(c.begin(), c.end(), out.begin() + static_cast<std::ptrdiff_t>((i * n_ + j) * len));
      }
    }
    return out;
  }

  void accumulate_product(const std::vector<double>& left, const std::vector<double>& right, std::size_t right_len) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        double* dst = &m_[(i * n_ + j) * m_len_];
        for (std::size_t k = 0; k < n_; ++k) {
          const double* l = &left[(i * n_ + k) * entry_len_];
          const double* r = &right[(k * n_ + j) * right_len];
          for (std::size_t p = 0; p < entry_len_; ++p) {
            if (l[p] == 0.0) continue;
            for (std::size_t q = 0; q < right_len; ++q) dst[p + q] += l[p] * r[q];
          }
        }
      }
    }
  }

  std::size_t n_;
  std::size_t entry_len_;
  std::size_t m_len_;
  std::size_t det_len_;
  std::size_t a_len_;
  std::size_t c_len_;
  std::vector<double> a_;
  std::vector<double> c_;
  std::vector<double> m_;
  std::vector<double> minors_;
};

/// Offset of coefficient (row, col, power) inside the flat entry arrays.
std::size_t flat_index(const CoefficientRef& r, std::size_t n, std::size_t entry_len) {
  return (r.row * n + r.col) * entry_len + static_cast<std::size_t>(r.power);
}

std::vector<double> lower_entries(const IntervalPolynomialMatrix& m, std::size_t entry_len) {
  const std::size_t n = m.order();
  std::vector<double> out(n * n * entry_len, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& b = m(i, j).bounds();
      for (std::size_t k = 0; k < b.size(); ++k) out[(i * n + j) * entry_len + k] = b[k].lower;
    }
  }
  return out;
}

double grid_value(const Bounds& b, int t, int points) {
  if (t == points - 1) return b.upper;
  return b.lower + (b.upper - b.lower) * static_cast<double>(t) / static_cast<double>(points - 1);
}

}  // namespace

double oracle_member_count(const UncertainFamily& fam, int points_per_coeff) {
  return std::pow(static_cast<double>(points_per_coeff), static_cast<double>(uncertain_coefficients(fam).size()));
}

Verdict oracle_family(const UncertainFamily& fam, const CheckConfig& cfg, int points_per_coeff) {
  const auto t0 = std::chrono::steady_clock::now();
  cfg.validate();
  fam.validate();
  const std::vector<CoefficientRef> refs = uncertain_coefficients(fam);
  if (points_per_coeff < 2 && !refs.empty()) throw std::invalid_argument("points_per_coeff must be at least 2");
  const double members_d = oracle_member_count(fam, points_per_coeff);
  if (members_d > static_cast<double>(cfg.oracle_budget)) {
    throw std::invalid_argument("oracle needs " + std::to_string(static_cast<std::uint64_t>(members_d)) +
                                " Routh tests, above the budget of " + std::to_string(cfg.oracle_budget) +
                                "; use fewer points per coefficient");
  }
  const auto members = static_cast<std::uint64_t>(members_d);
  const std::size_t n = fam.order();
  const int degree = fam.characteristic_degree();
  const double tol = cfg.margin_tol;
  const double band = cfg.borderline_band;
  const auto& kt = kernels::active_kernels();
  const std::size_t entry_len = static_cast<std::size_t>(fam.n_deg) + 1;
  const std::vector<double> b_base = lower_entries(fam.b, entry_len);
  const std::vector<double> d_base = lower_entries(fam.d, entry_len);
  const std::uint64_t chunks = (members + detail::kBatch - 1) / detail::kBatch;

  auto setting_of = [&](std::uint64_t index) {
    std::vector<double> values(refs.size());
    for (std::size_t p = refs.size(); p-- > 0;) {
      const int t = static_cast<int>(index % static_cast<std::uint64_t>(points_per_coeff));
      index /= static_cast<std::uint64_t>(points_per_coeff);
      values[p] = grid_value(refs[p].bounds, t, points_per_coeff);
    }
    return values;
  };
  auto member_id = [](std::uint64_t index) { return "oracle#" + std::to_string(index); };

  std::vector<Outcome> results(static_cast<std::size_t>(chunks));
  const std::uint64_t stop = detail::run_ordered(chunks, cfg.jobs, [&](std::uint64_t chunk) {
    FlatAssembler assembler(fam);
    const std::size_t ncoeff = assembler.det_len();
    const std::uint64_t first = chunk * detail::kBatch;
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(detail::kBatch, members - first));
    const std::size_t stride = kernels::padded_stride(count);
    std::vector<double> coeffs(ncoeff * stride, 0.0);
    std::vector<double> shifted;
    std::vector<std::uint8_t> status(stride);
    std::vector<std::uint8_t> band_status(stride, 0);
    std::vector<double> b = b_base;
    std::vector<double> d = d_base;

    for (std::size_t l = 0; l < count; ++l) {
      const auto values = setting_of(first + l);
      for (std::size_t p = 0; p < refs.size(); ++p) {
        auto& target = refs[p].tag == MatrixTag::kB ? b : d;
        target[flat_index(refs[p], n, entry_len)] = values[p];
      }
      assembler.assemble(b, d, coeffs.data() + l, stride);
    }
    kt.routh(coeffs.data(), ncoeff, count, stride, tol, status.data());
    if (band > 0.0) {
      shifted.assign(ncoeff * stride, 0.0);
      std::vector<double> c(ncoeff);
      for (std::size_t l = 0; l < count; ++l) {
        for (std::size_t k = 0; k < ncoeff; ++k) c[k] = coeffs[k * stride + l];
        const std::vector<double> s = taylor_shift(Polynomial(c), -band).coeffs();
        for (std::size_t k = 0; k < s.size(); ++k) shifted[k * stride + l] = s[k];
      }
      kt.routh(shifted.data(), ncoeff, count, stride, tol, band_status.data());
    }

    Outcome& out = results[static_cast<std::size_t>(chunk)];
    out.members = count;
    constexpr auto kStable = static_cast<std::uint8_t>(RouthStatus::kStable);
    for (std::size_t l = 0; l < count; ++l) {
      out.routh += band > 0.0 ? 2 : 1;
      if (status[l] == kStable && band_status[l] == kStable) continue;
      std::vector<double> c(ncoeff);
      for (std::size_t k = 0; k < ncoeff; ++k) c[k] = coeffs[k * stride + l];
      Polynomial p(std::move(c));
      const MemberClass cls = detail::classify_member(p, degree, tol);
      const std::uint64_t index = first + l;
      if (cls == MemberClass::kStable) {
        out.mark_marginal(detail::make_witness(member_id(index), setting_of(index), std::move(p),
                                               "rightmost root within the borderline band"));
      } else if (cls == MemberClass::kSingular) {
        out.mark_marginal(detail::make_witness(member_id(index), setting_of(index), std::move(p),
                                               "root on or near the imaginary axis"));
      } else if (cls == MemberClass::kUnstable && band > 0.0 && spectral_abscissa(p) <= band) {
        out.mark_marginal(detail::make_witness(member_id(index), setting_of(index), std::move(p),
                                               "rightmost root within the borderline band"));
      } else {
        out.status = VerdictStatus::kUnstable;
        out.witness = detail::make_witness(member_id(index), setting_of(index), std::move(p),
                                           cls == MemberClass::kDegreeDrop ? "degree drop" : "not Hurwitz");
        out.members = l + 1;
        return true;
      }
    }
    return false;
  });

  Verdict v;
  v.set = "oracle";
  v.max_dimension = refs.size();
  const std::uint64_t end = stop < chunks ? stop + 1 : chunks;
  for (std::uint64_t i = 0; i < end; ++i) {
    Outcome& r = results[static_cast<std::size_t>(i)];
    v.problems_checked += r.members;
    v.routh_evaluations += r.routh;
    if (r.status == VerdictStatus::kMarginal) {
      v.marginal.push_back(r.witness->problem);
      if (v.status == VerdictStatus::kStable) {
        v.status = VerdictStatus::kMarginal;
        v.witness = r.witness;
      }
    }
  }
  if (stop < chunks) {
    v.status = VerdictStatus::kUnstable;
    v.witness = results[static_cast<std::size_t>(stop)].witness;
  }
  v.wall_time = std::chrono::steady_clock::now() - t0;
  return v;
}

}  // namespace edgeguard
