#include "edgeguard/family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgeguard {
namespace {

constexpr double kLeadingDetRelTol = 1e-12;
constexpr std::size_t kMaxLeadingParameters = 24;

double hadamard_bound(const ScalarMatrix& m) {
  double prod = 1.0;
  for (std::size_t i = 0; i < m.order(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.order(); ++j) row += m(i, j) * m(i, j);
    prod *= std::sqrt(row);
  }
  return prod;
}

PolynomialMatrix lower_matrix(const IntervalPolynomialMatrix& m) {
  PolynomialMatrix out(m.order());
  for (std::size_t i = 0; i < m.order(); ++i) {
    for (std::size_t j = 0; j < m.order(); ++j) out(i, j) = m(i, j).lower_polynomial();
  }
  return out;
}

Polynomial with_coefficient(const Polynomial& p, int power, double value) {
  std::vector<double> c = p.coeffs();
  if (static_cast<int>(c.size()) <= power) c.resize(static_cast<std::size_t>(power) + 1, 0.0);
  c[static_cast<std::size_t>(power)] = value;
  return Polynomial(std::move(c));
}

IntervalPolynomial scaled_entry(const std::vector<CoefficientScale>& s, double eps) {
  std::vector<Bounds> b;
  b.reserve(s.size());
  for (const auto& cs : s) b.push_back({cs.center - cs.spread * eps, cs.center + cs.spread * eps});
  return IntervalPolynomial(std::move(b));
}

}  // namespace

void UncertainFamily::validate() const {
  const std::size_t n = a.order();
  if (n == 0) throw std::invalid_argument("family order must be positive");
  if (c.order() != n || b.order() != n || d.order() != n) {
    throw std::invalid_argument("A, C, B and D must share one order");
  }
  if (n_deg < 0) throw std::invalid_argument("n_deg must be non-negative");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (b(i, j).highest_power() > n_deg || d(i, j).highest_power() > n_deg) {
        throw std::invalid_argument("an entry of B or D exceeds n_deg");
      }
    }
  }
}

int UncertainFamily::leading_power() const { return n_deg + std::max({0, max_degree(a), max_degree(c)}); }

bool is_member(const UncertainFamily& fam, const PolynomialMatrix& bc, const PolynomialMatrix& dc) {
  const std::size_t n = fam.order();
  if (bc.order() != n || dc.order() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!contains(fam.b(i, j), bc(i, j)) || !contains(fam.d(i, j), dc(i, j))) return false;
    }
  }
  return true;
}

Polynomial assemble_unchecked(const UncertainFamily& fam, const PolynomialMatrix& bc,
                              const PolynomialMatrix& dc) {
  return det_cofactor(mat_add(mat_mul(bc, fam.a), mat_mul(dc, fam.c)));
}

Polynomial assemble(const UncertainFamily& fam, const PolynomialMatrix& bc, const PolynomialMatrix& dc) {
  if (!is_member(fam, bc, dc)) throw std::invalid_argument("matrices are not members of the family");
  return assemble_unchecked(fam, bc, dc);
}

ScalarMatrix member_leading_matrix(const UncertainFamily& fam, const PolynomialMatrix& bc,
                                   const PolynomialMatrix& dc) {
  return leading_matrix(mat_add(mat_mul(bc, fam.a), mat_mul(dc, fam.c)), fam.leading_power());
}

std::vector<CoefficientRef> uncertain_coefficients(const UncertainFamily& fam) {
  std::vector<CoefficientRef> out;
  for (MatrixTag tag : {MatrixTag::kB, MatrixTag::kD}) {
    const auto& m = fam.entries(tag);
    for (std::size_t i = 0; i < m.order(); ++i) {
      for (std::size_t j = 0; j < m.order(); ++j) {
        const auto& bounds = m(i, j).bounds();
        for (std::size_t k = 0; k < bounds.size(); ++k) {
          if (!bounds[k].is_point()) out.push_back({tag, i, j, static_cast<int>(k), bounds[k]});
        }
      }
    }
  }
  return out;
}

AssumptionAReport check_assumption_a(const UncertainFamily& fam) {
  fam.validate();
  AssumptionAReport report;
  for (const auto& ref : uncertain_coefficients(fam)) {
    if (ref.power == fam.n_deg) report.parameters.push_back(ref);
  }
  if (report.parameters.size() > kMaxLeadingParameters) {
    throw std::invalid_argument("too many uncertain leading coefficients for vertex enumeration");
  }

  PolynomialMatrix bc = lower_matrix(fam.b);
  PolynomialMatrix dc = lower_matrix(fam.d);
  const std::size_t m = report.parameters.size();
  const std::size_t vertices = std::size_t{1} << m;
  report.vertex_determinants.reserve(vertices);
  double first_sign = 0.0;
  report.holds = true;
  for (std::size_t v = 0; v < vertices; ++v) {
    std::vector<double> setting(m);
    for (std::size_t p = 0; p < m; ++p) {
      const auto& ref = report.parameters[p];
      const bool upper = (v >> (m - 1 - p)) & 1U;
      setting[p] = upper ? ref.bounds.upper : ref.bounds.lower;
      auto& target = ref.tag == MatrixTag::kB ? bc(ref.row, ref.col) : dc(ref.row, ref.col);
      target = with_coefficient(target, ref.power, setting[p]);
    }
    const ScalarMatrix lead = member_leading_matrix(fam, bc, dc);
    const double det = det_scalar(lead);
    report.vertex_determinants.push_back(det);

    const bool zero = std::abs(det) <= kLeadingDetRelTol * hadamard_bound(lead);
    const double sign = det < 0.0 ? -1.0 : 1.0;
    if (v == 0 && !zero) first_sign = sign;
    if (report.holds && (zero || sign != first_sign)) {
      report.holds = false;
      report.witness = setting;
      report.witness_determinant = det;
    }
  }
  return report;
}

void ScaledFamily::validate() const {
  base.validate();
  const std::size_t n = base.order();
  if (b_scale.order() != n || d_scale.order() != n) throw std::invalid_argument("scale record has the wrong shape");
  for (const auto* m : {&b_scale, &d_scale}) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto& e = (*m)(i, j);
        if (!e) continue;
        if (static_cast<int>(e->size()) > base.n_deg + 1) throw std::invalid_argument("scale entry exceeds n_deg");
        for (const auto& cs : *e) {
          if (!(cs.spread >= 0.0)) throw std::invalid_argument("scale spread must be non-negative");
        }
      }
    }
  }
}

UncertainFamily ScaledFamily::at(double epsilon) const {
  UncertainFamily fam = base;
  for (std::size_t i = 0; i < base.order(); ++i) {
    for (std::size_t j = 0; j < base.order(); ++j) {
      if (b_scale(i, j)) fam.b(i, j) = scaled_entry(*b_scale(i, j), epsilon);
      if (d_scale(i, j)) fam.d(i, j) = scaled_entry(*d_scale(i, j), epsilon);
    }
  }
  return fam;
}

}  // namespace edgeguard
