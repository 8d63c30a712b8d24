#include "edgeguard/poly_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace edgeguard {
namespace {

constexpr double kBareissRemainderTol = 1e-8;

void check_same_order(const PolynomialMatrix& x, const PolynomialMatrix& y) {
  if (x.order() != y.order()) throw std::invalid_argument("matrix order mismatch");
}

PolynomialMatrix minor_of(const PolynomialMatrix& x, std::size_t skip_row, std::size_t skip_col) {
  const std::size_t n = x.order();
  PolynomialMatrix m(n - 1);
  for (std::size_t i = 0, mi = 0; i < n; ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, mj = 0; j < n; ++j) {
      if (j == skip_col) continue;
      m(mi, mj++) = x(i, j);
    }
    ++mi;
  }
  return m;
}

bool rows_outside_equal(const PolynomialMatrix& x, const PolynomialMatrix& y, std::size_t row) {
  if (x.order() != y.order()) return false;
  for (std::size_t i = 0; i < x.order(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0; j < x.order(); ++j) {
      if (!(x(i, j) == y(i, j))) return false;
    }
  }
  return true;
}

}  // namespace

PolynomialMatrix identity_polynomial_matrix(std::size_t n) {
  PolynomialMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial{1.0};
  return m;
}

PolynomialMatrix mat_mul(const PolynomialMatrix& x, const PolynomialMatrix& y) {
  check_same_order(x, y);
  const std::size_t n = x.order();
  PolynomialMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      Polynomial acc;
      for (std::size_t j = 0; j < n; ++j) acc = acc + x(i, j) * y(j, k);
      out(i, k) = std::move(acc);
    }
  }
  return out;
}

PolynomialMatrix mat_add(const PolynomialMatrix& x, const PolynomialMatrix& y) {
  check_same_order(x, y);
  PolynomialMatrix out(x.order());
  for (std::size_t i = 0; i < x.order(); ++i) {
    for (std::size_t j = 0; j < x.order(); ++j) out(i, j) = x(i, j) + y(i, j);
  }
  return out;
}

int max_degree(const PolynomialMatrix& x) {
  int d = -1;
  for (std::size_t i = 0; i < x.order(); ++i) {
    for (std::size_t j = 0; j < x.order(); ++j) d = std::max(d, x(i, j).degree());
  }
  return d;
}

Polynomial det_cofactor(const PolynomialMatrix& x) {
  const std::size_t n = x.order();
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  if (n == 1) return x(0, 0);
  if (n == 2) return x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
  Polynomial acc;
  for (std::size_t j = 0; j < n; ++j) {
    if (x(0, j).is_zero()) continue;
    const Polynomial term = x(0, j) * det_cofactor(minor_of(x, 0, j));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

BareissResult det_bareiss(const PolynomialMatrix& x) {
  const std::size_t n = x.order();
  if (n == 0) throw std::invalid_argument("determinant of an empty matrix");
  PolynomialMatrix m = x;
  Polynomial prev{1.0};
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m(r, k).is_zero()) ++r;
      if (r == n) return {Polynomial{}, false};
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const Polynomial num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto [quot, rem] = divide(num, prev);
        if (rem.max_abs_coeff() > kBareissRemainderTol * num.max_abs_coeff()) {
          return {det_cofactor(x), true};
        }
        m(i, j) = std::move(quot);
      }
      m(i, k) = Polynomial{};
    }
    prev = m(k, k);
  }
  Polynomial det = m(n - 1, n - 1);
  return {negate ? scale(det, -1.0) : det, false};
}

double det_scalar(const ScalarMatrix& m) {
  // Partial-pivoting LU; orders here are small.
  const std::size_t n = m.order();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  }
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    }
    if (a[p * n + k] == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      det = -det;
    }
    det *= a[k * n + k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

ScalarMatrix leading_matrix(const PolynomialMatrix& x, int n_deg) {
  if (max_degree(x) > n_deg) throw std::invalid_argument("leading_matrix: an entry exceeds the requested degree");
  ScalarMatrix out(x.order(), 0.0);
  for (std::size_t i = 0; i < x.order(); ++i) {
    for (std::size_t j = 0; j < x.order(); ++j) out(i, j) = x(i, j).coeff(n_deg);
  }
  return out;
}

RowAffineParts row_affine_decompose(const RowAssembler& assemble, std::size_t row, std::uint64_t seed,
                                    int probes) {
  const Polynomial zero;
  const Polynomial one{1.0};
  const PolynomialMatrix base = assemble(zero, zero);
  const PolynomialMatrix with_b = assemble(one, zero);
  const PolynomialMatrix with_d = assemble(zero, one);
  if (row >= base.order() || !rows_outside_equal(base, with_b, row) || !rows_outside_equal(base, with_d, row)) {
    throw std::domain_error("not row-affine");
  }

  RowAffineParts parts;
  parts.delta_rest = det_cofactor(base);
  parts.delta_b = det_cofactor(with_b) - parts.delta_rest;
  parts.delta_d = det_cofactor(with_d) - parts.delta_rest;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> degree(0, 3);
  auto random_poly = [&] {
    std::vector<double> c(static_cast<std::size_t>(degree(rng)) + 1);
    for (double& v : c) v = coeff(rng);
    return Polynomial(std::move(c));
  };
  for (int t = 0; t < probes; ++t) {
    const Polynomial b = random_poly();
    const Polynomial d = random_poly();
    const Polynomial direct = det_cofactor(assemble(b, d));
    const Polynomial affine = b * parts.delta_b + d * parts.delta_d + parts.delta_rest;
    if (!approx_equal(direct, affine, 1e-8)) throw std::domain_error("not row-affine");
  }
  return parts;
}

}  // namespace edgeguard
