#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "edgeguard/poly.hpp"

namespace edgeguard {

/// Dense square matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), entries_(n * n) {}
  SquareMatrix(std::size_t n, const T& fill) : n_(n), entries_(n * n, fill) {}

  /// Builds from nested rows; throws std::invalid_argument unless square.
  static SquareMatrix FromRows(const std::vector<std::vector<T>>& rows);

  std::size_t order() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> entries_;
};

using PolynomialMatrix = SquareMatrix<Polynomial>;
using ScalarMatrix = SquareMatrix<double>;

PolynomialMatrix identity_polynomial_matrix(std::size_t n);

/// Throws std::invalid_argument on order mismatch.
PolynomialMatrix mat_mul(const PolynomialMatrix& x, const PolynomialMatrix& y);
PolynomialMatrix mat_add(const PolynomialMatrix& x, const PolynomialMatrix& y);

/// Largest entry degree, -1 when every entry is zero.
int max_degree(const PolynomialMatrix& x);

/// Laplace expansion along the first row.
Polynomial det_cofactor(const PolynomialMatrix& x);

struct BareissResult {
  Polynomial det;
  /// Set when an exact-division step left a remainder above tolerance and
  /// the result was recomputed by cofactor expansion.
  bool fell_back_to_cofactor = false;
};

/// Fraction-free (Bareiss) elimination over the polynomial ring.
BareissResult det_bareiss(const PolynomialMatrix& x);

double det_scalar(const ScalarMatrix& m);

/// Coefficients of s^n_deg. Throws std::invalid_argument if some entry has
/// a higher degree.
ScalarMatrix leading_matrix(const PolynomialMatrix& x, int n_deg);

struct RowAffineParts {
  Polynomial delta_b;
  Polynomial delta_d;
  Polynomial delta_rest;
};

/// Builds N(s) from the polynomials placed at the two designated entries.
using RowAssembler = std::function<PolynomialMatrix(const Polynomial& b, const Polynomial& d)>;

/// Splits det N = b·δ1 + d·δ2 + δ3 by evaluating at (b, d) ∈ {(0,0), (1,0),
/// (0,1)}. Both substitutions must only change row `row`, and the identity
/// is verified at `probes` random (b, d). Throws std::domain_error("not
/// row-affine") otherwise.
RowAffineParts row_affine_decompose(const RowAssembler& assemble, std::size_t row,
                                    std::uint64_t seed = 0x5eed, int probes = 5);

// -- template definitions ---------------------------------------------------

template <class T>
SquareMatrix<T> SquareMatrix<T>::FromRows(const std::vector<std::vector<T>>& rows) {
  SquareMatrix<T> m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace edgeguard
