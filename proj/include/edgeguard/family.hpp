#pragma once

#include <optional>
#include <string>
#include <vector>

#include "edgeguard/interval_poly.hpp"
#include "edgeguard/poly_matrix.hpp"

namespace edgeguard {

using IntervalPolynomialMatrix = SquareMatrix<IntervalPolynomial>;

enum class MatrixTag { kB, kD };

inline char tag_letter(MatrixTag t) { return t == MatrixTag::kB ? 'B' : 'D'; }

/// The uncertain closed loop M(s) = B(s)A(s) + D(s)C(s): A and C fixed, B
/// and D entrywise interval polynomials of degree at most n_deg.
struct UncertainFamily {
  PolynomialMatrix a;
  PolynomialMatrix c;
  IntervalPolynomialMatrix b;
  IntervalPolynomialMatrix d;
  int n_deg = 0;

  std::size_t order() const { return a.order(); }

  /// Throws std::invalid_argument on mismatched orders or an entry of B or
  /// D above n_deg.
  void validate() const;

  /// Power of the leading matrix coefficient of M(s): n_deg plus the
  /// largest entry degree of A and C.
  int leading_power() const;

  /// Degree of det M(s) for every member when Assumption A holds.
  int characteristic_degree() const { return static_cast<int>(order()) * leading_power(); }

  const IntervalPolynomialMatrix& entries(MatrixTag t) const { return t == MatrixTag::kB ? b : d; }
};

/// True iff every entry of bc and dc lies in the matching interval entry.
bool is_member(const UncertainFamily& fam, const PolynomialMatrix& bc, const PolynomialMatrix& dc);

/// det(Bc·A + Dc·C). Throws std::invalid_argument when (Bc, Dc) is not a
/// member of the family.
Polynomial assemble(const UncertainFamily& fam, const PolynomialMatrix& bc, const PolynomialMatrix& dc);

/// assemble() without the membership check.
Polynomial assemble_unchecked(const UncertainFamily& fam, const PolynomialMatrix& bc,
                              const PolynomialMatrix& dc);

/// Leading coefficient matrix of Bc·A + Dc·C at fam.leading_power().
ScalarMatrix member_leading_matrix(const UncertainFamily& fam, const PolynomialMatrix& bc,
                                   const PolynomialMatrix& dc);

/// One non-point coefficient of an entry of B or D.
struct CoefficientRef {
  MatrixTag tag;
  std::size_t row;
  std::size_t col;
  int power;
  Bounds bounds;
};

/// Non-point coefficients of B and D, B before D, row-major, ascending power.
std::vector<CoefficientRef> uncertain_coefficients(const UncertainFamily& fam);

struct AssumptionAReport {
  bool holds = false;
  /// Leading-power coefficients that vary over the family.
  std::vector<CoefficientRef> parameters;
  /// det of the leading matrix at every parameter vertex, mixed-radix order
  /// with the first parameter most significant (lower bound first).
  std::vector<double> vertex_determinants;
  /// First vertex whose determinant is zero or opposite in sign to the
  /// first one; values are the parameter settings.
  std::optional<std::vector<double>> witness;
  double witness_determinant = 0.0;
};

/// Exact check that det of the leading matrix is nonzero over the whole
/// family. That determinant is affine in each leading coefficient of B and
/// D (each sits in a single row), so its range over the box is spanned by
/// its vertex values.
AssumptionAReport check_assumption_a(const UncertainFamily& fam);

struct CoefficientScale {
  double center = 0.0;
  double spread = 0.0;
  friend bool operator==(const CoefficientScale&, const CoefficientScale&) = default;
};

/// Per-entry ε-scaling; an empty optional keeps the base entry fixed.
using EntryScale = std::optional<std::vector<CoefficientScale>>;

/// A family whose scaled entries have bounds center ± spread·ε.
struct ScaledFamily {
  UncertainFamily base;
  SquareMatrix<EntryScale> b_scale;
  SquareMatrix<EntryScale> d_scale;

  /// Throws std::invalid_argument for a negative spread or mismatched shape.
  void validate() const;
  UncertainFamily at(double epsilon) const;
};

}  // namespace edgeguard
