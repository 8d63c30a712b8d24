#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace edgeguard {

/// Real univariate polynomial with ascending coefficients: coeffs()[k]
/// multiplies s^k. Values are always normalized, i.e. trailing zeros are
/// stripped and the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  /// Monomial c·s^power.
  static Polynomial Monomial(double c, int power);

  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Degree, or -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Coefficient of s^k; zero beyond the degree.
  double coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : 0.0;
  }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

  /// Largest absolute coefficient (0 for the zero polynomial).
  double max_abs_coeff() const;

  std::complex<double> evaluate(std::complex<double> s) const;
  double evaluate(double s) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void Normalize();

  std::vector<double> coeffs_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial sub(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial scale(const Polynomial& p, double factor);

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }
inline Polynomial operator*(double c, const Polynomial& p) { return scale(p, c); }

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Long division p = quotient·divisor + remainder. Throws on a zero divisor.
DivisionResult divide(const Polynomial& p, const Polynomial& divisor);

/// p(jω), accumulated separately over even and odd powers.
std::complex<double> eval_imag(const Polynomial& p, double omega);

/// Taylor shift: returns q with q(s) = p(s + shift).
Polynomial taylor_shift(const Polynomial& p, double shift);

/// Coefficient-wise closeness at `rel_tol` scaled by the larger max |coeff|.
bool approx_equal(const Polynomial& p, const Polynomial& q, double rel_tol = 1e-8);

inline constexpr double kDefaultMarginTol = 1e-9;

enum class RouthStatus : std::uint8_t {
  kStable = 0,
  /// A first-column sign change: at least one root with positive real part.
  kUnstable = 1,
  /// A first-column pivot within tolerance of zero (including a premature
  /// zero row). Roots on or numerically near the imaginary axis.
  kSingular = 2,
};

/// Routh array classification of the polynomial with ascending
/// coefficients `coeffs` (coeffs.back() is taken as the leading coefficient,
/// even if it is zero). A pivot is treated as zero when its magnitude is
/// at most rel_tol times the largest magnitude in its row.
///
/// This is the scalar reference for the batched kernels; the arithmetic
/// sequence is shared with them exactly.
RouthStatus routh_classify(std::span<const double> coeffs, double rel_tol = kDefaultMarginTol);

/// True iff every root of p lies in the open left half-plane. Singular
/// Routh arrays count as not stable. Nonzero constants are stable. Throws
/// std::domain_error("undefined stability") for the zero polynomial.
bool is_hurwitz(const Polynomial& p, double margin_tol = kDefaultMarginTol);

/// All complex roots of p (deg p ≥ 1) from the companion matrix eigenvalues
/// with Newton polishing. Intended as an independent check of is_hurwitz.
/// Throws std::runtime_error when a root fails the 1e-8 residual check.
std::vector<std::complex<double>> roots_oracle(const Polynomial& p);

/// Largest real part among the roots of p.
double spectral_abscissa(const Polynomial& p);

}  // namespace edgeguard
