#include "edgeguard/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgeguard {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
  Normalize();
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  Normalize();
}

Polynomial Polynomial::Monomial(double c, int power) {
  if (power < 0) throw std::invalid_argument("negative monomial power");
  std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::Normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::complex<double> Polynomial::evaluate(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::evaluate(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return Polynomial(std::move(out));
}

Polynomial sub(const Polynomial& p, const Polynomial& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  return Polynomial(std::move(out));
}

Polynomial mul(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Polynomial(std::move(out));
}

Polynomial scale(const Polynomial& p, double factor) {
  std::vector<double> out = p.coeffs();
  for (double& c : out) c *= factor;
  return Polynomial(std::move(out));
}

DivisionResult divide(const Polynomial& p, const Polynomial& divisor) {
  if (divisor.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  std::vector<double> rem = p.coeffs();
  const auto& d = divisor.coeffs();
  const int dd = divisor.degree();
  if (p.degree() < dd) return {Polynomial{}, p};
  std::vector<double> quot(static_cast<std::size_t>(p.degree() - dd) + 1, 0.0);
  for (int k = p.degree() - dd; k >= 0; --k) {
    const double c = rem[static_cast<std::size_t>(k + dd)] / d.back();
    quot[static_cast<std::size_t>(k)] = c;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= c * d[static_cast<std::size_t>(j)];
    rem[static_cast<std::size_t>(k + dd)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::complex<double> eval_imag(const Polynomial& p, double omega) {
  // s^k at s = jω is ω^k·j^k; j^k cycles 1, j, -1, -j.
  double re = 0.0;
  double im = 0.0;
  double wk = 1.0;
  const auto& c = p.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double term = c[k] * wk;
    switch (k % 4) {
      case 0: re += term; break;
      case 1: im += term; break;
      case 2: re -= term; break;
      default: im -= term; break;
    }
    wk *= omega;
  }
  return {re, im};
}

Polynomial taylor_shift(const Polynomial& p, double shift) {
  const Polynomial lin{shift, 1.0};
  Polynomial acc;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * lin + Polynomial{*it};
  return acc;
}

bool approx_equal(const Polynomial& p, const Polynomial& q, double rel_tol) {
  const double scale_ref = std::max(p.max_abs_coeff(), q.max_abs_coeff());
  const int n = std::max(p.degree(), q.degree());
  for (int k = 0; k <= n; ++k) {
    if (std::abs(p.coeff(k) - q.coeff(k)) > rel_tol * scale_ref) return false;
  }
  return true;
}

RouthStatus routh_classify(std::span<const double> coeffs, double rel_tol) {
  if (coeffs.empty()) return RouthStatus::kSingular;
  const int n = static_cast<int>(coeffs.size()) - 1;

  // Two rolling rows; row r holds (n - r) / 2 + 1 entries.
  std::vector<double> prev(static_cast<std::size_t>(n / 2 + 2), 0.0);
  std::vector<double> cur(static_cast<std::size_t>(n / 2 + 2), 0.0);
  for (int j = 0; 2 * j <= n; ++j) prev[static_cast<std::size_t>(j)] = coeffs[static_cast<std::size_t>(n - 2 * j)];
  for (int j = 0; 2 * j + 1 <= n; ++j) cur[static_cast<std::size_t>(j)] = coeffs[static_cast<std::size_t>(n - 1 - 2 * j)];

  auto row_max = [](const std::vector<double>& row, int len) {
    double m = 0.0;
    for (int j = 0; j < len; ++j) {
      const double a = std::abs(row[static_cast<std::size_t>(j)]);
      m = a > m ? a : m;
    }
    return m;
  };

  const double head = prev[0];
  if (std::abs(head) <= rel_tol * row_max(prev, n / 2 + 1)) return RouthStatus::kSingular;
  const double sign = head < 0.0 ? -1.0 : 1.0;

  for (int r = 1; r <= n; ++r) {
    const int len = (n - r) / 2 + 1;
    if (r >= 2) {
      // cur currently holds row r-1, prev holds row r-2.
      const double q = prev[0] / cur[0];
      std::vector<double> next(prev.size(), 0.0);
      for (int j = 0; j < len; ++j) {
        next[static_cast<std::size_t>(j)] =
            prev[static_cast<std::size_t>(j + 1)] - q * cur[static_cast<std::size_t>(j + 1)];
      }
      prev.swap(cur);
      cur.swap(next);
    }
    const double pivot = cur[0];
    if (std::abs(pivot) <= rel_tol * row_max(cur, len)) return RouthStatus::kSingular;
    if (pivot * sign < 0.0) return RouthStatus::kUnstable;
  }
  return RouthStatus::kStable;
}

bool is_hurwitz(const Polynomial& p, double margin_tol) {
  if (p.is_zero()) throw std::domain_error("undefined stability");
  return routh_classify(p.coeffs(), margin_tol) == RouthStatus::kStable;
}

}  // namespace edgeguard
