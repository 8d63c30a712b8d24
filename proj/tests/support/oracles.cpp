#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace edgeguard::reference {

Polynomial det_leibniz(const PolynomialMatrix& x) {
  const std::size_t n = x.order();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    Polynomial term{inversions % 2 ? -1.0 : 1.0};
    for (std::size_t i = 0; i < n; ++i) term = mul(term, x(i, perm[i]));
    total = add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Polynomial assemble_leibniz(const UncertainFamily& fam, const PolynomialMatrix& bc, const PolynomialMatrix& dc) {
  const std::size_t n = fam.order();
  PolynomialMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial acc;
      for (std::size_t k = 0; k < n; ++k) acc = acc + bc(i, k) * fam.a(k, j) + dc(i, k) * fam.c(k, j);
      m(i, j) = acc;
    }
  }
  return det_leibniz(m);
}

std::vector<std::complex<double>> roots_durand_kerner(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("roots need degree >= 1");
  std::vector<std::complex<double>> monic(p.coeffs().size());
  for (std::size_t k = 0; k < monic.size(); ++k) monic[k] = p.coeffs()[k] / p.leading();
  auto eval = [&](std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = monic.size(); k-- > 0;) acc = acc * z + monic[k];
    return acc;
  };
  double radius = 0.0;
  for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(monic[static_cast<std::size_t>(k)]));
  radius += 1.0;
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  const std::complex<double> seed(0.4, 0.9);
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::pow(seed, k) * (radius / std::abs(std::pow(seed, k))) * 0.5;
  for (int iter = 0; iter < 5000; ++iter) {
    double change = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      std::complex<double> denom = 1.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) denom *= z[i] - z[j];
      }
      if (std::abs(denom) == 0.0) denom = 1e-14;
      const std::complex<double> step = eval(z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (change < 1e-15) break;
  }
  return z;
}

double abscissa_durand_kerner(const Polynomial& p) {
  if (p.degree() < 1) return -std::numeric_limits<double>::infinity();
  double a = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots_durand_kerner(p)) a = std::max(a, r.real());
  return a;
}

bool interval_grid_stable(const IntervalPolynomial& ip, int points, double band, bool* borderline) {
  const auto& b = ip.bounds();
  std::vector<int> idx(b.size(), 0);
  bool stable = true;
  if (borderline) *borderline = false;
  for (;;) {
    std::vector<double> c(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) {
      c[k] = idx[k] == points - 1 ? b[k].upper
                                  : b[k].lower + (b[k].upper - b[k].lower) * idx[k] / static_cast<double>(points - 1);
    }
    const double a = abscissa_durand_kerner(Polynomial(c));
    if (std::abs(a) <= band && borderline) *borderline = true;
    if (a >= 0.0) stable = false;
    std::size_t k = 0;
    while (k < idx.size() && (b[k].is_point() || idx[k] == points - 1)) {
      idx[k] = 0;
      ++k;
    }
    if (k == idx.size()) break;
    ++idx[k];
  }
  return stable;
}

}  // namespace edgeguard::reference
