#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "edgeguard/poly.hpp"

namespace edgeguard {
namespace {

constexpr int kNewtonSteps = 8;
constexpr double kResidualTol = 1e-8;

// |p(z)| relative to the sum of the magnitudes of its terms at z.
double relative_residual(const Polynomial& p, std::complex<double> z) {
  double scale_sum = 0.0;
  double zk = 1.0;
  for (double c : p.coeffs()) {
    scale_sum += std::abs(c) * zk;
    zk *= std::abs(z);
  }
  return scale_sum > 0.0 ? std::abs(p.evaluate(z)) / scale_sum : 0.0;
}

}  // namespace

std::vector<std::complex<double>> roots_oracle(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("roots_oracle requires degree >= 1");

  const auto& c = p.coeffs();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("roots_oracle: eigenvalue iteration did not converge");

  std::vector<double> deriv_coeffs;
  for (int k = 1; k <= n; ++k) deriv_coeffs.push_back(k * c[static_cast<std::size_t>(k)]);
  const Polynomial deriv(std::move(deriv_coeffs));

  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = solver.eigenvalues()[i];
    double best = relative_residual(p, z);
    for (int step = 0; step < kNewtonSteps && best > 0.0; ++step) {
      const auto d = deriv.evaluate(z);
      if (std::abs(d) == 0.0) break;
      const auto candidate = z - p.evaluate(z) / d;
      const double r = relative_residual(p, candidate);
      if (!(r < best)) break;
      z = candidate;
      best = r;
    }
    if (!(best <= kResidualTol)) {
      throw std::runtime_error("roots_oracle: residual " + std::to_string(best) + " exceeds tolerance");
    }
    roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

double spectral_abscissa(const Polynomial& p) {
  if (p.degree() < 1) return -std::numeric_limits<double>::infinity();
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : roots_oracle(p)) m = std::max(m, r.real());
  return m;
}

}  // namespace edgeguard
