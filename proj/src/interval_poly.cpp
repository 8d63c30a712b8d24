#include "edgeguard/interval_poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace edgeguard {
namespace {

// Per power k mod 4, whether vertex r1..r4 takes the upper bound.
constexpr bool kTakesUpper[4][4] = {
    // r1     r2     r3     r4
    {false, false, true, true},   // k ≡ 0
    {false, true, false, true},   // k ≡ 1
    {true, true, false, false},   // k ≡ 2
    {true, false, true, false},   // k ≡ 3
};

bool same_unordered(const Edge& e, const Polynomial& a, const Polynomial& b) {
  return (e.endpoint_a == a && e.endpoint_b == b) || (e.endpoint_a == b && e.endpoint_b == a);
}

}  // namespace

IntervalPolynomial::IntervalPolynomial(std::vector<Bounds> bounds) : bounds_(std::move(bounds)) {
  for (std::size_t k = 0; k < bounds_.size(); ++k) {
    if (!(bounds_[k].lower <= bounds_[k].upper)) {
      throw std::invalid_argument("interval bound for s^" + std::to_string(k) + " has lower > upper");
    }
  }
  while (!bounds_.empty() && bounds_.back().lower == 0.0 && bounds_.back().upper == 0.0) bounds_.pop_back();
}

IntervalPolynomial IntervalPolynomial::Point(const Polynomial& p) {
  std::vector<Bounds> b;
  b.reserve(p.coeffs().size());
  for (double c : p.coeffs()) b.push_back({c, c});
  return IntervalPolynomial(std::move(b));
}

Bounds IntervalPolynomial::bound(int k) const {
  if (k < 0 || k >= static_cast<int>(bounds_.size())) return {};
  return bounds_[static_cast<std::size_t>(k)];
}

bool IntervalPolynomial::is_point() const {
  return std::all_of(bounds_.begin(), bounds_.end(), [](const Bounds& b) { return b.is_point(); });
}

Polynomial IntervalPolynomial::lower_polynomial() const {
  std::vector<double> c;
  for (const auto& b : bounds_) c.push_back(b.lower);
  return Polynomial(std::move(c));
}

Polynomial IntervalPolynomial::midpoint() const {
  std::vector<double> c;
  for (const auto& b : bounds_) c.push_back(0.5 * (b.lower + b.upper));
  return Polynomial(std::move(c));
}

Polynomial kharitonov_vertex(const IntervalPolynomial& ip, int which) {
  if (which < 0 || which > 3) throw std::out_of_range("Kharitonov vertex index must be 0..3");
  std::vector<double> c;
  c.reserve(ip.bounds().size());
  for (std::size_t k = 0; k < ip.bounds().size(); ++k) {
    const Bounds& b = ip.bounds()[k];
    c.push_back(kTakesUpper[k % 4][which] ? b.upper : b.lower);
  }
  return Polynomial(std::move(c));
}

std::vector<Polynomial> kharitonov_vertices(const IntervalPolynomial& ip) {
  std::vector<Polynomial> out;
  for (int v = 0; v < 4; ++v) {
    Polynomial p = kharitonov_vertex(ip, v);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  return out;
}

Polynomial Edge::at(double lambda) const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("edge parameter outside [0, 1]");
  const int n = std::max(endpoint_a.degree(), endpoint_b.degree());
  std::vector<double> c(static_cast<std::size_t>(n + 1), 0.0);
  for (int k = 0; k <= n; ++k) {
    const double a = endpoint_a.coeff(k);
    const double b = endpoint_b.coeff(k);
    const double v = lambda * a + (1.0 - lambda) * b;
    c[static_cast<std::size_t>(k)] = std::clamp(v, std::min(a, b), std::max(a, b));
  }
  return Polynomial(std::move(c));
}

std::vector<Edge> kharitonov_edges(const IntervalPolynomial& ip) {
  std::array<Polynomial, 4> r;
  for (int v = 0; v < 4; ++v) r[static_cast<std::size_t>(v)] = kharitonov_vertex(ip, v);
  std::vector<Edge> out;
  for (const auto& [i, j] : kEdgePairs) {
    const Polynomial& a = r[static_cast<std::size_t>(i - 1)];
    const Polynomial& b = r[static_cast<std::size_t>(j - 1)];
    if (a == b) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Edge& e) { return same_unordered(e, a, b); });
    if (!seen) out.push_back(Edge{a, b, {i, j}});
  }
  return out;
}

bool contains(const IntervalPolynomial& ip, const Polynomial& p) {
  if (p.degree() > ip.highest_power()) return false;
  for (int k = 0; k <= ip.highest_power(); ++k) {
    const Bounds b = ip.bound(k);
    const double c = p.coeff(k);
    if (c < b.lower || c > b.upper) return false;
  }
  return true;
}

bool kharitonov_stable(const IntervalPolynomial& ip, double margin_tol) {
  if (ip.highest_power() < 0) throw std::domain_error("undefined stability");
  const Bounds lead = ip.bounds().back();
  if (lead.lower <= 0.0 && lead.upper >= 0.0) throw std::domain_error("degree drop");
  for (const auto& v : kharitonov_vertices(ip)) {
    if (!is_hurwitz(v, margin_tol)) return false;
  }
  return true;
}

}  // namespace edgeguard
