#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "edgeguard/poly.hpp"

namespace edgeguard {

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;

  bool is_point() const { return lower == upper; }
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Polynomial whose coefficient of s^k ranges independently over the closed
/// interval bounds()[k]. Powers past the stored bounds are the point [0, 0];
/// trailing [0, 0] bounds are stripped on construction.
class IntervalPolynomial {
 public:
  IntervalPolynomial() = default;
  /// Throws std::invalid_argument if some lower bound exceeds its upper bound.
  explicit IntervalPolynomial(std::vector<Bounds> bounds);
  /// The degenerate interval polynomial holding exactly p.
  static IntervalPolynomial Point(const Polynomial& p);

  const std::vector<Bounds>& bounds() const { return bounds_; }
  Bounds bound(int k) const;

  /// Highest power with a stored bound, -1 when identically zero.
  int highest_power() const { return static_cast<int>(bounds_.size()) - 1; }
  bool is_point() const;
  Polynomial lower_polynomial() const;
  Polynomial midpoint() const;

  friend bool operator==(const IntervalPolynomial&, const IntervalPolynomial&) = default;

 private:
  std::vector<Bounds> bounds_;
};

/// The four Kharitonov L/U patterns; index 0..3 holds r1..r4.
Polynomial kharitonov_vertex(const IntervalPolynomial& ip, int which);

/// Distinct Kharitonov vertices in r1, r2, r3, r4 order, first occurrence
/// kept. Equality is exact since the coefficients are copied from bounds.
std::vector<Polynomial> kharitonov_vertices(const IntervalPolynomial& ip);

/// Segment λ·endpoint_a + (1−λ)·endpoint_b between two Kharitonov vertices.
struct Edge {
  Polynomial endpoint_a;
  Polynomial endpoint_b;
  /// 1-based vertex indices, one of (1,2), (2,4), (4,3), (3,1).
  std::pair<int, int> pair_tag;

  /// Throws std::invalid_argument for λ outside [0, 1]. Each coefficient is
  /// clamped to the range spanned by the endpoints, so the result stays
  /// inside any interval containing both.
  Polynomial at(double lambda) const;
};

inline constexpr std::array<std::pair<int, int>, 4> kEdgePairs{{{1, 2}, {2, 4}, {4, 3}, {3, 1}}};

/// Kharitonov edges with distinct endpoints; edges with the same unordered
/// endpoint pair are emitted once under the first pair tag that produced them.
std::vector<Edge> kharitonov_edges(const IntervalPolynomial& ip);

/// True iff p has no power beyond ip and each coefficient lies in its bounds.
bool contains(const IntervalPolynomial& ip, const Polynomial& p);

/// Robust Hurwitz stability of the whole box by its four vertices. Throws
/// std::domain_error("degree drop") when the leading interval contains 0.
bool kharitonov_stable(const IntervalPolynomial& ip, double margin_tol = kDefaultMarginTol);

}  // namespace edgeguard
