#include "edgeguard/manipulator.hpp"

#include <stdexcept>

namespace edgeguard {
namespace {

// Nominal gains, row-major.
constexpr double kDerivative[2][2] = {{6.07, 2.22}, {2.22, 1.62}};
constexpr double kProportional[2][2] = {{6.12, 2.24}, {2.24, 1.64}};
constexpr double kIntegral[2][2] = {{5.11, 1.87}, {1.87, 1.37}};

IntervalPolynomial cubic_entry(Bounds lead) { return IntervalPolynomial({{0, 0}, {0, 0}, {0, 0}, lead}); }

}  // namespace

ScaledFamily manipulator_template() {
  ScaledFamily t;
  UncertainFamily& f = t.base;
  f.n_deg = 3;
  f.a = PolynomialMatrix::FromRows({{Polynomial{1.0}, Polynomial{}}, {Polynomial{2.0}, Polynomial{1.0}}});
  f.c = identity_polynomial_matrix(2);
  f.b = IntervalPolynomialMatrix::FromRows({{cubic_entry({1, 1}), cubic_entry({1, 2})},
                                            {cubic_entry({-1, 0}), cubic_entry({1, 1})}});
  f.d = IntervalPolynomialMatrix(2);
  t.b_scale = SquareMatrix<EntryScale>(2);
  t.d_scale = SquareMatrix<EntryScale>(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double kr = kIntegral[i][j];
      const double kp = kProportional[i][j];
      const double kd = kDerivative[i][j];
      t.d_scale(i, j) = std::vector<CoefficientScale>{{kr, kr}, {kp, kp}, {kd, kd}};
      f.d(i, j) = IntervalPolynomial({{kr, kr}, {kp, kp}, {kd, kd}});
    }
  }
  return t;
}

UncertainFamily manipulator_family(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  return manipulator_template().at(epsilon);
}

}  // namespace edgeguard
