#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "edgeguard/poly.hpp"
#include "oracles.hpp"
#include "random_family.hpp"

using namespace edgeguard;

namespace {

void expect_roots(const Polynomial& p, std::vector<std::complex<double>> want) {
  auto got = roots_oracle(p);
  ASSERT_EQ(got.size(), want.size());
  auto key = [](std::complex<double> z) { return std::make_pair(z.real(), z.imag()); };
  auto by_key = [&](auto a, auto b) { return key(a) < key(b); };
  std::sort(got.begin(), got.end(), by_key);
  std::sort(want.begin(), want.end(), by_key);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_LT(std::abs(got[i] - want[i]), 1e-5) << i;
}

}  // namespace

TEST(Poly, AddCancelsAndNormalizes) {
  EXPECT_EQ(add(Polynomial{1, 1}, Polynomial{1, -1}), Polynomial{2});
  EXPECT_EQ((Polynomial{1, 1} + Polynomial{-1, -1}).degree(), -1);
  const Polynomial p{3, 0, 2};
  EXPECT_EQ(p + Polynomial{}, p);
  EXPECT_EQ(Polynomial({0, 0, 1}) + Polynomial({0, 1}), Polynomial({0, 1, 1}));
}

TEST(Poly, TrailingZerosStripped) {
  EXPECT_EQ(Polynomial({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(Polynomial({0, 0}).is_zero());
}

TEST(Poly, Mul) {
  EXPECT_EQ(mul(Polynomial{1, 1}, Polynomial{1, 1}), Polynomial({1, 2, 1}));
  EXPECT_TRUE(mul(Polynomial{1, 2, 3}, Polynomial{}).is_zero());
  EXPECT_EQ(mul(Polynomial{0, 1}, Polynomial{0, 0, 1}), Polynomial::Monomial(1, 3));
}

TEST(Poly, MulCommutesAndAssociatesOnIntegers) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, 5);
  auto draw = [&] {
    std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = coef(rng);
    return Polynomial(std::move(c));
  };
  for (int t = 0; t < 200; ++t) {
    const Polynomial a = draw(), b = draw(), c = draw();
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Poly, Divide) {
  const auto r = divide(Polynomial{1, 3, 3, 1}, Polynomial{1, 1});
  EXPECT_EQ(r.quotient, Polynomial({1, 2, 1}));
  EXPECT_TRUE(r.remainder.is_zero());
  EXPECT_THROW(divide(Polynomial{1}, Polynomial{}), std::invalid_argument);
}

TEST(Poly, EvalImag) {
  EXPECT_LT(std::abs(eval_imag(Polynomial{1, 0, 1}, 1.0)), 1e-15);
  EXPECT_EQ(eval_imag(Polynomial{0, 1}, 2.0), std::complex<double>(0, 2));
  EXPECT_LT(std::abs(eval_imag(Polynomial{1, 1, 1}, 1.0) - std::complex<double>(0, 1)), 1e-15);
}

TEST(Poly, EvalImagIsLinearOverEvenOddSplit) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> w(-4, 4);
  for (int t = 0; t < 100; ++t) {
    const Polynomial p = reference::random_polynomial(rng, 7);
    std::vector<double> even(p.coeffs().size()), odd(p.coeffs().size());
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) (k % 2 ? odd : even)[k] = p.coeffs()[k];
    const double omega = w(rng);
    const auto whole = eval_imag(p, omega);
    const auto parts = eval_imag(Polynomial(even), omega) + eval_imag(Polynomial(odd), omega);
    EXPECT_LT(std::abs(whole - parts), 1e-9 * (1 + std::abs(whole)));
    // Against plain Horner at jω.
    EXPECT_LT(std::abs(whole - p.evaluate(std::complex<double>(0, omega))), 1e-9 * (1 + std::abs(whole)));
  }
}

TEST(Poly, TaylorShift) {
  // (s+1)^2 shifted by −1 is s^2.
  EXPECT_TRUE(approx_equal(taylor_shift(Polynomial{1, 2, 1}, -1.0), Polynomial{0, 0, 1}, 1e-12));
}

TEST(Poly, IsHurwitzExamples) {
  EXPECT_TRUE(is_hurwitz(Polynomial{1, 1, 1}));
  EXPECT_FALSE(is_hurwitz(Polynomial{1, -1, 1}));
  EXPECT_TRUE(is_hurwitz(Polynomial{1, 3, 2, 1}));
  EXPECT_TRUE(is_hurwitz(Polynomial{-4}));
  EXPECT_FALSE(is_hurwitz(Polynomial{1, 0, 1}));
  EXPECT_FALSE(is_hurwitz(Polynomial{0, 1, 1}));
  EXPECT_THROW(is_hurwitz(Polynomial{}), std::domain_error);
}

TEST(Poly, RouthStatus) {
  EXPECT_EQ(routh_classify(std::vector<double>{1, 1, 1}), RouthStatus::kStable);
  EXPECT_EQ(routh_classify(std::vector<double>{1, -1, 1}), RouthStatus::kUnstable);
  EXPECT_EQ(routh_classify(std::vector<double>{1, 0, 1}), RouthStatus::kSingular);
  // s^4 + s^3 + 2s^2 + s + 1 hits a premature zero row (roots ±j).
  EXPECT_EQ(routh_classify(std::vector<double>{1, 1, 2, 1, 1}), RouthStatus::kSingular);
}

TEST(Poly, RootsOracleExamples) {
  expect_roots(Polynomial{-1, 0, 1}, {{1, 0}, {-1, 0}});
  expect_roots(Polynomial{1, 3, 3, 1}, {{-1, 0}, {-1, 0}, {-1, 0}});
  expect_roots(Polynomial{1, 0, 1}, {{0, 1}, {0, -1}});
  EXPECT_THROW(roots_oracle(Polynomial{2}), std::invalid_argument);
}

TEST(Poly, RootsOracleMatchesDurandKerner) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const Polynomial p = reference::random_polynomial(rng, 1 + t % 8);
    EXPECT_NEAR(spectral_abscissa(p), reference::abscissa_durand_kerner(p), 1e-5) << t;
  }
}

TEST(Poly, IsHurwitzAgreesWithRootsOnRandomPolynomials) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> coef(-5, 5);
  std::uniform_int_distribution<int> deg(1, 8);
  int compared = 0;
  for (int t = 0; t < 500; ++t) {
    // Half the draws from random LHP roots so both verdicts are exercised.
    Polynomial p;
    if (t % 2) {
      p = reference::random_hurwitz(rng, deg(rng));
    } else {
      std::vector<double> c(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : c) x = coef(rng);
      p = Polynomial(std::move(c));
    }
    if (p.degree() < 1) continue;
    const double a = spectral_abscissa(p);
    if (std::abs(a) <= 1e-6) continue;
    ++compared;
    EXPECT_EQ(is_hurwitz(p), a < 0) << t;
  }
  EXPECT_GT(compared, 450);
}
