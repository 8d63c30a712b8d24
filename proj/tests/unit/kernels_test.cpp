#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "edgeguard/kernels/kernels.hpp"
#include "edgeguard/poly.hpp"

using namespace edgeguard;
using namespace edgeguard::kernels;

namespace {

struct Batch {
  std::size_t ncoeff, count, stride;
  std::vector<double> coeffs;
};

// Random lanes mixing stable, unstable, and exactly singular polynomials.
Batch random_batch(std::mt19937_64& rng, std::size_t ncoeff, std::size_t count) {
  Batch b{ncoeff, count, padded_stride(count), {}};
  b.coeffs.assign(ncoeff * b.stride, 0.0);
  std::uniform_real_distribution<double> u(-1, 4);
  std::uniform_int_distribution<int> kind(0, 3);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < ncoeff; ++k) b.coeffs[k * b.stride + i] = u(rng);
    switch (kind(rng)) {
      case 0:
        for (std::size_t k = 0; k < ncoeff; ++k) b.coeffs[k * b.stride + i] = std::abs(b.coeffs[k * b.stride + i]) + 0.5;
        break;
      case 1:
        if (ncoeff > 2) b.coeffs[1 * b.stride + i] = 0.0;
        break;
      case 2:
        // (s^2 + 1)·(s + 1) padded with zeros shifts into lane ordering.
        if (ncoeff >= 4) {
          for (std::size_t k = 0; k < ncoeff; ++k) b.coeffs[k * b.stride + i] = 0.0;
          const double c[] = {1, 1, 1, 1};
          for (std::size_t k = 0; k < 4; ++k) b.coeffs[(ncoeff - 4 + k) * b.stride + i] = c[k];
        }
        break;
      default:
        break;
    }
  }
  return b;
}

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
  EXPECT_TRUE(isa_available(Isa::kScalar));
  EXPECT_FALSE(available_isas().empty());
  EXPECT_EQ(padded_stride(1) % kLaneAlign, 0u);
  EXPECT_GE(padded_stride(9), 9u);
}

TEST(Kernels, RouthMatchesScalarReferencePerLane) {
  std::mt19937_64 rng(71);
  for (Isa isa : available_isas()) {
    const auto& kt = kernels_for(isa);
    for (std::size_t ncoeff : {2u, 3u, 5u, 7u, 10u, 13u}) {
      for (std::size_t count : {1u, 7u, 8u, 33u, 512u}) {
        const auto b = random_batch(rng, ncoeff, count);
        std::vector<std::uint8_t> status(b.stride, 255);
        kt.routh(b.coeffs.data(), ncoeff, count, b.stride, kDefaultMarginTol, status.data());
        for (std::size_t i = 0; i < count; ++i) {
          std::vector<double> c(ncoeff);
          for (std::size_t k = 0; k < ncoeff; ++k) c[k] = b.coeffs[k * b.stride + i];
          ASSERT_EQ(status[i], static_cast<std::uint8_t>(routh_classify(c))) << isa_name(isa) << " lane " << i;
        }
      }
    }
  }
}

TEST(Kernels, CombineBitIdenticalAcrossIsas) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> u(-3, 3);
  for (std::size_t terms : {1u, 2u, 4u, 16u}) {
    const std::size_t ncoeff = 7, count = 100, stride = padded_stride(count);
    std::vector<double> basis(terms * ncoeff), weights(terms * stride);
    for (auto& x : basis) x = u(rng);
    for (auto& x : weights) x = u(rng);
    std::vector<double> reference(ncoeff * stride);
    kernels_for(Isa::kScalar).combine(basis.data(), terms, ncoeff, weights.data(), count, stride, reference.data());
    for (std::size_t c = 0; c < ncoeff; ++c) {
      for (std::size_t i = 0; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t t = 0; t < terms; ++t) acc += weights[t * stride + i] * basis[t * ncoeff + c];
        EXPECT_NEAR(reference[c * stride + i], acc, 1e-12 * (1 + std::abs(acc)));
      }
    }
    for (Isa isa : available_isas()) {
      std::vector<double> out(ncoeff * stride);
      kernels_for(isa).combine(basis.data(), terms, ncoeff, weights.data(), count, stride, out.data());
      for (std::size_t c = 0; c < ncoeff; ++c) {
        EXPECT_EQ(std::memcmp(&out[c * stride], &reference[c * stride], count * sizeof(double)), 0)
            << isa_name(isa) << " terms " << terms;
      }
    }
  }
}

TEST(Kernels, RouthStatusesIdenticalAcrossIsas) {
  std::mt19937_64 rng(73);
  const auto b = random_batch(rng, 9, 2000);
  std::vector<std::uint8_t> reference(b.stride);
  kernels_for(Isa::kScalar).routh(b.coeffs.data(), b.ncoeff, b.count, b.stride, 1e-9, reference.data());
  for (Isa isa : available_isas()) {
    std::vector<std::uint8_t> status(b.stride);
    kernels_for(isa).routh(b.coeffs.data(), b.ncoeff, b.count, b.stride, 1e-9, status.data());
    EXPECT_EQ(std::memcmp(status.data(), reference.data(), b.count), 0) << isa_name(isa);
  }
}

TEST(Kernels, UnavailableIsaThrows) {
  for (Isa isa : {Isa::kAvx2, Isa::kAvx512}) {
    if (!isa_available(isa)) {
      EXPECT_THROW(kernels_for(isa), std::runtime_error);
    }
  }
}
