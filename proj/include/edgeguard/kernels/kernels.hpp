#pragma once

// Batched numeric kernels over structure-of-arrays buffers. Every ISA
// variant performs the same arithmetic sequence as the scalar reference, so
// results are bit-identical across variants (the build disables FMA
// contraction).
//
// Layout: element k of lane i lives at buf[k * stride + i]. stride must be a
// multiple of kLaneAlign and at least count rounded up to kLaneAlign; lanes
// in the padding are computed but never reported.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace edgeguard::kernels {

inline constexpr std::size_t kLaneAlign = 8;
/// Largest polynomial degree accepted by routh_batch.
inline constexpr std::size_t kMaxDegree = 126;

enum class Isa { kScalar, kAvx2, kAvx512 };

std::string_view isa_name(Isa isa);

using CombineFn = void (*)(const double* basis, std::size_t terms, std::size_t ncoeff,
                           const double* weights, std::size_t count, std::size_t stride,
                           double* out);
using RouthFn = void (*)(const double* coeffs, std::size_t ncoeff, std::size_t count,
                         std::size_t stride, double rel_tol, std::uint8_t* status);

struct KernelTable {
  Isa isa;
  std::size_t width;
  /// out[c][i] = sum over t of weights[t][i] * basis[t * ncoeff + c], t ascending.
  CombineFn combine;
  /// status[i] = RouthStatus of the polynomial with ascending coefficients
  /// coeffs[0..ncoeff)[i]; the last row is treated as the leading coefficient.
  RouthFn routh;
};

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);
std::vector<Isa> available_isas();

/// Throws std::runtime_error if the variant is unavailable.
const KernelTable& kernels_for(Isa isa);

/// The widest available variant, unless the EDGEGUARD_ISA environment
/// variable (scalar | avx2 | avx512) requests another available one.
const KernelTable& active_kernels();

std::size_t padded_stride(std::size_t count);

}  // namespace edgeguard::kernels
