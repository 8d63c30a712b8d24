#include <immintrin.h>

#include "kernels_impl.hpp"
#include "variants.hpp"

namespace edgeguard::kernels {
namespace {

struct Avx2Lane {
  using reg = __m256d;
  using mask = __m256d;
  static constexpr std::size_t width = 4;

  static reg load(const double* p) { return _mm256_loadu_pd(p); }
  static void store(double* p, reg v) { _mm256_storeu_pd(p, v); }
  static reg set1(double v) { return _mm256_set1_pd(v); }
  static reg add(reg a, reg b) { return _mm256_add_pd(a, b); }
  static reg sub(reg a, reg b) { return _mm256_sub_pd(a, b); }
  static reg mul(reg a, reg b) { return _mm256_mul_pd(a, b); }
  static reg div(reg a, reg b) { return _mm256_div_pd(a, b); }
  static reg abs(reg a) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), a); }
  static reg max(reg a, reg b) { return _mm256_max_pd(a, b); }
  static mask le(reg a, reg b) { return _mm256_cmp_pd(a, b, _CMP_LE_OQ); }
  static mask lt(reg a, reg b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
  static mask mask_false() { return _mm256_setzero_pd(); }
  static mask mask_or(mask a, mask b) { return _mm256_or_pd(a, b); }
  static mask mask_andnot(mask a, mask b) { return _mm256_andnot_pd(a, b); }
  static reg select(mask m, reg t, reg f) { return _mm256_blendv_pd(f, t, m); }
  static bool all(mask m) { return _mm256_movemask_pd(m) == 0xF; }
};

void combine_avx2(const double* basis, std::size_t terms, std::size_t ncoeff, const double* weights,
                  std::size_t count, std::size_t stride, double* out) {
  impl::combine<Avx2Lane>(basis, terms, ncoeff, weights, count, stride, out);
}

void routh_avx2(const double* coeffs, std::size_t ncoeff, std::size_t count, std::size_t stride,
                double rel_tol, std::uint8_t* status) {
  impl::routh<Avx2Lane>(coeffs, ncoeff, count, stride, rel_tol, status);
}

}  // namespace

const KernelTable kAvx2Table{Isa::kAvx2, 4, &combine_avx2, &routh_avx2};

}  // namespace edgeguard::kernels
