#include <immintrin.h>

#include "kernels_impl.hpp"
#include "variants.hpp"

namespace edgeguard::kernels {
namespace {

struct Avx512Lane {
  using reg = __m512d;
  using mask = __mmask8;
  static constexpr std::size_t width = 8;

  static reg load(const double* p) { return _mm512_loadu_pd(p); }
  static void store(double* p, reg v) { _mm512_storeu_pd(p, v); }
  static reg set1(double v) { return _mm512_set1_pd(v); }
  static reg add(reg a, reg b) { return _mm512_add_pd(a, b); }
  static reg sub(reg a, reg b) { return _mm512_sub_pd(a, b); }
  static reg mul(reg a, reg b) { return _mm512_mul_pd(a, b); }
  static reg div(reg a, reg b) { return _mm512_div_pd(a, b); }
  static reg abs(reg a) { return _mm512_abs_pd(a); }
  static reg max(reg a, reg b) { return _mm512_max_pd(a, b); }
  static mask le(reg a, reg b) { return _mm512_cmp_pd_mask(a, b, _CMP_LE_OQ); }
  static mask lt(reg a, reg b) { return _mm512_cmp_pd_mask(a, b, _CMP_LT_OQ); }
  static mask mask_false() { return 0; }
  static mask mask_or(mask a, mask b) { return static_cast<mask>(a | b); }
  static mask mask_andnot(mask a, mask b) { return static_cast<mask>(~a & b); }
  static reg select(mask m, reg t, reg f) { return _mm512_mask_blend_pd(m, f, t); }
  static bool all(mask m) { return m == 0xFF; }
};

void combine_avx512(const double* basis, std::size_t terms, std::size_t ncoeff, const double* weights,
                    std::size_t count, std::size_t stride, double* out) {
  impl::combine<Avx512Lane>(basis, terms, ncoeff, weights, count, stride, out);
}

void routh_avx512(const double* coeffs, std::size_t ncoeff, std::size_t count, std::size_t stride,
                  double rel_tol, std::uint8_t* status) {
  impl::routh<Avx512Lane>(coeffs, ncoeff, count, stride, rel_tol, status);
}

}  // namespace

const KernelTable kAvx512Table{Isa::kAvx512, 8, &combine_avx512, &routh_avx512};

}  // namespace edgeguard::kernels
