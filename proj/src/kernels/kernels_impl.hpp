#pragma once

// Kernel bodies, instantiated once per ISA inside that variant's translation
// unit. Include this only from inside an anonymous namespace-safe context:
// nothing here may pull in out-of-line library code, because the AVX
// translation units are compiled with wider instruction sets.

#include <cstddef>
#include <cstdint>

namespace edgeguard::kernels::impl {

inline constexpr std::size_t kMaxRow = 64;

template <class V>
void combine(const double* basis, std::size_t terms, std::size_t ncoeff, const double* weights,
             std::size_t count, std::size_t stride, double* out) {
  for (std::size_t base = 0; base < count; base += V::width) {
    for (std::size_t c = 0; c < ncoeff; ++c) {
      auto acc = V::set1(0.0);
      for (std::size_t t = 0; t < terms; ++t) {
        acc = V::add(acc, V::mul(V::load(weights + t * stride + base), V::set1(basis[t * ncoeff + c])));
      }
      V::store(out + c * stride + base, acc);
    }
  }
}

template <class V>
typename V::reg row_max(const typename V::reg* row, std::size_t len) {
  auto m = V::set1(0.0);
  for (std::size_t j = 0; j < len; ++j) m = V::max(V::abs(row[j]), m);
  return m;
}

template <class V>
void routh(const double* coeffs, std::size_t ncoeff, std::size_t count, std::size_t stride,
           double rel_tol, std::uint8_t* status) {
  using reg = typename V::reg;
  using mask = typename V::mask;
  const std::size_t n = ncoeff - 1;
  const reg tol = V::set1(rel_tol);
  const reg zero = V::set1(0.0);

  reg buf_a[kMaxRow + 1];
  reg buf_b[kMaxRow + 1];
  reg buf_c[kMaxRow + 1];

  for (std::size_t base = 0; base < count; base += V::width) {
    reg* prev = buf_a;
    reg* cur = buf_b;
    reg* next = buf_c;
    const std::size_t width = n / 2 + 2;
    for (std::size_t j = 0; j < width; ++j) {
      prev[j] = zero;
      cur[j] = zero;
      next[j] = zero;
    }
    for (std::size_t j = 0; 2 * j <= n; ++j) prev[j] = V::load(coeffs + (n - 2 * j) * stride + base);
    for (std::size_t j = 0; 2 * j + 1 <= n; ++j) cur[j] = V::load(coeffs + (n - 1 - 2 * j) * stride + base);

    const reg head = prev[0];
    mask singular = V::le(V::abs(head), V::mul(tol, row_max<V>(prev, n / 2 + 1)));
    mask unstable = V::mask_false();
    mask decided = singular;
    const reg sign = V::select(V::lt(head, zero), V::set1(-1.0), V::set1(1.0));

    for (std::size_t r = 1; r <= n && !V::all(decided); ++r) {
      const std::size_t len = (n - r) / 2 + 1;
      if (r >= 2) {
        const reg q = V::div(prev[0], cur[0]);
        for (std::size_t j = 0; j < len; ++j) next[j] = V::sub(prev[j + 1], V::mul(q, cur[j + 1]));
        for (std::size_t j = len; j < width; ++j) next[j] = zero;
        reg* tmp = prev;
        prev = cur;
        cur = next;
        next = tmp;
      }
      const reg pivot = cur[0];
      const mask sing_now = V::le(V::abs(pivot), V::mul(tol, row_max<V>(cur, len)));
      const mask unst_now = V::mask_andnot(sing_now, V::lt(V::mul(pivot, sign), zero));
      singular = V::mask_or(singular, V::mask_andnot(decided, sing_now));
      unstable = V::mask_or(unstable, V::mask_andnot(decided, unst_now));
      decided = V::mask_or(decided, V::mask_or(sing_now, unst_now));
    }

    const reg code = V::select(unstable, V::set1(1.0), V::select(singular, V::set1(2.0), zero));
    alignas(64) double lanes[V::width];
    V::store(lanes, code);
    for (std::size_t i = 0; i < V::width && base + i < count; ++i) {
      status[base + i] = static_cast<std::uint8_t>(lanes[i]);
    }
  }
}

}  // namespace edgeguard::kernels::impl
