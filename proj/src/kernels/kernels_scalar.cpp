#include "kernels_impl.hpp"
#include "variants.hpp"

namespace edgeguard::kernels {
namespace {

struct ScalarLane {
  using reg = double;
  using mask = bool;
  static constexpr std::size_t width = 1;

  static reg load(const double* p) { return *p; }
  static void store(double* p, reg v) { *p = v; }
  static reg set1(double v) { return v; }
  static reg add(reg a, reg b) { return a + b; }
  static reg sub(reg a, reg b) { return a - b; }
  static reg mul(reg a, reg b) { return a * b; }
  static reg div(reg a, reg b) { return a / b; }
  static reg abs(reg a) { return __builtin_fabs(a); }
  static reg max(reg a, reg b) { return a > b ? a : b; }
  static mask le(reg a, reg b) { return a <= b; }
  static mask lt(reg a, reg b) { return a < b; }
  static mask mask_false() { return false; }
  static mask mask_or(mask a, mask b) { return a || b; }
  static mask mask_andnot(mask a, mask b) { return !a && b; }
  static reg select(mask m, reg t, reg f) { return m ? t : f; }
  static bool all(mask m) { return m; }
};

void combine_scalar(const double* basis, std::size_t terms, std::size_t ncoeff, const double* weights,
                    std::size_t count, std::size_t stride, double* out) {
  impl::combine<ScalarLane>(basis, terms, ncoeff, weights, count, stride, out);
}

void routh_scalar(const double* coeffs, std::size_t ncoeff, std::size_t count, std::size_t stride,
                  double rel_tol, std::uint8_t* status) {
  impl::routh<ScalarLane>(coeffs, ncoeff, count, stride, rel_tol, status);
}

}  // namespace

const KernelTable kScalarTable{Isa::kScalar, 1, &combine_scalar, &routh_scalar};

}  // namespace edgeguard::kernels
