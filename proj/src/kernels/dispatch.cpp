#include <cstdlib>
#include <stdexcept>
#include <string>

#include "variants.hpp"

namespace edgeguard::kernels {
namespace {

bool cpu_supports(Isa isa) {
#if defined(__x86_64__) || defined(__i386__)
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2: return __builtin_cpu_supports("avx2");
    case Isa::kAvx512: return __builtin_cpu_supports("avx512f");
  }
  return false;
#else
  return isa == Isa::kScalar;
#endif
}

const KernelTable* compiled_table(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return &kScalarTable;
#if defined(EDGEGUARD_BUILD_AVX2)
    case Isa::kAvx2: return &kAvx2Table;
#endif
#if defined(EDGEGUARD_BUILD_AVX512)
    case Isa::kAvx512: return &kAvx512Table;
#endif
    default: return nullptr;
  }
}

const KernelTable& select_active() {
  if (const char* env = std::getenv("EDGEGUARD_ISA"); env != nullptr && *env != '\0') {
    const std::string want(env);
    for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kAvx512}) {
      if (want == isa_name(isa)) return kernels_for(isa);
    }
    throw std::runtime_error("EDGEGUARD_ISA: unknown variant '" + want + "'");
  }
  const auto isas = available_isas();
  return kernels_for(isas.back());
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kAvx512: return "avx512";
  }
  return "unknown";
}

bool isa_available(Isa isa) { return compiled_table(isa) != nullptr && cpu_supports(isa); }

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kAvx512}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::runtime_error("kernel variant '" + std::string(isa_name(isa)) + "' is not available");
  }
  return *compiled_table(isa);
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_active();
  return table;
}

std::size_t padded_stride(std::size_t count) {
  return (count + kLaneAlign - 1) / kLaneAlign * kLaneAlign;
}

}  // namespace edgeguard::kernels
