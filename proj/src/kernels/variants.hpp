#pragma once

#include "edgeguard/kernels/kernels.hpp"

namespace edgeguard::kernels {

extern const KernelTable kScalarTable;
#if defined(EDGEGUARD_BUILD_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(EDGEGUARD_BUILD_AVX512)
extern const KernelTable kAvx512Table;
#endif

}  // namespace edgeguard::kernels
