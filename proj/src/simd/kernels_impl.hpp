#pragma once

#include "leuk/simd/kernels.hpp"

namespace leuk::simd::detail {

const KernelTable& scalar_table() noexcept;

#if defined(LEUK_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

#if defined(LEUK_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace leuk::simd::detail
