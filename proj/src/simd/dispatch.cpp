#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"

namespace leuk::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(LEUK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* table_for(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return &detail::scalar_table();
        case Isa::avx2:
#if defined(LEUK_HAVE_AVX2)
            if (cpu_has_avx2()) return &detail::avx2_table();
#endif
            return nullptr;
        case Isa::neon:
#if defined(LEUK_HAVE_NEON)
            // AArch64 mandates Advanced SIMD with double-precision lanes.
            return &detail::neon_table();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable* pick_default() noexcept {
    if (const char* env = std::getenv("HOSVD_SIMD")) {
        const std::string want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (want == to_string(isa)) {
                if (const auto* t = table_for(isa)) return t;
            }
        }
    }
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (const auto* t = table_for(isa)) return t;
    }
    return &detail::scalar_table();
}

std::atomic<const KernelTable*>& current() noexcept {
    static std::atomic<const KernelTable*> table{pick_default()};
    return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

const KernelTable& scalar_kernels() noexcept { return detail::scalar_table(); }

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (const auto* t = table_for(isa)) out.push_back(t);
    }
    return out;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_acquire); }

bool select(Isa isa) noexcept {
    const auto* t = table_for(isa);
    if (t == nullptr) return false;
    current().store(t, std::memory_order_release);
    return true;
}

}  // namespace leuk::simd
