#include <atomic>

#include "kernels_impl.hpp"
#include "paramaudit/simd/kernels.hpp"

namespace paramaudit::simd {

namespace {

constexpr Kernels kScalar{Isa::Scalar,
                          detail::compose_scalar,
                          detail::hash_scalar,
                          detail::is_subset_scalar,
                          detail::bit_or_scalar,
                          detail::popcount_scalar,
                          detail::first_divisor_scalar};

#ifdef PARAMAUDIT_HAVE_AVX2_TU
constexpr Kernels kAvx2{Isa::Avx2,
                        detail::compose_avx2,
                        detail::hash_avx2,
                        detail::is_subset_avx2,
                        detail::bit_or_avx2,
                        detail::popcount_avx2,
                        detail::first_divisor_avx2};
#endif

Isa detect() { return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

std::atomic<const Kernels*>& active() {
    static std::atomic<const Kernels*> ptr{&kernels_for(detect())};
    return ptr;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
    if (isa == Isa::Scalar) return true;
#ifdef PARAMAUDIT_HAVE_AVX2_TU
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Kernels& kernels_for(Isa isa) {
#ifdef PARAMAUDIT_HAVE_AVX2_TU
    if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) return kAvx2;
#else
    (void)isa;
#endif
    return kScalar;
}

const Kernels& kernels() { return *active().load(std::memory_order_acquire); }

Isa active_isa() { return kernels().isa; }

void set_active_isa(Isa isa) { active().store(&kernels_for(isa), std::memory_order_release); }

}  // namespace paramaudit::simd
