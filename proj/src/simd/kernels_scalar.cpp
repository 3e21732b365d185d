#include "kernels_impl.hpp"

namespace paramaudit::simd::detail {

void compose_scalar(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                    std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[b[i]];
}

std::uint64_t hash_scalar(const std::uint32_t* a, std::size_t n) {
    std::uint32_t acc[kHashLanes];
    for (std::size_t l = 0; l < kHashLanes; ++l) acc[l] = kHashSeed + static_cast<std::uint32_t>(l);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t& s = acc[i % kHashLanes];
        s = (s ^ a[i]) * kHashMul;
        s ^= s >> 15;
    }
    return hash_finish(acc, n);
}

bool is_subset_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

void bit_or_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
    for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

std::size_t popcount_scalar(const std::uint64_t* a, std::size_t words) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i]));
    return c;
}

std::size_t first_divisor_scalar(std::uint64_t n, const std::uint64_t* inv,
                                 const std::uint64_t* lim, std::size_t begin,
                                 std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
        if (n * inv[i] <= lim[i]) return i;
    return end;
}

}  // namespace paramaudit::simd::detail
