#pragma once

#include <cstddef>
#include <cstdint>

namespace paramaudit::simd::detail {

inline constexpr std::size_t kHashLanes = 8;
inline constexpr std::uint32_t kHashSeed = 0x9E3779B9u;
inline constexpr std::uint32_t kHashMul = 0x01000193u;

inline std::uint64_t hash_finish(const std::uint32_t* acc, std::size_t n) {
    std::uint64_t h = 0xcbf29ce484222325ull ^ n;
    for (std::size_t l = 0; l < kHashLanes; ++l) {
        h = (h ^ acc[l]) * 0x100000001b3ull;
        h ^= h >> 29;
    }
    return h;
}

void compose_scalar(const std::uint32_t*, const std::uint32_t*, std::uint32_t*, std::size_t);
std::uint64_t hash_scalar(const std::uint32_t*, std::size_t);
bool is_subset_scalar(const std::uint64_t*, const std::uint64_t*, std::size_t);
void bit_or_scalar(std::uint64_t*, const std::uint64_t*, std::size_t);
std::size_t popcount_scalar(const std::uint64_t*, std::size_t);
std::size_t first_divisor_scalar(std::uint64_t, const std::uint64_t*, const std::uint64_t*,
                                 std::size_t, std::size_t);

#if defined(__x86_64__) || defined(__i386__)
#define PARAMAUDIT_HAVE_AVX2_TU 1
void compose_avx2(const std::uint32_t*, const std::uint32_t*, std::uint32_t*, std::size_t);
std::uint64_t hash_avx2(const std::uint32_t*, std::size_t);
bool is_subset_avx2(const std::uint64_t*, const std::uint64_t*, std::size_t);
void bit_or_avx2(std::uint64_t*, const std::uint64_t*, std::size_t);
std::size_t popcount_avx2(const std::uint64_t*, std::size_t);
std::size_t first_divisor_avx2(std::uint64_t, const std::uint64_t*, const std::uint64_t*,
                               std::size_t, std::size_t);
#endif

}  // namespace paramaudit::simd::detail
