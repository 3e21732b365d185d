#include "kernels_impl.hpp"

#ifdef PARAMAUDIT_HAVE_AVX2_TU

#include <immintrin.h>

#define PA_AVX2 __attribute__((target("avx2")))

namespace paramaudit::simd::detail {

PA_AVX2 void compose_avx2(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                          std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        __m256i v = _mm256_i32gather_epi32(reinterpret_cast<const int*>(a), idx, 4);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
    }
    for (; i < n; ++i) out[i] = a[b[i]];
}

PA_AVX2 std::uint64_t hash_avx2(const std::uint32_t* a, std::size_t n) {
    __m256i acc = _mm256_add_epi32(_mm256_set1_epi32(static_cast<int>(kHashSeed)),
                                   _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
    const __m256i mul = _mm256_set1_epi32(static_cast<int>(kHashMul));
    std::size_t i = 0;
    for (; i + kHashLanes <= n; i += kHashLanes) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_mullo_epi32(_mm256_xor_si256(acc, x), mul);
        acc = _mm256_xor_si256(acc, _mm256_srli_epi32(acc, 15));
    }
    alignas(32) std::uint32_t lanes[kHashLanes];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (; i < n; ++i) {
        std::uint32_t& s = lanes[i % kHashLanes];
        s = (s ^ a[i]) * kHashMul;
        s ^= s >> 15;
    }
    return hash_finish(lanes, n);
}

PA_AVX2 bool is_subset_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) {
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        if (!_mm256_testc_si256(vb, va)) return false;
    }
    for (; i < words; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

PA_AVX2 void bit_or_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, s));
    }
    for (; i < words; ++i) dst[i] |= src[i];
}

// Nibble lookup popcount, summed per 64-bit lane with sad_epu8.
PA_AVX2 std::size_t popcount_avx2(const std::uint64_t* a, std::size_t words) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i total = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= words; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i lo = _mm256_and_si256(v, low);
        __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
        __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
        total = _mm256_add_epi64(total, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
    }
    alignas(32) std::uint64_t parts[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(parts), total);
    std::size_t c = static_cast<std::size_t>(parts[0] + parts[1] + parts[2] + parts[3]);
    for (; i < words; ++i) c += static_cast<std::size_t>(__builtin_popcountll(a[i]));
    return c;
}

PA_AVX2 static inline __m256i mul_lo64(__m256i a, __m256i b) {
    __m256i lo = _mm256_mul_epu32(a, b);
    __m256i c1 = _mm256_mul_epu32(a, _mm256_srli_epi64(b, 32));
    __m256i c2 = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), b);
    return _mm256_add_epi64(lo, _mm256_slli_epi64(_mm256_add_epi64(c1, c2), 32));
}

PA_AVX2 std::size_t first_divisor_avx2(std::uint64_t n, const std::uint64_t* inv,
                                       const std::uint64_t* lim, std::size_t begin,
                                       std::size_t end) {
    const __m256i vn = _mm256_set1_epi64x(static_cast<long long>(n));
    const __m256i flip = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ull));
    std::size_t i = begin;
    for (; i + 4 <= end; i += 4) {
        __m256i vi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(inv + i));
        __m256i vl = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lim + i));
        __m256i prod = _mm256_xor_si256(mul_lo64(vn, vi), flip);
        // divisible iff prod <= lim (unsigned), i.e. not (prod > lim)
        __m256i gt = _mm256_cmpgt_epi64(prod, _mm256_xor_si256(vl, flip));
        int mask = ~_mm256_movemask_pd(_mm256_castsi256_pd(gt)) & 0xf;
        if (mask) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
    }
    for (; i < end; ++i)
        if (n * inv[i] <= lim[i]) return i;
    return end;
}

}  // namespace paramaudit::simd::detail

#endif
