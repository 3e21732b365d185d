#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Hot loops with a scalar reference and an AVX2 variant. The variant is
// picked once at startup from CPUID; every variant must agree bit for bit
// with the scalar one.
namespace paramaudit::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

struct Kernels {
    Isa isa;
    // out[i] = a[b[i]]
    void (*compose)(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                    std::size_t n);
    std::uint64_t (*hash)(const std::uint32_t* a, std::size_t n);
    // true iff every bit of a is set in b
    bool (*is_subset)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
    void (*bit_or)(std::uint64_t* dst, const std::uint64_t* src, std::size_t words);
    std::size_t (*popcount)(const std::uint64_t* a, std::size_t words);
    // Index of the first table entry in [begin, end) whose prime divides n, or
    // end. inv[i] is the inverse of the odd prime mod 2^64, lim[i] = (2^64-1)/p.
    std::size_t (*first_divisor)(std::uint64_t n, const std::uint64_t* inv,
                                 const std::uint64_t* lim, std::size_t begin,
                                 std::size_t end);
};

bool isa_supported(Isa isa);
const Kernels& kernels_for(Isa isa);
const Kernels& kernels();
Isa active_isa();
// Falls back to Scalar when the requested ISA is not available.
void set_active_isa(Isa isa);

}  // namespace paramaudit::simd
