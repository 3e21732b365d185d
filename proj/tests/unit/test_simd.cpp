#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "paramaudit/numtheory.hpp"
#include "paramaudit/simd/kernels.hpp"

using namespace paramaudit;

namespace {

std::vector<const simd::Kernels*> variants() {
    std::vector<const simd::Kernels*> v{&simd::kernels_for(simd::Isa::Scalar)};
    if (simd::isa_supported(simd::Isa::Avx2)) v.push_back(&simd::kernels_for(simd::Isa::Avx2));
    return v;
}

}  // namespace

TEST_CASE("simd variants agree with the scalar reference") {
    std::mt19937_64 rng(12345);
    const auto& ref = simd::kernels_for(simd::Isa::Scalar);
    for (const auto* k : variants()) {
        CAPTURE(simd::isa_name(k->isa));
        for (std::size_t n : {0u, 1u, 3u, 7u, 8u, 9u, 16u, 23u, 64u, 257u}) {
            std::vector<std::uint32_t> a(n), b(n), o1(n), o2(n);
            std::iota(a.begin(), a.end(), 0u);
            std::iota(b.begin(), b.end(), 0u);
            std::shuffle(a.begin(), a.end(), rng);
            std::shuffle(b.begin(), b.end(), rng);
            ref.compose(a.data(), b.data(), o1.data(), n);
            k->compose(a.data(), b.data(), o2.data(), n);
            CHECK(o1 == o2);
            CHECK(ref.hash(a.data(), n) == k->hash(a.data(), n));
        }
        for (std::size_t words : {0u, 1u, 3u, 4u, 5u, 17u}) {
            std::vector<std::uint64_t> x(words), y(words);
            for (auto& w : x) w = rng();
            for (std::size_t i = 0; i < words; ++i) y[i] = x[i] | rng();
            CHECK(ref.popcount(x.data(), words) == k->popcount(x.data(), words));
            CHECK(k->is_subset(x.data(), y.data(), words));
            if (words) {
                y[words - 1] &= ~x[words - 1];
                bool expect = x[words - 1] == 0;
                CHECK(k->is_subset(x.data(), y.data(), words) == expect);
            }
            std::vector<std::uint64_t> d1(x), d2(x);
            ref.bit_or(d1.data(), y.data(), words);
            k->bit_or(d2.data(), y.data(), words);
            CHECK(d1 == d2);
        }
    }
}

TEST_CASE("divisibility scan matches trial division") {
    auto primes = nt::primes_up_to(2000);
    std::vector<std::uint64_t> ps, inv, lim;
    for (auto p : primes) {
        if (p == 2) continue;
        std::uint64_t x = p;
        for (int i = 0; i < 6; ++i) x *= 2 - p * x;
        ps.push_back(p);
        inv.push_back(x);
        lim.push_back(~0ull / p);
    }
    std::mt19937_64 rng(7);
    for (const auto* k : variants()) {
        for (int trial = 0; trial < 3000; ++trial) {
            std::uint64_t n = rng() >> (trial % 40);
            if (trial % 3 == 0) n = (rng() % 100000) * ps[rng() % ps.size()];
            std::size_t begin = rng() % 20, end = begin + rng() % (ps.size() - begin);
            std::size_t expect = end;
            for (std::size_t i = begin; i < end; ++i)
                if (n % ps[i] == 0) {
                    expect = i;
                    break;
                }
            CHECK(k->first_divisor(n, inv.data(), lim.data(), begin, end) == expect);
        }
    }
}

TEST_CASE("active isa can be forced to scalar and back") {
    auto before = simd::active_isa();
    simd::set_active_isa(simd::Isa::Scalar);
    CHECK(simd::active_isa() == simd::Isa::Scalar);
    simd::set_active_isa(before);
    CHECK(simd::active_isa() == before);
}
