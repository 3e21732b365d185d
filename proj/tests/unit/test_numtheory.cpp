#include <doctest.h>

#include <cstdlib>
#include <random>

#include "paramaudit/error.hpp"
#include "paramaudit/numtheory.hpp"

using namespace paramaudit;
using nt::i128;

namespace {

// Definitional oracle: strip every square p^2 by naive trial division.
long long naive_squarefree(long long v) {
    long long s = v < 0 ? -1 : 1;
    long long c = std::llabs(v);
    long long out = 1;
    for (long long p = 2; p * p <= c; ++p) {
        int e = 0;
        while (c % p == 0) {
            c /= p;
            ++e;
        }
        if (e % 2) out *= p;
    }
    return s * out * c;
}

}  // namespace

TEST_CASE("squarefree kernel examples") {
    const auto& S = nt::default_squarefree_solver();
    CHECK(S.kernel(12) == 3);
    CHECK(S.kernel(1) == 1);
    CHECK(S.kernel(-8) == -2);
    CHECK(S.kernel(18) == 2);
    CHECK_THROWS_AS(S.kernel(0), Error);
}

TEST_CASE("squarefree kernel agrees with naive factoring") {
    const auto& S = nt::default_squarefree_solver();
    for (long long v = -20000; v <= 20000; ++v) {
        if (v == 0) continue;
        REQUIRE(S.kernel(v) == naive_squarefree(v));
    }
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        long long a = static_cast<long long>(rng() % 3000000) + 1;
        long long b = static_cast<long long>(rng() % 3000) + 1;
        long long v = a * b * b;
        REQUIRE(S.kernel(v) == naive_squarefree(a));
        REQUIRE(S.kernel(v) == naive_squarefree(v));
    }
}

TEST_CASE("squarefree kernel on large values") {
    const auto& S = nt::default_squarefree_solver();
    // Two large primes near 1e9 and a square of one.
    i128 p = 1000000007, q = 998244353;
    CHECK(S.kernel(p * q) == p * q);
    CHECK(S.kernel(p * p * 6) == 6);
    CHECK(S.kernel(p * p * q * q * 5) == 5);
    i128 big = i128(1) << 100;
    CHECK(S.kernel(big * 3) == 3);
    // Three primes above the trial bound cannot be resolved.
    nt::SquarefreeSolver tiny(100);
    CHECK_THROWS_AS(tiny.kernel(i128(1000003) * 1000033 * 1000037), Error);
    CHECK(tiny.kernel(i128(1000003) * 1000003) == 1);
}

TEST_CASE("primality and squares") {
    auto primes = nt::primes_up_to(100000);
    std::vector<bool> isp(100001, false);
    for (auto p : primes) isp[p] = true;
    for (std::uint64_t n = 0; n <= 100000; ++n) REQUIRE(nt::is_prime(n) == isp[n]);
    CHECK(nt::is_prime(1000000007ull));
    CHECK_FALSE(nt::is_prime(1000000007ull * 998244353ull));
    CHECK(nt::is_prime(18446744073709551557ull));
    for (std::uint64_t r = 0; r < 3000; ++r) {
        std::uint64_t root = 0;
        REQUIRE(nt::is_square(r * r, &root));
        REQUIRE(root == r);
        if (r > 1) REQUIRE_FALSE(nt::is_square(r * r + 1));
    }
    std::uint64_t big = 4294967295ull;
    CHECK(nt::is_square(big * big));
    CHECK_FALSE(nt::is_square(big * big - 1));
    i128 huge = i128(123456789012345678LL) * i128(123456789012345678LL);
    i128 root = 0;
    CHECK(nt::is_square(huge, &root));
    CHECK(root == i128(123456789012345678LL));
}

TEST_CASE("small arithmetic helpers") {
    CHECK(nt::euler_phi(8) == 4);
    CHECK(nt::euler_phi(9) == 6);
    CHECK(nt::euler_phi(1) == 1);
    CHECK(nt::divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(nt::prime_power(8) == std::make_pair(std::uint64_t{2}, 3));
    CHECK_FALSE(nt::prime_power(12).has_value());
    CHECK(nt::to_string(-i128(1) << 100) == "-1267650600228229401496703205376");
    CHECK(nt::parse_i128("-1267650600228229401496703205376") == -(i128(1) << 100));
    CHECK_THROWS_AS(nt::checked_mul(i128(1) << 100, i128(1) << 30), Error);
}
