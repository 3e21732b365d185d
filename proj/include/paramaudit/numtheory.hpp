#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace paramaudit::nt {

using i128 = __int128;
using u128 = unsigned __int128;

std::string to_string(i128 v);
std::optional<i128> parse_i128(std::string_view text);

inline u128 uabs(i128 v) { return v < 0 ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v); }

// Throw Overflow on wrap.
i128 checked_add(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);

u128 gcd(u128 a, u128 b);
i128 gcd_signed(i128 a, i128 b);  // non-negative result
std::uint64_t lcm(std::uint64_t a, std::uint64_t b);

bool is_prime(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
// (p, k) with q = p^k, k >= 1
std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t q);
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

std::uint64_t isqrt(std::uint64_t v);
u128 isqrt(u128 v);
bool is_square(std::uint64_t v, std::uint64_t* root = nullptr);
bool is_square(i128 v, i128* root = nullptr);

// Squarefree kernel of nonzero integers by trial division against a prime
// table up to trial_limit, then a primality test on the cofactor.
class SquarefreeSolver {
public:
    explicit SquarefreeSolver(std::uint32_t trial_limit = 1'000'000);
    // Signed squarefree d with v = d * s^2. Throws FactorizationTooLarge.
    i128 kernel(i128 v) const;
    std::uint32_t trial_limit() const { return limit_; }

private:
    std::uint64_t kernel_u64(std::uint64_t c) const;
    u128 kernel_u128(u128 c) const;

    std::uint32_t limit_;
    std::vector<std::uint64_t> primes_;  // odd primes
    std::vector<std::uint64_t> inv_;
    std::vector<std::uint64_t> lim_;
    std::vector<u128> cube_;
};

const SquarefreeSolver& default_squarefree_solver();

}  // namespace paramaudit::nt
