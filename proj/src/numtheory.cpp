#include "paramaudit/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paramaudit/error.hpp"
#include "paramaudit/simd/kernels.hpp"

namespace paramaudit::nt {

std::string to_string(i128 v) {
    if (v == 0) return "0";
    u128 u = uabs(v);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (v < 0) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

std::optional<i128> parse_i128(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool neg = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        neg = text[0] == '-';
        i = 1;
    }
    if (i == text.size()) return std::nullopt;
    i128 v = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c < '0' || c > '9') return std::nullopt;
        if (__builtin_mul_overflow(v, 10, &v)) return std::nullopt;
        if (__builtin_add_overflow(v, c - '0', &v)) return std::nullopt;
    }
    return neg ? -v : v;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer overflow in addition");
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer overflow in multiplication");
    return r;
}

u128 gcd(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 gcd_signed(i128 a, i128 b) { return static_cast<i128>(gcd(uabs(a), uabs(b))); }

std::uint64_t lcm(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / static_cast<std::uint64_t>(gcd(a, b)) * b;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are deterministic below 3.3e24.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    if (n < 2) return out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
        if (n > 1 && is_prime(n)) break;
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    for (auto [p, e] : factorize(n)) {
        std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

std::optional<std::pair<std::uint64_t, int>> prime_power(std::uint64_t q) {
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::uint64_t isqrt(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && static_cast<u128>(r) * r > v) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= v) ++r;
    return r;
}

u128 isqrt(u128 v) {
    if (v <= std::numeric_limits<std::uint64_t>::max()) return isqrt(static_cast<std::uint64_t>(v));
    auto r = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
    // Newton steps from the floating estimate.
    for (int i = 0; i < 4; ++i) r = (r + v / r) / 2;
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

namespace {

struct ResidueMasks {
    std::uint64_t m64 = 0;
    std::uint64_t m63 = 0;
    std::uint64_t m65[2] = {0, 0};
    std::uint32_t m11 = 0;
    ResidueMasks() {
        for (std::uint64_t i = 0; i < 64; ++i) m64 |= 1ull << (i * i % 64);
        for (std::uint64_t i = 0; i < 63; ++i) m63 |= 1ull << (i * i % 63);
        for (std::uint64_t i = 0; i < 65; ++i) {
            std::uint64_t r = i * i % 65;
            m65[r / 64] |= 1ull << (r % 64);
        }
        for (std::uint32_t i = 0; i < 11; ++i) m11 |= 1u << (i * i % 11);
    }
};

const ResidueMasks& masks() {
    static const ResidueMasks m;
    return m;
}

}  // namespace

bool is_square(std::uint64_t v, std::uint64_t* root) {
    const ResidueMasks& m = masks();
    if (!((m.m64 >> (v & 63)) & 1)) return false;
    if (!((m.m63 >> (v % 63)) & 1)) return false;
    std::uint64_t r65 = v % 65;
    if (!((m.m65[r65 / 64] >> (r65 % 64)) & 1)) return false;
    if (!((m.m11 >> (v % 11)) & 1)) return false;
    std::uint64_t r = isqrt(v);
    if (static_cast<u128>(r) * r != v) return false;
    if (root) *root = r;
    return true;
}

bool is_square(i128 v, i128* root) {
    if (v < 0) return false;
    u128 u = static_cast<u128>(v);
    if (u <= std::numeric_limits<std::uint64_t>::max()) {
        std::uint64_t r = 0;
        if (!is_square(static_cast<std::uint64_t>(u), &r)) return false;
        if (root) *root = r;
        return true;
    }
    const ResidueMasks& m = masks();
    if (!((m.m64 >> static_cast<unsigned>(u & 63)) & 1)) return false;
    u128 r = isqrt(u);
    if (r * r != u) return false;
    if (root) *root = static_cast<i128>(r);
    return true;
}

SquarefreeSolver::SquarefreeSolver(std::uint32_t trial_limit) : limit_(trial_limit) {
    for (std::uint32_t p : primes_up_to(trial_limit)) {
        if (p == 2) continue;
        std::uint64_t inv = p;  // Newton iteration for the inverse mod 2^64
        for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
        primes_.push_back(p);
        inv_.push_back(inv);
        lim_.push_back(std::numeric_limits<std::uint64_t>::max() / p);
        cube_.push_back(static_cast<u128>(p) * p * p);
    }
}

std::uint64_t SquarefreeSolver::kernel_u64(std::uint64_t c) const {
    const auto& k = simd::kernels();
    std::uint64_t out = 1;
    std::size_t idx = 0;
    auto bound = [&](std::uint64_t v) {
        return static_cast<std::size_t>(
            std::upper_bound(cube_.begin(), cube_.end(), static_cast<u128>(v)) - cube_.begin());
    };
    std::size_t end = bound(c);
    while (idx < end) {
        std::size_t j = k.first_divisor(c, inv_.data(), lim_.data(), idx, end);
        if (j == end) break;
        std::uint64_t p = primes_[j];
        int e = 0;
        while (c * inv_[j] <= lim_[j]) {
            c /= p;
            ++e;
        }
        if (e & 1) out *= p;
        idx = j + 1;
        end = std::min(end, bound(c));
    }
    if (c == 1 || is_square(c)) return out;
    // All primes below primes_[end] are gone; if the next prime cubed exceeds c
    // then c has at most two prime factors and is not a square.
    if (end < primes_.size() || static_cast<u128>(limit_) * limit_ * limit_ > c) return out * c;
    if (is_prime(c)) return out * c;
    fail(ErrorCode::FactorizationTooLarge,
         "cofactor " + std::to_string(c) + " exceeds the trial-division bound");
}

u128 SquarefreeSolver::kernel_u128(u128 c) const {
    u128 out = 1;
    for (std::size_t j = 0; j < primes_.size() && cube_[j] <= c; ++j) {
        u128 p = primes_[j];
        if (c % p) continue;
        int e = 0;
        while (c % p == 0) {
            c /= p;
            ++e;
        }
        if (e & 1) out *= p;
        if (c <= std::numeric_limits<std::uint64_t>::max()) {
            // Resume on the fast path; primes up to p are already removed.
            return out * kernel_u64(static_cast<std::uint64_t>(c));
        }
    }
    if (c == 1) return out;
    u128 r = isqrt(c);
    if (r * r == c) return out;
    if (primes_.empty() || cube_.back() > c) return out * c;
    fail(ErrorCode::FactorizationTooLarge, "cofactor " + to_string(static_cast<i128>(c)) +
                                               " exceeds the trial-division bound");
}

i128 SquarefreeSolver::kernel(i128 v) const {
    if (v == 0) fail(ErrorCode::InvalidArgument, "squarefree kernel of zero");
    u128 c = uabs(v);
    int twos = __builtin_ctzll(static_cast<std::uint64_t>(c)) ;
    if (static_cast<std::uint64_t>(c) == 0) twos = 64 + __builtin_ctzll(static_cast<std::uint64_t>(c >> 64));
    c >>= twos;
    u128 k = c <= std::numeric_limits<std::uint64_t>::max() ? kernel_u64(static_cast<std::uint64_t>(c))
                                                          : kernel_u128(c);
    if (twos & 1) k *= 2;
    i128 d = static_cast<i128>(k);
    return v < 0 ? -d : d;
}

const SquarefreeSolver& default_squarefree_solver() {
    static const SquarefreeSolver solver;
    return solver;
}

}  // namespace paramaudit::nt
