#include "paramaudit/cycletype.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "paramaudit/error.hpp"
#include "paramaudit/numtheory.hpp"
#include "paramaudit/perm.hpp"

namespace paramaudit {

using namespace nt;

CycleType normalize_type(CycleType t) {
    for (auto l : t)
        if (l == 0) fail(ErrorCode::InvalidArgument, "cycle length 0");
    std::sort(t.begin(), t.end());
    return t;
}

std::size_t type_degree(const CycleType& t) { return std::accumulate(t.begin(), t.end(), std::size_t{0}); }

std::uint64_t type_order(const CycleType& t) {
    u128 o = 1;
    for (auto l : t) {
        o = o / gcd(o, l) * l;
        if (o > UINT64_MAX) fail(ErrorCode::Overflow, "cycle type order exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(o);
}

int type_sign(const CycleType& t) {
    std::size_t even = 0;
    for (auto l : t) even += (l % 2 == 0);
    return even % 2 ? -1 : 1;
}

CycleType type_power(const CycleType& t, std::uint64_t k) {
    CycleType out;
    for (auto l : t) {
        std::uint64_t g = k == 0 ? l : static_cast<std::uint64_t>(gcd(l, k));
        for (std::uint64_t i = 0; i < g; ++i) out.push_back(l / g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool type_is_power_of(const CycleType& t, const CycleType& s) {
    if (type_degree(t) != type_degree(s)) return false;
    CycleType tn = normalize_type(t);
    // s^k only depends on gcd(k, ord s)
    for (auto d : divisors(type_order(s)))
        if (type_power(s, d) == tn) return true;
    return false;
}

std::uint64_t type_class_size(const CycleType& t) {
    std::map<std::size_t, std::size_t> mult;
    for (auto l : t) ++mult[l];
    // n! / prod(l^m m!) computed as a product of binomial-style factors to
    // stay exact: place cycles one length at a time.
    u128 size = 1;
    std::size_t remaining = type_degree(t);
    for (auto [l, m] : mult) {
        for (std::size_t j = 0; j < m; ++j) {
            // choose l points out of remaining, times (l-1)! arrangements
            u128 ways = 1;
            for (std::size_t i = 0; i < l; ++i) {
                ways *= remaining - i;
                if (ways > (u128(1) << 100)) fail(ErrorCode::Overflow, "class size exceeds 64 bits");
            }
            ways /= l;
            remaining -= l;
            size *= ways;
            if (size > (u128(1) << 100)) fail(ErrorCode::Overflow, "class size exceeds 64 bits");
        }
        u128 f = 1;
        for (std::size_t j = 2; j <= m; ++j) f *= j;
        size /= f;
    }
    if (size > UINT64_MAX) fail(ErrorCode::Overflow, "class size exceeds 64 bits");
    return static_cast<std::uint64_t>(size);
}

bool type_maximal_cyclic(const CycleType& t) {
    std::map<std::size_t, std::size_t> mult;
    for (auto l : t) ++mult[l];
    std::size_t n = type_degree(t);
    for (auto p : primes_up_to(static_cast<std::uint32_t>(n))) {
        bool divides_some = false, all_multiple = true, some_large = false;
        for (auto [l, m] : mult) {
            if (l % p == 0) {
                divides_some = true;
                if (m % p) all_multiple = false;
            }
            if (m >= p) some_large = true;
        }
        if (divides_some ? all_multiple : some_large) return false;
    }
    return true;
}

void for_each_partition(std::size_t n, const std::function<bool(const CycleType&)>& f) {
    if (n == 0) {
        f({});
        return;
    }
    // parts kept descending while generating, reported ascending
    std::vector<std::size_t> a{n};
    CycleType out;
    while (true) {
        out.assign(a.rbegin(), a.rend());
        if (!f(out)) return;
        // next partition in reverse lexicographic order
        std::size_t rem = 0;
        while (!a.empty() && a.back() == 1) {
            ++rem;
            a.pop_back();
        }
        if (a.empty()) return;
        std::size_t x = --a.back();
        ++rem;
        while (rem > x) {
            a.push_back(x);
            rem -= x;
        }
        if (rem) a.push_back(rem);
    }
}

std::vector<CycleType> partitions(std::size_t n, std::size_t cap) {
    std::vector<CycleType> out;
    for_each_partition(n, [&](const CycleType& t) {
        if (out.size() >= cap) fail(ErrorCode::OrderTooLarge, "partition count of " + std::to_string(n) + " exceeds cap");
        out.push_back(t);
        return true;
    });
    return out;
}

bool type_maximal_cyclic_search(const CycleType& t, std::size_t cap) {
    CycleType tn = normalize_type(t);
    std::uint64_t ord = type_order(tn);
    std::size_t seen = 0;
    bool maximal = true;
    for_each_partition(type_degree(tn), [&](const CycleType& s) {
        if (++seen > cap) fail(ErrorCode::OrderTooLarge, "partition search exceeds cap");
        if (type_order(s) > ord && type_is_power_of(tn, s)) {
            maximal = false;
            return false;
        }
        return true;
    });
    return maximal;
}

std::string type_label(const CycleType& t) { return cycle_type_label(t); }

CycleType parse_cycle_type(std::string_view text) {
    CycleType out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '[' || text[i] == ']')) ++i;
    };
    auto number = [&]() -> std::size_t {
        std::size_t v = 0, digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
            v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
            if (++digits > 6) fail(ErrorCode::ParseError, "cycle length too large");
        }
        if (!digits) fail(ErrorCode::ParseError, "expected a number in cycle type '" + std::string(text) + "'");
        return v;
    };
    skip();
    while (i < text.size()) {
        std::size_t len = number(), mult = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            mult = number();
        }
        if (len == 0) fail(ErrorCode::ParseError, "cycle length 0");
        out.insert(out.end(), mult, len);
        skip();
    }
    if (out.empty()) fail(ErrorCode::ParseError, "empty cycle type");
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace paramaudit
