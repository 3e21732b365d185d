#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paramaudit/numtheory.hpp"

namespace paramaudit {

// Exact rational a/b in lowest terms with b > 0. b == 0 encodes infinity (a == 1).
struct Rat {
    nt::i128 num = 0;
    nt::i128 den = 1;

    static Rat make(nt::i128 a, nt::i128 b);
    static Rat infinity() { return {1, 0}; }
    bool is_infinity() const { return den == 0; }
    nt::u128 height() const;  // max(|a|, |b|)
    bool operator==(const Rat&) const = default;
};

std::string to_string(const Rat& r);
Rat parse_rat(const std::string& text);  // "7/3", "-2", "inf"

// Integer polynomial a_0 + a_1 T + ... + a_n T^n.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<std::int64_t> coeffs);  // strips leading zeros

    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<std::int64_t>& coeffs() const { return c_; }
    std::int64_t leading() const { return c_.back(); }
    std::int64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

    // sum a_i a^i b^(w-i) for a weight w >= degree; Overflow on wrap.
    nt::i128 homogeneous(nt::i128 a, nt::i128 b, std::size_t w) const;
    IntPoly derivative() const;
    std::string to_string() const;
    bool operator==(const IntPoly&) const = default;

private:
    std::vector<std::int64_t> c_;
};

// "T^3 - T", "2*T^2+1", "-3T^4 + T - 7".
IntPoly parse_poly(const std::string& text);
IntPoly poly_from_coeffs(const std::string& csv);  // "a0,a1,...,an"

// gcd(P, P') has degree 0 (exact arithmetic).
bool is_separable(const IntPoly& p);

// Distinct rational roots, ascending.
std::vector<Rat> rational_roots(const IntPoly& p);

// Degrees of the irreducible factors over Q, ascending (degree <= 4 only:
// linear factors by rational roots, quartics split into quadratics by
// Kronecker's method). Throws DegreeTooHigh above 4.
std::vector<std::size_t> factor_degrees(const IntPoly& p);

}  // namespace paramaudit
