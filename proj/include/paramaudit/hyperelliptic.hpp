#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramaudit/numtheory.hpp"
#include "paramaudit/polynomial.hpp"

namespace paramaudit {

// Integer polynomial checked squarefree at construction.
class SeparablePoly {
public:
    explicit SeparablePoly(IntPoly p);  // InvalidArgument if degree 0, NotSeparable
    const IntPoly& poly() const { return p_; }
    std::size_t degree() const { return p_.degree(); }
    // n for even n, n + 1 for odd n: the homogenization degree of P(T, Z).
    std::size_t hom_degree() const { return degree() + degree() % 2; }
    nt::i128 hom(nt::i128 t, nt::i128 z) const { return p_.homogeneous(t, z, hom_degree()); }

private:
    IntPoly p_;
};

SeparablePoly parse_separable(const std::string& text);

struct BranchPoints {
    std::vector<Rat> rational;               // exact rational roots
    std::vector<std::size_t> irrational;     // degrees of irreducible factors of degree >= 2
    bool infinity = false;                   // n odd
    std::size_t count() const;               // n or n + 1
};

BranchPoints branch_points(const SeparablePoly& p);

// Signed squarefree d with q = d * (rational square).
nt::i128 squarefree_part(nt::i128 num, nt::i128 den = 1);
nt::i128 squarefree_part(const Rat& q);

// Squarefree part of P(t0); BranchPoint if P(t0) = 0. For t0 = infinity this
// is specialize_infinity.
nt::i128 specialize(const SeparablePoly& p, const Rat& t0);
nt::i128 specialize_infinity(const SeparablePoly& p);  // OddDegree for odd n

// Y^2 = d P(T, Z) in the weighted plane with weights (w, 1, 1), w = hom_degree / 2.
struct HyperCurve {
    SeparablePoly base;
    nt::i128 d;
    HyperCurve(SeparablePoly p, nt::i128 d);  // d squarefree, nonzero
    std::size_t weight() const { return base.hom_degree() / 2; }
};

// [y : t : z] with gcd(t, z) = 1, z > 0 or (t, z) = (1, 0). Integral t, z force
// integral y; only y >= 0 is listed (the point with -y is implied).
struct WeightedPoint {
    nt::i128 y = 0, t = 0, z = 1;
    bool trivial() const { return y == 0; }
    bool operator==(const WeightedPoint&) const = default;
};

std::string to_string(const WeightedPoint& p);
bool on_curve(const HyperCurve& c, const WeightedPoint& p);

// All canonical points with max(|t|, |z|) <= bound, ordered by height, then z, then t.
std::vector<WeightedPoint> point_search(const HyperCurve& c, std::uint64_t bound);

// First non-trivial point in the sweep, if any. Skips coprimality while
// scanning (multiples are rescalings) and reduces the hit.
std::optional<WeightedPoint> first_nontrivial_point(const HyperCurve& c, std::uint64_t bound);

// Reduced t0 = a/b (b >= 0) of height <= bound in sweep order: height, then
// numerator; infinity belongs to height 1.
template <class F>
void for_each_rational(std::uint64_t bound, F&& f) {
    for (std::uint64_t h = 1; h <= bound; ++h) {
        auto H = static_cast<nt::i128>(h);
        // |a| = h, b <= h  or  b = h, |a| < h
        for (nt::i128 a = -H; a <= H; ++a) {
            nt::u128 ua = nt::uabs(a);
            if (ua == h) {
                for (nt::i128 b = 0; b <= H; ++b)
                    if (nt::gcd(ua, static_cast<nt::u128>(b)) == 1 && (b != 0 || a == 1)) f(Rat{a, b});
            } else if (nt::gcd(ua, h) == 1) {
                f(Rat{a, H});
            }
        }
    }
}

struct Realized {
    nt::i128 d;
    Rat witness;
    bool degenerate() const { return d == 1; }
};

// Squarefree parts of P(t0) over every non-branch t0 of height <= bound
// (infinity included for even n), one record per d with its first witness,
// sorted by d.
std::vector<Realized> realized_discriminants(const SeparablePoly& p, std::uint64_t bound);

// First t0 (sweep order) whose specialization is Q(sqrt d).
std::optional<Rat> find_specialization(const SeparablePoly& p, nt::i128 d, std::uint64_t bound);

struct TwistReport {
    nt::i128 d = 0;
    std::uint64_t bound = 0;
    std::optional<Rat> witness_t;                // specialization side
    std::optional<WeightedPoint> witness_point;  // point side
    std::optional<WeightedPoint> point_from_t;   // [y : t0 : 1] built from witness_t
    std::optional<Rat> t_from_point;             // t / z, or infinity
    bool agree = false;
    bool conversions_verified = false;
    std::string note;
};

// Both sides of the twist correspondence at the same height bound. d = 1 is
// rejected as InvalidArgument.
TwistReport twist_correspondence_check(const SeparablePoly& p, nt::i128 d, std::uint64_t bound);
nlohmann::json to_json(const TwistReport& r);

enum class Prop81 { Parametric, NonParametric };

struct Prop81Result {
    Prop81 verdict;
    std::string route;                       // proof route tag
    BranchPoints branch;
    std::optional<IntPoly> normalized_cubic; // T^3 + bT + c for the elliptic route
    std::optional<Rat> moved_to_infinity;    // rational branch point sent to infinity
};

Prop81Result prop81_classify(const SeparablePoly& p);  // DegreeTooHigh above 4
nlohmann::json to_json(const Prop81Result& r);

}  // namespace paramaudit
