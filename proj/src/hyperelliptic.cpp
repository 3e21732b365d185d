#include "paramaudit/hyperelliptic.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

#include "paramaudit/error.hpp"

namespace paramaudit {

namespace mp = boost::multiprecision;
using nt::i128;
using nt::u128;

namespace {

nlohmann::json jint(i128 v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return nt::to_string(v);
}

i128 pow_checked(i128 b, std::size_t e) {
    i128 r = 1;
    for (std::size_t i = 0; i < e; ++i) r = nt::checked_mul(r, b);
    return r;
}

// |d| * sum |a_i| * B^w, saturating at 2^100.
u128 magnitude_bound(const SeparablePoly& p, i128 d, std::uint64_t B) {
    const u128 cap = u128(1) << 100;
    u128 s = 0;
    for (auto c : p.poly().coeffs()) s += nt::uabs(c);
    s *= nt::uabs(d);
    for (std::size_t i = 0; i < p.hom_degree(); ++i) {
        s *= B;
        if (s > cap) return cap;
    }
    return s;
}

WeightedPoint reduce(i128 y, i128 t, i128 z, std::size_t w) {
    i128 g = nt::gcd_signed(t, z);
    if (z < 0 || (z == 0 && t < 0)) g = -g;
    // y scales by g^w
    i128 gw = pow_checked(g < 0 ? -g : g, w);
    WeightedPoint p{y / gw, t / g, z / g};
    if (p.y < 0) p.y = -p.y;
    return p;
}

class PointSweep {
public:
    PointSweep(const HyperCurve& c, std::uint64_t bound) : c_(c), B_(bound) {
        fast_ = magnitude_bound(c.base, c.d, bound) < (u128(1) << 62);
        const auto& a = c.base.poly().coeffs();
        for (auto x : a) a_.push_back(static_cast<std::int64_t>(x));
        w_ = c.base.hom_degree();
    }

    // Calls f(t, z, y) for each (t, z) with d P(t, z) a square (y >= 0),
    // max(|t|, z) = h, z >= 0, in order of height; f returns false to stop.
    template <class F>
    void run(F&& f) {
        if (!visit(1, 0, f)) return;
        for (std::uint64_t h = 1; h <= B_; ++h) {
            auto H = static_cast<std::int64_t>(h);
            // row z = h
            if (!row(H, -H, H, f)) return;
            // columns t = +-h with 0 < z < h
            for (std::int64_t z = 1; z < H; ++z) {
                if (!visit(-H, z, f)) return;
                if (!visit(H, z, f)) return;
            }
        }
    }

private:
    template <class F>
    bool visit(std::int64_t t, std::int64_t z, F& f) {
        i128 v;
        if (fast_)
            v = eval64(t, z);
        else
            v = nt::checked_mul(c_.d, c_.base.hom(t, z));
        i128 y;
        if (v >= 0 && nt::is_square(v, &y)) return f(i128(t), i128(z), y);
        return true;
    }

    template <class F>
    bool row(std::int64_t z, std::int64_t t0, std::int64_t t1, F& f) {
        if (!fast_) {
            for (std::int64_t t = t0; t <= t1; ++t)
                if (!visit(t, z, f)) return false;
            return true;
        }
        // coefficients d a_i z^(w - i), then Horner in t
        std::size_t n = a_.size() - 1;
        std::vector<std::int64_t> cz(n + 1);
        std::int64_t zp = 1;
        for (std::size_t k = 0; k < w_ - n; ++k) zp *= z;
        for (std::size_t i = n + 1; i-- > 0;) {
            cz[i] = static_cast<std::int64_t>(c_.d) * a_[i] * zp;
            zp *= z;
        }
        for (std::int64_t t = t0; t <= t1; ++t) {
            std::int64_t v = cz[n];
            for (std::size_t i = n; i-- > 0;) v = v * t + cz[i];
            if (v < 0) continue;
            std::uint64_t y;
            if (nt::is_square(static_cast<std::uint64_t>(v), &y))
                if (!f(i128(t), i128(z), i128(y))) return false;
        }
        return true;
    }

    std::int64_t eval64(std::int64_t t, std::int64_t z) const {
        // sum a_i t^i z^(w-i), Horner in t with the z power for each step
        std::size_t n = a_.size() - 1;
        std::int64_t zpow[72];
        zpow[n] = 1;
        for (std::size_t k = 0; k < w_ - n; ++k) zpow[n] *= z;
        for (std::size_t i = n; i-- > 0;) zpow[i] = zpow[i + 1] * z;
        std::int64_t s = 0;
        for (std::size_t i = n + 1; i-- > 0;) s = s * t + a_[i] * zpow[i];
        return static_cast<std::int64_t>(c_.d) * s;
    }

    const HyperCurve& c_;
    std::uint64_t B_;
    bool fast_;
    std::vector<std::int64_t> a_;
    std::size_t w_;
};

}  // namespace

SeparablePoly::SeparablePoly(IntPoly p) : p_(std::move(p)) {
    if (p_.degree() == 0) fail(ErrorCode::InvalidArgument, "polynomial must have degree >= 1");
    if (!is_separable(p_)) fail(ErrorCode::NotSeparable, "polynomial " + p_.to_string() + " is not separable");
}

SeparablePoly parse_separable(const std::string& text) { return SeparablePoly(parse_poly(text)); }

std::size_t BranchPoints::count() const {
    std::size_t c = rational.size() + (infinity ? 1 : 0);
    for (auto d : irrational) c += d;
    return c;
}

BranchPoints branch_points(const SeparablePoly& p) {
    BranchPoints b;
    b.rational = rational_roots(p.poly());
    b.infinity = p.degree() % 2 == 1;
    if (p.degree() <= 4) {
        for (auto d : factor_degrees(p.poly()))
            if (d >= 2) b.irrational.push_back(d);
    } else if (b.rational.size() < p.degree()) {
        // irreducible splitting above degree 4 is not attempted
        b.irrational.push_back(p.degree() - b.rational.size());
    }
    return b;
}

i128 squarefree_part(i128 num, i128 den) {
    if (num == 0 || den == 0) fail(ErrorCode::InvalidArgument, "squarefree part of zero");
    const auto& s = nt::default_squarefree_solver();
    i128 a = s.kernel(num), b = s.kernel(den);
    i128 g = nt::gcd_signed(a, b);
    // kernel(a b) for squarefree a, b
    return (a / g) * (b / g);
}

i128 squarefree_part(const Rat& q) {
    if (q.is_infinity()) fail(ErrorCode::InvalidArgument, "squarefree part of infinity");
    return squarefree_part(q.num, q.den);
}

i128 specialize(const SeparablePoly& p, const Rat& t0) {
    if (t0.is_infinity()) return specialize_infinity(p);
    std::size_t n = p.degree();
    // P(a/b) = (sum a_i a^i b^(n-i)) / b^n
    i128 num = p.poly().homogeneous(t0.num, t0.den, n);
    if (num == 0) fail(ErrorCode::BranchPoint, "t0 = " + to_string(t0) + " is a root of P");
    return squarefree_part(num, pow_checked(t0.den, n));
}

i128 specialize_infinity(const SeparablePoly& p) {
    if (p.degree() % 2) fail(ErrorCode::OddDegree, "infinity is a branch point for odd degree");
    return squarefree_part(p.poly().leading(), 1);
}

HyperCurve::HyperCurve(SeparablePoly p, i128 dd) : base(std::move(p)), d(dd) {
    if (d == 0 || nt::default_squarefree_solver().kernel(d) != d)
        fail(ErrorCode::InvalidArgument, "twist parameter must be squarefree and nonzero");
}

std::string to_string(const WeightedPoint& p) {
    return "[" + nt::to_string(p.y) + " : " + nt::to_string(p.t) + " : " + nt::to_string(p.z) + "]";
}

bool on_curve(const HyperCurve& c, const WeightedPoint& p) {
    if (p.t == 0 && p.z == 0) return false;
    mp::cpp_int t = mp::cpp_int(static_cast<long long>(p.t)), z = mp::cpp_int(static_cast<long long>(p.z));
    mp::cpp_int s = 0;
    std::size_t w = c.base.hom_degree();
    const auto& a = c.base.poly().coeffs();
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * mp::pow(t, static_cast<unsigned>(i)) * mp::pow(z, static_cast<unsigned>(w - i));
    mp::cpp_int y = mp::cpp_int(static_cast<long long>(p.y));
    return y * y == s * static_cast<long long>(c.d);
}

std::vector<WeightedPoint> point_search(const HyperCurve& c, std::uint64_t bound) {
    std::vector<WeightedPoint> out;
    PointSweep sweep(c, bound);
    sweep.run([&](i128 t, i128 z, i128 y) {
        if (nt::gcd_signed(t, z) == 1) out.push_back({y, t, z});
        return true;
    });
    auto h = [](const WeightedPoint& p) { return std::max(nt::uabs(p.t), nt::uabs(p.z)); };
    std::stable_sort(out.begin(), out.end(), [&](const WeightedPoint& x, const WeightedPoint& y) {
        if (h(x) != h(y)) return h(x) < h(y);
        if (x.z != y.z) return x.z < y.z;
        return x.t < y.t;
    });
    return out;
}

std::optional<WeightedPoint> first_nontrivial_point(const HyperCurve& c, std::uint64_t bound) {
    std::optional<WeightedPoint> hit;
    PointSweep sweep(c, bound);
    sweep.run([&](i128 t, i128 z, i128 y) {
        if (y == 0) return true;
        hit = reduce(y, t, z, c.weight());
        return false;
    });
    return hit;
}

std::vector<Realized> realized_discriminants(const SeparablePoly& p, std::uint64_t bound) {
    std::map<i128, Rat> first;
    const bool even = p.degree() % 2 == 0;
    for_each_rational(bound, [&](const Rat& t0) {
        if (t0.is_infinity()) {
            if (even) first.try_emplace(specialize_infinity(p), t0);
            return;
        }
        if (p.poly().homogeneous(t0.num, t0.den, p.degree()) == 0) return;
        first.try_emplace(specialize(p, t0), t0);
    });
    std::vector<Realized> out;
    for (auto& [d, w] : first) out.push_back({d, w});
    return out;
}

std::optional<Rat> find_specialization(const SeparablePoly& p, i128 d, std::uint64_t bound) {
    std::optional<Rat> hit;
    const bool even = p.degree() % 2 == 0;
    struct Stop {};
    try {
        for_each_rational(bound, [&](const Rat& t0) {
            if (t0.is_infinity()) {
                if (!even) return;
            } else if (p.poly().homogeneous(t0.num, t0.den, p.degree()) == 0) {
                return;
            }
            if (specialize(p, t0) == d) {
                hit = t0;
                throw Stop{};
            }
        });
    } catch (const Stop&) {
    }
    return hit;
}

TwistReport twist_correspondence_check(const SeparablePoly& p, i128 d, std::uint64_t bound) {
    if (d == 1) fail(ErrorCode::InvalidArgument, "d = 1 gives the trivial algebra, not a quadratic extension");
    HyperCurve curve(p, d);
    TwistReport r;
    r.d = d;
    r.bound = bound;
    r.witness_t = find_specialization(p, d, bound);
    r.witness_point = first_nontrivial_point(curve, bound);
    r.agree = r.witness_t.has_value() == r.witness_point.has_value();
    bool ok = true;
    if (r.witness_t) {
        // y^2 = d P(t0): the point [y : t0 : 1] (weighted-rescaled to integers),
        // or [y : 1 : 0] at infinity
        const Rat& t0 = *r.witness_t;
        i128 a = t0.is_infinity() ? 1 : t0.num, b = t0.is_infinity() ? 0 : t0.den;
        i128 v = nt::checked_mul(d, p.hom(a, b)), y;
        if (v > 0 && nt::is_square(v, &y)) {
            r.point_from_t = WeightedPoint{y, a, b};
            ok = ok && on_curve(curve, *r.point_from_t);
        } else {
            ok = false;
        }
    }
    if (r.witness_point) {
        const WeightedPoint& q = *r.witness_point;
        r.t_from_point = q.z == 0 ? Rat::infinity() : Rat::make(q.t, q.z);
        ok = ok && on_curve(curve, q) && !q.trivial() && specialize(p, *r.t_from_point) == d;
    }
    r.conversions_verified = ok;
    if (!r.witness_t && !r.witness_point)
        r.note = "no witness of height <= " + std::to_string(bound) + " on either side (bounded search, not a proof)";
    else if (r.agree)
        r.note = "realized at height <= " + std::to_string(bound);
    else
        r.note = "sides disagree";
    return r;
}

nlohmann::json to_json(const TwistReport& r) {
    nlohmann::json j;
    j["d"] = jint(r.d);
    j["bound"] = r.bound;
    j["realized"] = r.witness_t.has_value();
    j["point_found"] = r.witness_point.has_value();
    if (r.witness_t) j["witness_t"] = to_string(*r.witness_t);
    if (r.witness_point) j["witness_point"] = to_string(*r.witness_point);
    if (r.point_from_t) j["point_from_t"] = to_string(*r.point_from_t);
    if (r.t_from_point) j["t_from_point"] = to_string(*r.t_from_point);
    j["agree"] = r.agree;
    j["conversions_verified"] = r.conversions_verified;
    j["evidence"] = r.witness_t ? "witness" : "bounded-search";
    j["note"] = r.note;
    return j;
}

namespace {

using ZPoly = std::vector<mp::cpp_int>;

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    ZPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// y^2 = c3 U^3 + c2 U^2 + c1 U + c0  ->  Y^2 = V^3 + b V + c over Z.
IntPoly weierstrass(const ZPoly& c) {
    using R = mp::cpp_rational;
    R A = R(c[2]), B = R(c[1] * c[3]), C = R(c[0] * c[3] * c[3]);
    R p = B - A * A / 3;
    R q = 2 * A * A * A / 27 - A * B / 3 + C;
    R b = p * 81, cc = q * 729;
    if (mp::denominator(b) != 1 || mp::denominator(cc) != 1) fail(ErrorCode::InvalidArgument, "normalization failed");
    mp::cpp_int bi = mp::numerator(b), ci = mp::numerator(cc);
    auto fits = [](const mp::cpp_int& v) {
        return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
    };
    if (!fits(bi) || !fits(ci)) fail(ErrorCode::Overflow, "normalized cubic coefficients exceed 64 bits");
    return IntPoly({ci.convert_to<std::int64_t>(), bi.convert_to<std::int64_t>(), 0, 1});
}

}  // namespace

Prop81Result prop81_classify(const SeparablePoly& p) {
    if (p.degree() > 4)
        fail(ErrorCode::DegreeTooHigh, "classification needs at most 4 branch points (degree <= 4)");
    Prop81Result r{Prop81::NonParametric, "", branch_points(p), std::nullopt, std::nullopt};
    const auto& a = p.poly().coeffs();
    switch (p.degree()) {
    case 1:
        r.verdict = Prop81::Parametric;
        r.route = "two-rational-branch-points";
        break;
    case 2:
        if (r.branch.rational.size() == 2) {
            r.verdict = Prop81::Parametric;
            r.route = "degree-2-rational-split";
        } else {
            r.route = "degree-2-irrational-branch-points";
        }
        break;
    case 3:
        r.route = "elliptic-twists";
        r.normalized_cubic = weierstrass(ZPoly(a.begin(), a.end()));
        break;
    default:
        if (r.branch.rational.empty()) {
            r.route = "twisted-quartic";
            break;
        }
        {
            // T = (pU + 1) / (qU) sends U = infinity to the root p/q
            const Rat& root = r.branch.rational.front();
            r.moved_to_infinity = root;
            ZPoly lin{1, mp::cpp_int(static_cast<long long>(root.num))};
            ZPoly qu{0, mp::cpp_int(static_cast<long long>(root.den))};
            ZPoly acc(5);
            for (std::size_t i = 0; i <= 4; ++i) {
                ZPoly term{mp::cpp_int(p.poly()[i])};
                for (std::size_t k = 0; k < i; ++k) term = zmul(term, lin);
                for (std::size_t k = i; k < 4; ++k) term = zmul(term, qu);
                for (std::size_t k = 0; k < term.size() && k < acc.size(); ++k) acc[k] += term[k];
            }
            if (acc[4] != 0) fail(ErrorCode::InvalidArgument, "root transfer failed");
            acc.pop_back();
            r.route = "elliptic-twists-after-moving-root-to-infinity";
            r.normalized_cubic = weierstrass(acc);
        }
    }
    return r;
}

nlohmann::json to_json(const Prop81Result& r) {
    nlohmann::json j;
    j["verdict"] = r.verdict == Prop81::Parametric ? "Parametric" : "NonParametric";
    j["route"] = r.route;
    nlohmann::json b;
    b["rational"] = nlohmann::json::array();
    for (const auto& x : r.branch.rational) b["rational"].push_back(to_string(x));
    b["irrational_factor_degrees"] = r.branch.irrational;
    b["infinity"] = r.branch.infinity;
    b["count"] = r.branch.count();
    j["branch_points"] = b;
    if (r.normalized_cubic) j["normalized_cubic"] = r.normalized_cubic->to_string();
    if (r.moved_to_infinity) j["moved_to_infinity"] = to_string(*r.moved_to_infinity);
    return j;
}

}  // namespace paramaudit
