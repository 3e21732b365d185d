#include "paramaudit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <limits>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "paramaudit/error.hpp"

namespace paramaudit {

namespace mp = boost::multiprecision;
using nt::i128;
using nt::u128;

namespace {

using QPoly = std::vector<mp::cpp_rational>;  // low degree first

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_q(const IntPoly& p) {
    QPoly q;
    for (auto c : p.coeffs()) q.emplace_back(c);
    return q;
}

QPoly rem(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size()) {
        mp::cpp_rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

QPoly quo(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {};
    QPoly q(a.size() - b.size() + 1);
    while (a.size() >= b.size()) {
        mp::cpp_rational f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    return q;
}

QPoly qgcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

mp::cpp_int eval_hom(const QPoly& p, const mp::cpp_int& a, const mp::cpp_int& b) {
    // p has integral coefficients here
    mp::cpp_int s = 0;
    std::size_t n = p.size() - 1;
    for (std::size_t i = 0; i <= n; ++i) {
        mp::cpp_int term = mp::numerator(p[i]);
        term *= mp::pow(a, static_cast<unsigned>(i));
        term *= mp::pow(b, static_cast<unsigned>(n - i));
        s += term;
    }
    return s;
}

// Scale to a primitive integer polynomial.
QPoly primitive(QPoly p) {
    trim(p);
    mp::cpp_int l = 1;
    for (const auto& c : p) l = mp::lcm(l, mp::denominator(c));
    mp::cpp_int g = 0;
    for (auto& c : p) {
        c *= l;
        g = mp::gcd(g, mp::numerator(c));
    }
    if (g != 0)
        for (auto& c : p) c /= g;
    return p;
}

std::vector<std::uint64_t> divisors_of(const mp::cpp_int& v) {
    mp::cpp_int a = mp::abs(v);
    if (a > std::numeric_limits<std::uint64_t>::max())
        fail(ErrorCode::FactorizationTooLarge, "coefficient too large for root search");
    return nt::divisors(a.convert_to<std::uint64_t>());
}

std::vector<Rat> q_rational_roots(QPoly p) {
    p = primitive(p);
    std::vector<Rat> roots;
    if (p.size() <= 1) return roots;
    std::size_t low = 0;
    while (p[low] == 0) ++low;
    if (low > 0) {
        roots.push_back(Rat{0, 1});
        p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
    }
    if (p.size() <= 1) return roots;
    auto num = divisors_of(mp::numerator(p.front()));
    auto den = divisors_of(mp::numerator(p.back()));
    for (auto a : num)
        for (auto b : den) {
            if (std::gcd(a, b) != 1) continue;
            for (int s : {1, -1}) {
                mp::cpp_int A = s * mp::cpp_int(a);
                if (eval_hom(p, A, mp::cpp_int(b)) == 0) roots.push_back(Rat::make(static_cast<i128>(s) * a, b));
            }
        }
    std::sort(roots.begin(), roots.end(), [](const Rat& x, const Rat& y) { return x.num * y.den < y.num * x.den; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// A quadratic factor of an integer quartic without rational roots, if any.
bool quartic_splits(const QPoly& r) {
    QPoly p = primitive(r);
    auto val = [&](long x) { return eval_hom(p, mp::cpp_int(x), mp::cpp_int(1)); };
    mp::cpp_int vm = val(-1), v0 = val(0), v1 = val(1);
    auto dm = divisors_of(vm), d0 = divisors_of(v0), d1 = divisors_of(v1);
    for (auto a : dm)
        for (int sa : {1, -1})
            for (auto c : d0)
                for (int sc : {1, -1})
                    for (auto b : d1) {
                        // g(-1) = sa*a, g(0) = sc*c, g(1) = b
                        mp::cpp_int gm = sa * mp::cpp_int(a), g0 = sc * mp::cpp_int(c), g1 = b;
                        mp::cpp_int twoA = gm + g1 - 2 * g0, twoB = g1 - gm;
                        if (twoA == 0 || (twoA & 1) != 0 || (twoB & 1) != 0) continue;
                        QPoly g{mp::cpp_rational(g0), mp::cpp_rational(twoB / 2), mp::cpp_rational(twoA / 2)};
                        if (rem(p, g).empty()) return true;
                    }
    return false;
}

}  // namespace

Rat Rat::make(i128 a, i128 b) {
    if (b == 0) {
        if (a == 0) fail(ErrorCode::InvalidArgument, "0/0 is not a rational");
        return infinity();
    }
    if (b < 0) {
        a = -a;
        b = -b;
    }
    i128 g = nt::gcd_signed(a, b);
    return {a / g, b / g};
}

u128 Rat::height() const { return std::max(nt::uabs(num), nt::uabs(den)); }

std::string to_string(const Rat& r) {
    if (r.is_infinity()) return "inf";
    if (r.den == 1) return nt::to_string(r.num);
    return nt::to_string(r.num) + "/" + nt::to_string(r.den);
}

Rat parse_rat(const std::string& text) {
    if (text == "inf" || text == "infinity") return Rat::infinity();
    auto slash = text.find('/');
    auto a = nt::parse_i128(text.substr(0, slash));
    std::optional<i128> b = i128{1};
    if (slash != std::string::npos) b = nt::parse_i128(text.substr(slash + 1));
    if (!a || !b || *b == 0) fail(ErrorCode::ParseError, "bad rational '" + text + "'");
    return Rat::make(*a, *b);
}

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

i128 IntPoly::homogeneous(i128 a, i128 b, std::size_t w) const {
    // Horner in a with powers of b carried alongside.
    i128 s = 0, bp = 1;
    for (std::size_t k = 0; k < w - degree(); ++k) bp = nt::checked_mul(bp, b);
    for (std::size_t i = c_.size(); i-- > 0;) {
        s = nt::checked_add(nt::checked_mul(s, a), nt::checked_mul(c_[i], bp));
        if (i > 0) bp = nt::checked_mul(bp, b);
    }
    return s;
}

IntPoly IntPoly::derivative() const {
    std::vector<std::int64_t> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<std::int64_t>(i));
    return IntPoly(std::move(d));
}

std::string IntPoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        std::int64_t c = c_[i];
        if (c == 0) continue;
        std::uint64_t m = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (m != 1 || i == 0) os << m;
        if (i > 0) os << "T";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

IntPoly parse_poly(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) fail(ErrorCode::ParseError, "empty polynomial");
    std::vector<std::int64_t> c;
    std::size_t i = 0;
    auto bad = [&] { fail(ErrorCode::ParseError, "bad polynomial '" + text + "'"); };
    auto number = [&](std::uint64_t& out) {
        std::size_t st = i;
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) bad();
            v = v * 10 + static_cast<std::uint64_t>(s[i++] - '0');
        }
        if (i > st) out = v;
        return i > st;
    };
    while (i < s.size()) {
        std::int64_t sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!c.empty() || i != 0) {
            bad();
        }
        std::uint64_t coef = 1;
        bool has_num = number(coef);
        if (has_num && i < s.size() && s[i] == '*') ++i;
        std::size_t power = 0;
        if (i < s.size() && (s[i] == 'T' || s[i] == 't' || s[i] == 'x' || s[i] == 'X')) {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::uint64_t e = 0;
                if (!number(e) || e > 64) bad();
                power = e;
            }
        } else if (!has_num) {
            bad();
        }
        if (coef > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) bad();
        if (c.size() <= power) c.resize(power + 1, 0);
        c[power] += sign * static_cast<std::int64_t>(coef);
    }
    return IntPoly(std::move(c));
}

IntPoly poly_from_coeffs(const std::string& csv) {
    std::vector<std::int64_t> c;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto v = nt::parse_i128(tok);
        if (!v || *v > std::numeric_limits<std::int64_t>::max() || *v < std::numeric_limits<std::int64_t>::min())
            fail(ErrorCode::ParseError, "bad coefficient '" + tok + "'");
        c.push_back(static_cast<std::int64_t>(*v));
    }
    return IntPoly(std::move(c));
}

bool is_separable(const IntPoly& p) {
    if (p.degree() == 0) return false;
    return qgcd(to_q(p), to_q(p.derivative())).size() == 1;
}

std::vector<Rat> rational_roots(const IntPoly& p) {
    if (p.is_zero()) fail(ErrorCode::InvalidArgument, "zero polynomial");
    return q_rational_roots(to_q(p));
}

std::vector<std::size_t> factor_degrees(const IntPoly& p) {
    if (p.degree() > 4) fail(ErrorCode::DegreeTooHigh, "factor_degrees supports degree <= 4");
    if (!is_separable(p)) fail(ErrorCode::NotSeparable, "polynomial is not separable");
    QPoly q = to_q(p);
    std::vector<std::size_t> out;
    for (const Rat& r : q_rational_roots(q)) {
        out.push_back(1);
        q = quo(q, QPoly{mp::cpp_rational(-static_cast<long long>(r.num), static_cast<long long>(r.den)) * 1,
                         mp::cpp_rational(1)});
    }
    std::size_t m = q.size() - 1;
    if (m == 4 && quartic_splits(q)) {
        out.push_back(2);
        out.push_back(2);
    } else if (m > 0) {
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace paramaudit
