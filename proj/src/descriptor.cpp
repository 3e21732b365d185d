#include "paramaudit/descriptor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "paramaudit/error.hpp"
#include "paramaudit/numtheory.hpp"

namespace paramaudit {

GroupDescriptor GroupDescriptor::abelian(std::vector<std::uint64_t> invariants) {
    return {AbelianDesc{std::move(invariants)}};
}
GroupDescriptor GroupDescriptor::dihedral(std::uint64_t n) { return {DihedralDesc{n}}; }
GroupDescriptor GroupDescriptor::symmetric(std::uint64_t n) { return {SymmetricDesc{n}}; }
GroupDescriptor GroupDescriptor::alternating(std::uint64_t n) { return {AlternatingDesc{n}}; }
GroupDescriptor GroupDescriptor::gl(std::uint64_t n, std::uint64_t q) { return {GLDesc{n, q}}; }
GroupDescriptor GroupDescriptor::perm(std::size_t degree, std::vector<Perm> generators) {
    return {PermDesc{degree, std::move(generators)}};
}
GroupDescriptor GroupDescriptor::product(GroupDescriptor a, GroupDescriptor b) {
    return {ProductDesc{std::make_shared<const GroupDescriptor>(std::move(a)),
                        std::make_shared<const GroupDescriptor>(std::move(b))}};
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::InvalidDescriptor, msg); }

std::optional<std::uint64_t> mul_checked(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b) {
    if (!a || !b) return std::nullopt;
    std::uint64_t r;
    if (__builtin_mul_overflow(*a, *b, &r)) return std::nullopt;
    return r;
}

std::optional<std::uint64_t> factorial(std::uint64_t n) {
    std::optional<std::uint64_t> r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r = mul_checked(r, i);
    return r;
}

std::optional<std::uint64_t> ipow(std::uint64_t b, std::uint64_t e) {
    std::optional<std::uint64_t> r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul_checked(r, b);
    return r;
}

}  // namespace

void validate(const GroupDescriptor& d) {
    std::visit(overloaded{
                   [](const AbelianDesc& a) {
                       for (std::size_t i = 0; i < a.invariants.size(); ++i) {
                           if (a.invariants[i] < 2) bad("abelian invariant factors must be at least 2");
                           if (i > 0 && a.invariants[i] % a.invariants[i - 1] != 0)
                               bad("abelian invariant factors must form a divisibility chain");
                       }
                   },
                   [](const DihedralDesc& x) {
                       if (x.n < 1) bad("dihedral parameter must be at least 1");
                   },
                   [](const SymmetricDesc& x) {
                       if (x.n < 1) bad("symmetric degree must be at least 1");
                   },
                   [](const AlternatingDesc& x) {
                       if (x.n < 1) bad("alternating degree must be at least 1");
                   },
                   [](const GLDesc& x) {
                       if (x.n < 2) bad("GL dimension must be at least 2");
                       if (x.q < 2 || !nt::prime_power(x.q)) bad("GL field size must be a prime power");
                   },
                   [](const PermDesc& x) {
                       if (x.degree < 1) bad("permutation degree must be positive");
                       for (const Perm& g : x.generators)
                           if (g.degree() != x.degree) bad("generator degree mismatch");
                   },
                   [](const ProductDesc& x) {
                       validate(*x.first);
                       validate(*x.second);
                   },
               },
               d.value);
}

std::optional<std::uint64_t> declared_order(const GroupDescriptor& d) {
    return std::visit(
        overloaded{
            [](const AbelianDesc& a) -> std::optional<std::uint64_t> {
                std::optional<std::uint64_t> r = 1;
                for (auto x : a.invariants) r = mul_checked(r, x);
                return r;
            },
            [](const DihedralDesc& x) -> std::optional<std::uint64_t> { return mul_checked(2, x.n); },
            [](const SymmetricDesc& x) { return factorial(x.n); },
            [](const AlternatingDesc& x) -> std::optional<std::uint64_t> {
                if (x.n < 2) return 1;
                auto f = factorial(x.n);
                if (!f) return std::nullopt;
                return *f / 2;
            },
            [](const GLDesc& x) -> std::optional<std::uint64_t> {
                auto qn = ipow(x.q, x.n);
                if (!qn) return std::nullopt;
                std::optional<std::uint64_t> r = 1;
                for (std::uint64_t i = 0; i < x.n; ++i) r = mul_checked(r, *qn - *ipow(x.q, i));
                return r;
            },
            [](const PermDesc& x) -> std::optional<std::uint64_t> {
                PermGroup G(x.degree, x.generators);
                if (!G.enumerable()) return std::nullopt;
                return G.order();
            },
            [](const ProductDesc& x) { return mul_checked(declared_order(*x.first), declared_order(*x.second)); },
        },
        d.value);
}

namespace {

// F_q with elements 0..q-1 read as base-p digit vectors of polynomials in x
// modulo a monic irreducible of degree k.
struct FiniteField {
    std::uint64_t p = 0, q = 0;
    int k = 0;
    std::vector<std::uint32_t> add, mul;

    explicit FiniteField(std::uint64_t q_) : q(q_) {
        auto pk = *nt::prime_power(q_);
        p = pk.first;
        k = pk.second;
        std::vector<std::uint64_t> modulus = find_irreducible();
        add.resize(q * q);
        mul.resize(q * q);
        for (std::uint64_t a = 0; a < q; ++a)
            for (std::uint64_t b = 0; b < q; ++b) {
                auto da = digits(a), db = digits(b);
                std::vector<std::uint64_t> s(k), prod(2 * k, 0);
                for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                for (int i = 2 * k - 1; i >= k; --i) {
                    std::uint64_t c = prod[i];
                    if (!c) continue;
                    // x^k = -(modulus[0] + ... + modulus[k-1] x^(k-1))
                    for (int j = 0; j < k; ++j) prod[i - k + j] = (prod[i - k + j] + (p - modulus[j]) * c) % p;
                    prod[i] = 0;
                }
                add[a * q + b] = static_cast<std::uint32_t>(number(s));
                prod.resize(k);
                mul[a * q + b] = static_cast<std::uint32_t>(number(prod));
            }
    }

    std::vector<std::uint64_t> digits(std::uint64_t a) const {
        std::vector<std::uint64_t> d(k);
        for (int i = 0; i < k; ++i) {
            d[i] = a % p;
            a /= p;
        }
        return d;
    }

    std::uint64_t number(const std::vector<std::uint64_t>& d) const {
        std::uint64_t a = 0;
        for (int i = k - 1; i >= 0; --i) a = a * p + d[i];
        return a;
    }

    // Monic modulus coefficients m_0..m_{k-1} (x^k implicit); irreducible
    // when no monic polynomial of degree 1..k/2 divides it.
    std::vector<std::uint64_t> find_irreducible() const {
        std::uint64_t count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            std::vector<std::uint64_t> m(k + 1);
            std::uint64_t t = c;
            for (int i = 0; i < k; ++i) {
                m[i] = t % p;
                t /= p;
            }
            m[k] = 1;
            if (irreducible(m)) {
                m.pop_back();
                return m;
            }
        }
        fail(ErrorCode::InvalidDescriptor, "no irreducible polynomial found");
    }

    bool irreducible(const std::vector<std::uint64_t>& f) const {
        int deg = static_cast<int>(f.size()) - 1;
        for (int dd = 1; dd <= deg / 2; ++dd) {
            std::uint64_t count = 1;
            for (int i = 0; i < dd; ++i) count *= p;
            for (std::uint64_t c = 0; c < count; ++c) {
                std::vector<std::uint64_t> g(dd + 1);
                std::uint64_t t = c;
                for (int i = 0; i < dd; ++i) {
                    g[i] = t % p;
                    t /= p;
                }
                g[dd] = 1;
                std::vector<std::uint64_t> r(f);
                for (int i = deg; i >= dd; --i) {
                    std::uint64_t lead = r[i] % p;
                    if (!lead) continue;
                    for (int j = 0; j <= dd; ++j) r[i - dd + j] = (r[i - dd + j] + (p - g[j]) * lead) % p;
                }
                bool zero = true;
                for (int i = 0; i < dd; ++i)
                    if (r[i] % p) zero = false;
                if (zero) return false;
            }
        }
        return true;
    }

    std::uint32_t primitive_element() const {
        for (std::uint64_t a = 1; a < q; ++a) {
            std::uint64_t x = a, ord = 1;
            while (x != 1) {
                x = mul[x * q + a];
                ++ord;
            }
            if (ord == q - 1) return static_cast<std::uint32_t>(a);
        }
        return 1;
    }
};

PermGroup gl_group(std::uint64_t n, std::uint64_t q, GroupLimits limits) {
    FiniteField F(q);
    auto qn = *ipow(q, n);
    std::size_t degree = qn - 1;  // nonzero vectors, index = base-q number - 1
    auto vec = [&](std::uint64_t idx) {
        std::vector<std::uint32_t> v(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            v[i] = static_cast<std::uint32_t>(idx % q);
            idx /= q;
        }
        return v;
    };
    auto num = [&](const std::vector<std::uint32_t>& v) {
        std::uint64_t a = 0;
        for (std::uint64_t i = n; i-- > 0;) a = a * q + v[i];
        return a;
    };
    auto act = [&](const std::vector<std::vector<std::uint32_t>>& M) {
        std::vector<Point> img(degree);
        for (std::uint64_t x = 1; x < qn; ++x) {
            auto v = vec(x);
            std::vector<std::uint32_t> w(n, 0);
            for (std::uint64_t i = 0; i < n; ++i)
                for (std::uint64_t j = 0; j < n; ++j) w[i] = F.add[w[i] * q + F.mul[M[i][j] * q + v[j]]];
            img[x - 1] = static_cast<Point>(num(w) - 1);
        }
        return Perm(std::move(img));
    };
    auto identity = [&] {
        std::vector<std::vector<std::uint32_t>> M(n, std::vector<std::uint32_t>(n, 0));
        for (std::uint64_t i = 0; i < n; ++i) M[i][i] = 1;
        return M;
    };
    std::vector<Perm> gens;
    auto D = identity();
    D[0][0] = F.primitive_element();
    if (q > 2) gens.push_back(act(D));
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) {
            if (i == j) continue;
            auto T = identity();
            T[i][j] = 1;
            gens.push_back(act(T));
        }
    return PermGroup(degree, std::move(gens), limits);
}

Perm cycle_on(std::size_t degree, std::size_t start, std::size_t len) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    for (std::size_t i = 0; i < len; ++i) img[start + i] = static_cast<Point>(start + (i + 1) % len);
    return Perm(std::move(img));
}

void check_order_bound(const GroupDescriptor& d, const GroupLimits& limits) {
    auto o = declared_order(d);
    if (!o || *o > limits.enumeration)
        fail(ErrorCode::OrderTooLarge, "declared order of " + label(d) + " exceeds the enumeration bound " +
                                           std::to_string(limits.enumeration));
}

}  // namespace

PermGroup materialize(const GroupDescriptor& d, GroupLimits limits) {
    validate(d);
    if (!d.as<PermDesc>()) check_order_bound(d, limits);
    return std::visit(
        overloaded{
            [&](const AbelianDesc& a) {
                std::size_t degree = 0;
                for (auto x : a.invariants) degree += x;
                if (degree == 0) return PermGroup(1, {Perm(1)}, limits);
                std::vector<Perm> gens;
                std::size_t start = 0;
                for (auto x : a.invariants) {
                    gens.push_back(cycle_on(degree, start, x));
                    start += x;
                }
                return PermGroup(degree, std::move(gens), limits);
            },
            [&](const DihedralDesc& x) {
                if (x.n == 1) return PermGroup(2, {Perm(std::vector<Point>{1, 0})}, limits);
                if (x.n == 2)
                    return PermGroup(4, {Perm(std::vector<Point>{1, 0, 3, 2}), Perm(std::vector<Point>{2, 3, 0, 1})},
                                     limits);
                std::size_t n = x.n;
                std::vector<Point> refl(n);
                for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
                return PermGroup(n, {cycle_on(n, 0, n), Perm(std::move(refl))}, limits);
            },
            [&](const SymmetricDesc& x) {
                std::size_t n = x.n;
                if (n == 1) return PermGroup(1, {Perm(1)}, limits);
                if (n == 2) return PermGroup(2, {cycle_on(2, 0, 2)}, limits);
                return PermGroup(n, {cycle_on(n, 0, 2), cycle_on(n, 0, n)}, limits);
            },
            [&](const AlternatingDesc& x) {
                std::size_t n = x.n;
                if (n <= 2) return PermGroup(n, {Perm(n)}, limits);
                std::vector<Perm> gens{cycle_on(n, 0, 3)};
                if (n >= 4) gens.push_back(n % 2 ? cycle_on(n, 0, n) : cycle_on(n, 1, n - 1));
                return PermGroup(n, std::move(gens), limits);
            },
            [&](const GLDesc& x) { return gl_group(x.n, x.q, limits); },
            [&](const PermDesc& x) {
                std::vector<Perm> gens = x.generators;
                if (gens.empty()) gens.emplace_back(x.degree);
                PermGroup G(x.degree, std::move(gens), limits);
                G.table();
                return G;
            },
            [&](const ProductDesc& x) {
                PermGroup A = materialize(*x.first, limits), B = materialize(*x.second, limits);
                std::size_t da = A.degree(), db = B.degree();
                std::vector<Perm> gens;
                for (const Perm& g : A.generators()) {
                    std::vector<Point> img(da + db);
                    std::iota(img.begin(), img.end(), Point{0});
                    for (std::size_t i = 0; i < da; ++i) img[i] = g[i];
                    gens.emplace_back(std::move(img));
                }
                for (const Perm& g : B.generators()) {
                    std::vector<Point> img(da + db);
                    std::iota(img.begin(), img.end(), Point{0});
                    for (std::size_t i = 0; i < db; ++i) img[da + i] = static_cast<Point>(da + g[i]);
                    gens.emplace_back(std::move(img));
                }
                return PermGroup(da + db, std::move(gens), limits);
            },
        },
        d.value);
}

std::string label(const GroupDescriptor& d) {
    return std::visit(overloaded{
                          [](const AbelianDesc& a) -> std::string {
                              if (a.invariants.empty()) return "1";
                              std::string s;
                              for (std::size_t i = 0; i < a.invariants.size(); ++i) {
                                  if (i) s += " x ";
                                  s += "Z/" + std::to_string(a.invariants[i]);
                              }
                              return s;
                          },
                          [](const DihedralDesc& x) { return "D_" + std::to_string(x.n); },
                          [](const SymmetricDesc& x) { return "S_" + std::to_string(x.n); },
                          [](const AlternatingDesc& x) { return "A_" + std::to_string(x.n); },
                          [](const GLDesc& x) {
                              return "GL(" + std::to_string(x.n) + "," + std::to_string(x.q) + ")";
                          },
                          [](const PermDesc& x) { return "Perm(degree " + std::to_string(x.degree) + ")"; },
                          [](const ProductDesc& x) {
                              return "(" + label(*x.first) + ") x (" + label(*x.second) + ")";
                          },
                      },
                      d.value);
}

nlohmann::json to_json(const GroupDescriptor& d) {
    using nlohmann::json;
    return std::visit(overloaded{
                          [](const AbelianDesc& a) { return json{{"abelian", a.invariants}}; },
                          [](const DihedralDesc& x) { return json{{"dihedral", x.n}}; },
                          [](const SymmetricDesc& x) { return json{{"symmetric", x.n}}; },
                          [](const AlternatingDesc& x) { return json{{"alternating", x.n}}; },
                          [](const GLDesc& x) { return json{{"gl", {x.n, x.q}}}; },
                          [](const PermDesc& x) {
                              json gens = json::array();
                              for (const Perm& g : x.generators) gens.push_back(g.to_one_based());
                              return json{{"perm", {{"degree", x.degree}, {"generators", gens}}}};
                          },
                          [](const ProductDesc& x) {
                              return json{{"product", {to_json(*x.first), to_json(*x.second)}}};
                          },
                      },
                      d.value);
}

namespace {

std::uint64_t as_u64(const nlohmann::json& j, const char* what) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
        bad(std::string(what) + " must be a non-negative integer");
    return j.get<std::uint64_t>();
}

}  // namespace

GroupDescriptor descriptor_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.size() != 1) bad("group descriptor must be an object with one key");
    const auto& [key, v] = *j.items().begin();
    GroupDescriptor d;
    if (key == "abelian") {
        if (!v.is_array()) bad("abelian expects a list of invariant factors");
        std::vector<std::uint64_t> inv;
        for (const auto& x : v) inv.push_back(as_u64(x, "invariant factor"));
        d = GroupDescriptor::abelian(inv);
    } else if (key == "dihedral") {
        d = GroupDescriptor::dihedral(as_u64(v, "dihedral parameter"));
    } else if (key == "symmetric") {
        d = GroupDescriptor::symmetric(as_u64(v, "symmetric degree"));
    } else if (key == "alternating") {
        d = GroupDescriptor::alternating(as_u64(v, "alternating degree"));
    } else if (key == "gl") {
        if (!v.is_array() || v.size() != 2) bad("gl expects [n, q]");
        d = GroupDescriptor::gl(as_u64(v[0], "GL dimension"), as_u64(v[1], "GL field size"));
    } else if (key == "perm") {
        if (!v.is_object() || !v.contains("degree") || !v.contains("generators"))
            bad("perm expects {\"degree\":d,\"generators\":[...]}");
        std::size_t degree = as_u64(v["degree"], "degree");
        std::vector<Perm> gens;
        try {
            for (const auto& g : v["generators"]) {
                if (g.is_string()) {
                    gens.push_back(Perm::parse_cycles(degree, g.get<std::string>()));
                } else if (g.is_array()) {
                    auto imgs = g.get<std::vector<std::int64_t>>();
                    if (imgs.size() != degree) bad("image list length differs from degree");
                    gens.push_back(Perm::from_one_based(imgs));
                } else {
                    bad("generator must be an image list or cycle string");
                }
            }
        } catch (const Error& e) {
            if (e.code() == ErrorCode::InvalidDescriptor) throw;
            bad(e.what());
        }
        d = GroupDescriptor::perm(degree, std::move(gens));
    } else if (key == "product") {
        if (!v.is_array() || v.size() != 2) bad("product expects [desc, desc]");
        d = GroupDescriptor::product(descriptor_from_json(v[0]), descriptor_from_json(v[1]));
    } else {
        bad("unknown group descriptor kind '" + key + "'");
    }
    validate(d);
    return d;
}

GroupDescriptor parse_descriptor(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("group descriptor is not valid JSON: ") + e.what());
    }
    return descriptor_from_json(j);
}

std::vector<std::uint64_t> normalize_abelian(const std::vector<std::uint64_t>& cyclic_orders) {
    std::map<std::uint64_t, std::vector<std::uint64_t>> parts;
    for (std::uint64_t c : cyclic_orders) {
        if (c == 0) bad("cyclic order 0");
        for (auto [p, e] : nt::factorize(c)) parts[p].push_back(*ipow(p, e));
    }
    std::size_t m = 0;
    for (auto& [p, v] : parts) {
        std::sort(v.begin(), v.end());
        m = std::max(m, v.size());
    }
    std::vector<std::uint64_t> inv(m, 1);
    for (auto& [p, v] : parts)
        for (std::size_t i = 0; i < v.size(); ++i) inv[m - v.size() + i] *= v[i];
    return inv;
}

GroupDescriptor identify(const PermGroup& G) {
    std::size_t n = G.order();
    if (n == 1) return GroupDescriptor::abelian({});
    if (is_abelian(G)) return GroupDescriptor::abelian(abelian_invariants(G));
    const auto& ord = G.element_orders();
    if (n % 2 == 0 && n >= 6) {
        std::uint64_t m = n / 2;
        for (std::size_t r = 0; r < n; ++r) {
            if (ord[r] != m) continue;
            std::vector<std::uint8_t> in(n, 0);
            ElemId x = 0;
            for (std::uint64_t i = 0; i < m; ++i) {
                in[x] = 1;
                x = G.mul(x, static_cast<ElemId>(r));
            }
            bool ok = true;
            for (std::size_t y = 0; y < n && ok; ++y)
                if (!in[y] && ord[y] != 2) ok = false;
            if (ok) return GroupDescriptor::dihedral(m);
            break;  // for m >= 3 a dihedral group has a unique cyclic subgroup of order m
        }
    }
    if (n <= G.limits().brute_force) {
        std::uint64_t f = 1;
        for (std::uint64_t k = 1; k <= 12 && f <= n; ++k) {
            f *= k;
            if (f == n && k >= 3 && is_isomorphic(G, materialize(GroupDescriptor::symmetric(k), G.limits())))
                return GroupDescriptor::symmetric(k);
            if (f == 2 * n && k >= 4 &&
                is_isomorphic(G, materialize(GroupDescriptor::alternating(k), G.limits())))
                return GroupDescriptor::alternating(k);
        }
    }
    return GroupDescriptor::perm(G.degree(), G.generators());
}

}  // namespace paramaudit
