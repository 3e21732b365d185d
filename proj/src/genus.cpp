#include "paramaudit/genus.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "paramaudit/error.hpp"
#include "paramaudit/numtheory.hpp"

namespace paramaudit {

RamificationType::RamificationType(std::uint64_t order, std::vector<std::uint64_t> idx)
    : group_order(order), indices(std::move(idx)) {
    std::sort(indices.begin(), indices.end());
}

std::int64_t rh_genus(const RamificationType& rt) {
    std::int64_t n = static_cast<std::int64_t>(rt.group_order);
    if (n < 1) fail(ErrorCode::InvalidArgument, "group order must be positive");
    if (rt.indices.empty() && n != 1)
        fail(ErrorCode::InvalidArgument, "a non-trivial group has at least one branch point");
    std::int64_t twice = 2 - 2 * n;  // 2g = 2 - 2|G| + sum (|G| - |G|/e)
    for (std::uint64_t e : rt.indices) {
        if (e < 2 || rt.group_order % e != 0)
            fail(ErrorCode::InvalidArgument,
                 "ramification index " + std::to_string(e) + " must be at least 2 and divide the group order");
        twice += n - n / static_cast<std::int64_t>(e);
    }
    if (twice % 2 != 0) fail(ErrorCode::NonIntegralGenus, "2g - 2 is odd for this ramification type");
    return twice / 2;
}

std::vector<RamificationType> enumerate_low_genus_types(std::uint64_t group_order,
                                                        const std::vector<std::uint64_t>& element_orders,
                                                        int cap) {
    std::vector<RamificationType> out;
    if (group_order == 1) {
        out.emplace_back(1, std::vector<std::uint64_t>{});
        return out;
    }
    std::vector<std::uint64_t> orders;
    for (auto e : element_orders)
        if (e >= 2 && group_order % e == 0) orders.push_back(e);
    std::sort(orders.begin(), orders.end());
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    const std::int64_t n = static_cast<std::int64_t>(group_order);
    const std::size_t max_r = 2 + 2 * group_order;
    std::vector<std::uint64_t> cur;
    // twice = 2g for the current multiset; every index adds at least n/2.
    auto rec = [&](auto&& self, std::size_t from, std::int64_t twice) -> void {
        if (!cur.empty() && twice >= 0 && twice % 2 == 0 && twice / 2 <= cap) out.emplace_back(group_order, cur);
        if (cur.size() >= max_r) return;
        for (std::size_t i = from; i < orders.size(); ++i) {
            std::int64_t next = twice + n - n / static_cast<std::int64_t>(orders[i]);
            if (next > 2 * cap) break;  // contributions grow with e
            cur.push_back(orders[i]);
            self(self, i, next);
            cur.pop_back();
        }
    };
    rec(rec, 0, 2 - 2 * n);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint64_t> element_order_set(const PermGroup& G) {
    std::set<std::uint64_t> s;
    for (auto o : G.element_orders())
        if (o > 1) s.insert(o);
    return {s.begin(), s.end()};
}

bool has_generating_tuple(const PermGroup& G, const std::vector<std::uint64_t>& orders) {
    std::size_t n = G.order();
    if (orders.empty()) return n == 1;
    const auto& ord = G.element_orders();
    const auto& cp = G.class_partition();
    std::vector<std::vector<ElemId>> by_order(orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i)
        for (std::size_t x = 0; x < n; ++x)
            if (ord[x] == orders[i]) by_order[i].push_back(static_cast<ElemId>(x));
    std::vector<ElemId> tuple(orders.size());
    std::size_t r = orders.size();
    auto rec = [&](auto&& self, std::size_t i, ElemId prod) -> bool {
        if (i + 1 == r) {
            ElemId last = G.inv(prod);
            if (ord[last] != orders[i]) return false;
            tuple[i] = last;
            return generated_subgroup(G, tuple).size() == n;
        }
        for (ElemId x : by_order[i]) {
            // The first entry may be taken up to conjugacy.
            if (i == 0 && cp.classes[cp.class_of[x]].representative_id != x) continue;
            tuple[i] = x;
            if (self(self, i + 1, G.mul(prod, x))) return true;
        }
        return false;
    };
    return rec(rec, 0, 0);
}

std::vector<RamificationType> realizable_low_genus_types(const PermGroup& G, int cap) {
    std::vector<RamificationType> out;
    for (auto& rt : enumerate_low_genus_types(G.order(), element_order_set(G), cap))
        if (has_generating_tuple(G, rt.indices)) out.push_back(rt);
    return out;
}

std::string to_string(GenusBound b) {
    switch (b) {
        case GenusBound::AtLeastTwo: return "AtLeastTwo";
        case GenusBound::AtLeastOne: return "AtLeastOne";
        case GenusBound::NoLowerBoundCertified: return "NoLowerBoundCertified";
    }
    return "?";
}

bool at_least(GenusBound have, GenusBound need) {
    auto rank = [](GenusBound b) { return b == GenusBound::AtLeastTwo ? 2 : b == GenusBound::AtLeastOne ? 1 : 0; };
    return rank(have) >= rank(need);
}

nlohmann::json to_json(const MinimalGenusVerdict& v) {
    nlohmann::json j{{"bound", to_string(v.bound)}, {"field", to_json(v.field)}};
    if (v.reason)
        j["reason"] = {{"rule", v.reason->rule}, {"citation", v.reason->citation}, {"detail", v.reason->detail}};
    else
        j["reason"] = nullptr;
    return j;
}

namespace {

std::optional<std::uint64_t> dihedral_parameter(const PermGroup& G) {
    std::size_t n = G.order();
    if (is_abelian(G)) {
        auto inv = abelian_invariants(G);
        if (inv == std::vector<std::uint64_t>{2}) return 1;
        if (inv == std::vector<std::uint64_t>{2, 2}) return 2;
        return std::nullopt;
    }
    if (n < 6 || n % 2) return std::nullopt;
    auto id = identify(G);
    if (auto d = id.as<DihedralDesc>()) return d->n;
    return std::nullopt;
}

bool iso_to(const PermGroup& G, const GroupDescriptor& d, std::uint64_t order) {
    if (G.order() != order || G.order() > G.limits().brute_force) return false;
    return is_isomorphic(G, materialize(d, G.limits()));
}

}  // namespace

GroupFacts group_facts(const PermGroup& G) {
    GroupFacts f;
    f.order = G.order();
    f.abelian = is_abelian(G);
    f.solvable = f.abelian || is_solvable(G);
    if (f.abelian) f.invariants = abelian_invariants(G);
    f.dihedral = dihedral_parameter(G);
    if (!f.abelian) {
        f.is_A4 = iso_to(G, GroupDescriptor::alternating(4), 12);
        f.is_S4 = iso_to(G, GroupDescriptor::symmetric(4), 24);
        f.is_A5 = iso_to(G, GroupDescriptor::alternating(5), 60);
    }
    f.basis = "brute force on the materialized group";
    return f;
}

GroupFacts group_facts(const GroupDescriptor& d, GroupLimits limits) {
    validate(d);
    GroupFacts f;
    f.basis = "closed form for " + label(d);
    f.order = declared_order(d).value_or(0);
    if (auto a = d.as<AbelianDesc>()) {
        f.invariants = a->invariants;
        if (a->invariants == std::vector<std::uint64_t>{2}) f.dihedral = 1;
        if (a->invariants == std::vector<std::uint64_t>{2, 2}) f.dihedral = 2;
        return f;
    }
    if (auto x = d.as<DihedralDesc>()) {
        f.dihedral = x->n;
        if (x->n == 1) f.invariants = {2};
        else if (x->n == 2) f.invariants = {2, 2};
        else f.abelian = false;
        return f;
    }
    if (auto x = d.as<SymmetricDesc>()) {
        if (x->n <= 1) return f;
        if (x->n == 2) {
            f.invariants = {2};
            f.dihedral = 1;
            return f;
        }
        f.abelian = false;
        if (x->n == 3) f.dihedral = 3;
        if (x->n == 4) f.is_S4 = true;
        f.solvable = x->n <= 4;
        return f;
    }
    if (auto x = d.as<AlternatingDesc>()) {
        if (x->n <= 2) return f;
        if (x->n == 3) {
            f.invariants = {3};
            return f;
        }
        f.abelian = false;
        f.is_A4 = x->n == 4;
        f.is_A5 = x->n == 5;
        f.solvable = x->n == 4;
        return f;
    }
    if (auto x = d.as<GLDesc>()) {
        f.abelian = false;
        f.solvable = x->n == 2 && x->q <= 3;
        if (x->n == 2 && x->q == 2) f.dihedral = 3;  // GL(2,2) = S_3
        return f;
    }
    return group_facts(materialize(d, limits));
}

MinimalGenusVerdict minimal_genus_lower_bound(const GroupFacts& f, const FieldContext& fc) {
    validate(fc);
    MinimalGenusVerdict v;
    v.field = fc;
    auto fire = [&](GenusBound b, std::string rule, std::string citation, std::string detail) {
        v.bound = b;
        v.reason = GenusReason{std::move(rule), std::move(citation), std::move(detail)};
        return v;
    };
    if (f.order == 1) return v;
    if (f.abelian) {
        using V = std::vector<std::uint64_t>;
        const auto& inv = f.invariants;
        bool listed;
        if (fc.rational) {
            static const std::vector<V> q_list{{2}, {3}, {4}, {6}, {2, 2}, {2, 2, 2}};
            listed = std::find(q_list.begin(), q_list.end(), inv) != q_list.end();
        } else {
            static const std::vector<V> k_list{{2, 2}, {2, 4}, {3, 3}, {2, 2, 2}};
            listed = inv.size() == 1 || std::find(k_list.begin(), k_list.end(), inv) != k_list.end();
        }
        if (!listed)
            return fire(GenusBound::AtLeastTwo, "abelian-outside-genus-le-1-list",
                        fc.rational ? "Prop 7.4(2)" : "Prop 7.4(1)", "abelian group not in the list");
    }
    const bool even = f.order == 0 || f.order % 2 == 0;
    const bool is_Z3 = f.abelian && f.invariants == std::vector<std::uint64_t>{3};
    if (fc.rational && !(f.solvable && even) && !is_Z3)
        return fire(GenusBound::AtLeastTwo, "not-solvable-of-even-order-nor-Z3", "Prop 7.3(2)",
                    f.solvable ? "solvable of odd order and not Z/3" : "not solvable");
    if (!f.solvable && !f.is_A5)
        return fire(GenusBound::AtLeastTwo, "not-solvable-nor-A5", "Prop 7.3(1)", "not solvable and not A_5");
    if (f.order != 0 && std::gcd(f.order, std::uint64_t{6}) == 1) {
        if (!f.cyclic())
            return fire(GenusBound::AtLeastTwo, "order-coprime-to-6-not-cyclic", "Props 7.1(1), 7.2(1)",
                        "genus 0 forces a cyclic group and genus 1 an element of order 2, 3, 4 or 6");
        PrimeSet S = prime_set_S(fc);
        for (auto [p, e] : nt::factorize(f.order)) {
            if (std::find(S.primes.begin(), S.primes.end(), p) == S.primes.end())
                return fire(GenusBound::AtLeastTwo, "cyclic-coprime-to-6-prime-outside-S",
                            "Prop 7.1(1) + Branch Cycle Lemma",
                            "prime factor " + std::to_string(p) + " has [k(zeta_p):k] >= 3");
        }
    }
    const std::vector<std::uint64_t> small{2, 3, 4, 6};
    auto in_small = [&](std::uint64_t n) { return std::find(small.begin(), small.end(), n) != small.end(); };
    bool genus0;
    if (f.cyclic()) {
        genus0 = !fc.rational || in_small(f.order);
    } else if (f.dihedral) {
        genus0 = !fc.rational || in_small(*f.dihedral);
    } else {
        genus0 = f.is_A4 || f.is_S4 || (f.is_A5 && !fc.rational);
    }
    if (!genus0) {
        if (f.dihedral && fc.rational)
            return fire(GenusBound::AtLeastOne, "dihedral-outside-genus-0-list-over-Q", "Prop 7.1(2)",
                        "D_" + std::to_string(*f.dihedral) + " with n not in {1,2,3,4,6}");
        return fire(GenusBound::AtLeastOne, "outside-genus-0-list", fc.rational ? "Prop 7.1(2)" : "Prop 7.1(1)",
                    "group does not occur in the genus 0 list");
    }
    return v;
}

MinimalGenusVerdict minimal_genus_lower_bound(const PermGroup& G, const FieldContext& fc) {
    return minimal_genus_lower_bound(group_facts(G), fc);
}

MinimalGenusVerdict minimal_genus_lower_bound(const GroupDescriptor& d, const FieldContext& fc, GroupLimits limits) {
    return minimal_genus_lower_bound(group_facts(d, limits), fc);
}

}  // namespace paramaudit
