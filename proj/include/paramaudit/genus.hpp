#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramaudit/descriptor.hpp"
#include "paramaudit/field.hpp"
#include "paramaudit/group.hpp"

namespace paramaudit {

struct RamificationType {
    std::uint64_t group_order = 1;
    std::vector<std::uint64_t> indices;  // kept sorted ascending

    RamificationType() = default;
    RamificationType(std::uint64_t order, std::vector<std::uint64_t> idx);
    bool operator==(const RamificationType&) const = default;
    bool operator<(const RamificationType& o) const {
        return std::tie(group_order, indices) < std::tie(o.group_order, o.indices);
    }
};

// Riemann-Hurwitz: 2g - 2 = -2|G| + sum |G|(1 - 1/e_i). Negative results mean
// no cover of that type exists. Throws NonIntegralGenus on odd 2g - 2.
std::int64_t rh_genus(const RamificationType& rt);

// All multisets from the allowed orders with 0 <= genus <= cap. The number of
// indices is bounded by 2 + 2|G|.
std::vector<RamificationType> enumerate_low_genus_types(std::uint64_t group_order,
                                                        const std::vector<std::uint64_t>& element_orders,
                                                        int cap);

// Those types carried by a generating tuple (g_1, ..., g_r) of G with
// g_1 ... g_r = 1 and ord(g_i) = e_i.
std::vector<RamificationType> realizable_low_genus_types(const PermGroup& G, int cap);
bool has_generating_tuple(const PermGroup& G, const std::vector<std::uint64_t>& orders);

std::vector<std::uint64_t> element_order_set(const PermGroup& G);

enum class GenusBound { AtLeastTwo, AtLeastOne, NoLowerBoundCertified };
std::string to_string(GenusBound b);

struct GenusReason {
    std::string rule;      // stable identifier
    std::string citation;  // e.g. "Prop 7.3(1)"
    std::string detail;
};

struct MinimalGenusVerdict {
    GenusBound bound = GenusBound::NoLowerBoundCertified;
    std::optional<GenusReason> reason;
    FieldContext field;
};

nlohmann::json to_json(const MinimalGenusVerdict& v);

// Structural facts the genus rules consult.
struct GroupFacts {
    std::uint64_t order = 1;
    bool solvable = true;
    bool abelian = true;
    std::vector<std::uint64_t> invariants;  // when abelian
    std::optional<std::uint64_t> dihedral;  // n with G = D_n (D_1 = Z/2, D_2 = (Z/2)^2)
    bool is_A4 = false, is_S4 = false, is_A5 = false;
    bool cyclic() const { return abelian && invariants.size() <= 1; }
    std::string basis;
};

GroupFacts group_facts(const PermGroup& G);
GroupFacts group_facts(const GroupDescriptor& d, GroupLimits limits = {});

MinimalGenusVerdict minimal_genus_lower_bound(const GroupFacts& facts, const FieldContext& fc);
MinimalGenusVerdict minimal_genus_lower_bound(const PermGroup& G, const FieldContext& fc);
MinimalGenusVerdict minimal_genus_lower_bound(const GroupDescriptor& d, const FieldContext& fc,
                                              GroupLimits limits = {});

bool at_least(GenusBound have, GenusBound need);

}  // namespace paramaudit
