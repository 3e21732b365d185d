#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "paramaudit/group.hpp"

namespace paramaudit {

struct GroupDescriptor;

struct AbelianDesc {
    std::vector<std::uint64_t> invariants;  // d_1 | d_2 | ... ; empty = trivial
};
struct DihedralDesc {
    std::uint64_t n;
};
struct SymmetricDesc {
    std::uint64_t n;
};
struct AlternatingDesc {
    std::uint64_t n;
};
struct GLDesc {
    std::uint64_t n;
    std::uint64_t q;
};
struct PermDesc {
    std::size_t degree;
    std::vector<Perm> generators;
};
struct ProductDesc {
    std::shared_ptr<const GroupDescriptor> first;
    std::shared_ptr<const GroupDescriptor> second;
};

struct GroupDescriptor {
    std::variant<AbelianDesc, DihedralDesc, SymmetricDesc, AlternatingDesc, GLDesc, PermDesc, ProductDesc> value;

    static GroupDescriptor abelian(std::vector<std::uint64_t> invariants);
    static GroupDescriptor dihedral(std::uint64_t n);
    static GroupDescriptor symmetric(std::uint64_t n);
    static GroupDescriptor alternating(std::uint64_t n);
    static GroupDescriptor gl(std::uint64_t n, std::uint64_t q);
    static GroupDescriptor perm(std::size_t degree, std::vector<Perm> generators);
    static GroupDescriptor product(GroupDescriptor a, GroupDescriptor b);

    template <class T>
    const T* as() const { return std::get_if<T>(&value); }
};

// Throws InvalidDescriptor on a broken invariant.
void validate(const GroupDescriptor& d);
// Declared order, or nullopt when it does not fit in 64 bits.
std::optional<std::uint64_t> declared_order(const GroupDescriptor& d);
PermGroup materialize(const GroupDescriptor& d, GroupLimits limits = {});
std::string label(const GroupDescriptor& d);

nlohmann::json to_json(const GroupDescriptor& d);
GroupDescriptor descriptor_from_json(const nlohmann::json& j);
GroupDescriptor parse_descriptor(const std::string& text);

// Best-effort recognition of a small group: trivial, abelian, dihedral,
// symmetric, alternating; otherwise a Perm descriptor of the generators.
GroupDescriptor identify(const PermGroup& G);

// Invariant factors from any list of cyclic orders (e.g. [6, 4] -> [2, 12]).
std::vector<std::uint64_t> normalize_abelian(const std::vector<std::uint64_t>& cyclic_orders);

}  // namespace paramaudit
