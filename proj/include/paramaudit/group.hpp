#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "paramaudit/perm.hpp"

namespace paramaudit {

struct GroupLimits {
    std::size_t enumeration = 10'000;
    std::size_t brute_force = 2'000;
};

using ElemId = std::uint32_t;

// Elements of a permutation group, sorted lexicographically by image list
// (so the identity is element 0) with a hash index for lookup.
class ElementTable {
public:
    static ElementTable enumerate(std::size_t degree, const std::vector<Perm>& generators,
                                  std::size_t bound);

    std::size_t degree() const { return degree_; }
    std::size_t size() const { return size_; }
    std::span<const Point> images(ElemId id) const {
        return {data_.data() + static_cast<std::size_t>(id) * degree_, degree_};
    }
    Perm perm(ElemId id) const;
    std::optional<ElemId> find(std::span<const Point> images) const;
    ElemId index_of(std::span<const Point> images) const;

private:
    void build_index();

    std::size_t degree_ = 0;
    std::size_t size_ = 0;
    std::vector<Point> data_;
    std::vector<std::uint32_t> slots_;  // element id + 1, 0 = empty
};

// A subset of a group's element table, kept both as sorted ids and as a bitset.
class Subset {
public:
    Subset() = default;
    Subset(std::size_t universe, std::vector<ElemId> members);
    static Subset from_bits(std::size_t universe, std::vector<std::uint64_t> bits);

    std::size_t universe() const { return universe_; }
    std::size_t size() const { return members_.size(); }
    bool contains(ElemId id) const { return (bits_[id >> 6] >> (id & 63)) & 1; }
    const std::vector<ElemId>& members() const { return members_; }
    const std::vector<std::uint64_t>& bits() const { return bits_; }
    bool is_subset_of(const Subset& other) const;

    bool operator==(const Subset& o) const { return universe_ == o.universe_ && bits_ == o.bits_; }
    bool operator<(const Subset& o) const;

private:
    std::size_t universe_ = 0;
    std::vector<ElemId> members_;
    std::vector<std::uint64_t> bits_;
};

struct ConjClass {
    Perm representative;
    ElemId representative_id = 0;
    std::uint64_t size = 0;
    std::uint64_t element_order = 0;
    std::uint64_t parent_order = 0;
};

struct ClassPartition {
    std::vector<ConjClass> classes;
    std::vector<std::uint32_t> class_of;  // element id -> class index
    std::vector<std::vector<ElemId>> members;
};

class PermGroup {
public:
    PermGroup(std::size_t degree, std::vector<Perm> generators, GroupLimits limits = {});

    std::size_t degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return generators_; }
    const GroupLimits& limits() const { return limits_; }

    // Lazily enumerated; throws OrderTooLarge past limits().enumeration.
    const ElementTable& table() const;
    std::size_t order() const { return table().size(); }
    bool enumerable() const;

    ElemId mul(ElemId a, ElemId b) const;
    ElemId inv(ElemId a) const;
    ElemId conj(ElemId g, ElemId x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    ElemId power(ElemId a, long long k) const;
    const std::vector<ElemId>& generator_ids() const;
    std::uint64_t element_order(ElemId a) const;
    const std::vector<std::uint64_t>& element_orders() const;
    const ClassPartition& class_partition() const;
    // Throws OrderTooLarge when the group exceeds limits().brute_force.
    void require_brute_force(const char* what) const;

private:
    struct State;
    std::size_t degree_;
    std::vector<Perm> generators_;
    GroupLimits limits_;
    std::shared_ptr<State> state_;
};

std::uint64_t element_order(const Perm& g);

Subset trivial_subgroup(const PermGroup& G);
Subset whole_group(const PermGroup& G);
Subset subset_of(const PermGroup& G, std::vector<ElemId> ids);
Subset generated_subgroup(const PermGroup& G, std::span<const ElemId> gens);
// A small generating set of the subgroup S (greedy, deterministic).
std::vector<ElemId> generating_set(const PermGroup& G, const Subset& S);
Subset normal_closure(const PermGroup& G, std::span<const ElemId> elems);
bool is_subgroup(const PermGroup& G, const Subset& S);
bool is_normal(const PermGroup& G, const Subset& S);
PermGroup subgroup_as_group(const PermGroup& G, const Subset& S);

std::vector<ConjClass> conjugacy_classes(const PermGroup& G);
ConjClass class_power(const ConjClass& C, long long i, const PermGroup& G);
std::size_t class_index(const PermGroup& G, const Perm& g);

// Brute-force normal subgroup lattice, bounded by limits().brute_force.
// max_count caps the lattice size (OrderTooLarge when exceeded).
std::vector<Subset> normal_subgroups(const PermGroup& G, std::size_t max_count = 200'000);
// Normal subgroups of exactly the given order, pruning the lattice walk to
// subgroups whose order divides it.
std::vector<Subset> normal_subgroups_of_order(const PermGroup& G, std::size_t order,
                                              std::size_t max_count = 200'000);

struct QuotientMap {
    PermGroup group;
    std::vector<std::uint32_t> coset_of;  // element id of G -> coset index
    std::vector<ElemId> coset_rep;
};
QuotientMap quotient_map(const PermGroup& G, const Subset& H);
PermGroup quotient(const PermGroup& G, const Subset& H);

bool is_abelian(const PermGroup& G);
bool is_cyclic(const PermGroup& G);
// Invariant factors d_1 | ... | d_m of an abelian group (empty for trivial).
std::vector<std::uint64_t> abelian_invariants(const PermGroup& G);
std::vector<std::uint64_t> invariants_from_order_counts(const std::vector<std::uint64_t>& orders);
Subset center(const PermGroup& G);
Subset derived_subgroup(const PermGroup& G);
Subset derived_subgroup_of(const PermGroup& G, const Subset& K);
std::vector<Subset> derived_series(const PermGroup& G);
bool is_solvable(const PermGroup& G);
bool is_solvable_subgroup(const PermGroup& G, const Subset& K);
// The subgroup generated by all squares; G / G^2 is elementary abelian of
// rank r and G has exactly 2^r - 1 subgroups of index 2.
Subset squares_subgroup(const PermGroup& G);
std::size_t index_two_subgroup_count(const PermGroup& G);

bool generates_maximal_cyclic(const PermGroup& G, ElemId g);
bool generates_maximal_cyclic(const PermGroup& G, const Perm& g);

std::optional<std::vector<ElemId>> find_isomorphism(const PermGroup& G1, const PermGroup& G2);
bool is_isomorphic(const PermGroup& G1, const PermGroup& G2);

struct FiberPower {
    PermGroup base;
    Subset kernel;
    std::size_t exponent;
    PermGroup product;
    Subset N;
    std::vector<Subset> N_i;
    bool quotients_by_N_i_isomorphic_to_base = false;
    bool quotient_by_N_isomorphic_to_base_quotient = false;
};
FiberPower fiber_power(const PermGroup& G, const Subset& H, std::size_t n);

}  // namespace paramaudit
