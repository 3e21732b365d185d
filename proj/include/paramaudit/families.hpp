#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramaudit/criteria.hpp"
#include "paramaudit/cycletype.hpp"
#include "paramaudit/descriptor.hpp"
#include "paramaudit/field.hpp"

namespace paramaudit {

struct FamilyVerdict {
    bool covered = false;
    std::string condition;  // citation tag of the first matching condition
    std::optional<Certificate> certificate;
    std::optional<nlohmann::json> exception;  // {"list": ..., "item": ...}
    std::vector<std::string> also_matches;
    nlohmann::json diagnostics = nlohmann::json::array();
};

nlohmann::json to_json(const FamilyVerdict& v);

struct ClassifyOptions {
    GroupLimits limits;
    // Stop after the first covering condition instead of testing the rest.
    bool first_only = false;
};

FamilyVerdict classify(const GroupDescriptor& desc, const FieldContext& fc, const ClassifyOptions& opt = {});

// Quotient of Z/d_1 x ... x Z/d_m together with its kernel, given by
// generators in coordinates.
struct AbelianQuotient {
    std::vector<std::uint64_t> chain;
    std::optional<std::vector<std::uint64_t>> quotient;
    std::vector<std::vector<std::uint64_t>> kernel;
    std::string condition;  // "Thm 5.1(3)" or "Thm 5.2(2)"
    std::string rule;
    std::optional<std::string> exception_k;  // matched item of the Thm 5.1(3) list
    std::optional<std::string> exception_q;  // matched item of the Thm 5.2(2) list
};
nlohmann::json to_json(const AbelianQuotient& q);

// Over a general field only the Thm 5.1(3) case split runs; over Q the
// Thm 5.2(2) analysis takes over for the groups excluded from Thm 5.1(3).
AbelianQuotient abelian_suitable_quotient(const std::vector<std::uint64_t>& chain, const FieldContext& fc);
// Target list of the case split: Z/n, (2,2), (2,4), (3,3), (2,2,2).
bool abelian_suitable(const std::vector<std::uint64_t>& quotient_chain);

// Invariant-factor chains of every abelian group of order n, sorted.
std::vector<std::vector<std::uint64_t>> abelian_groups_of_order(std::uint64_t n);

std::vector<CycleType> sn_select_classes(std::uint64_t n, std::size_t count);

struct GLCenterCheck {
    bool center_nontrivial = false;
    bool quotient_not_solvable_not_A5 = false;
    bool over_Q = false;
    bool brute_forced = false;  // closed form cross-checked on the materialized group
    bool brute_force_agrees = true;
};
GLCenterCheck gl_center_check(std::uint64_t n, std::uint64_t q, GroupLimits limits = {});
nlohmann::json to_json(const GLCenterCheck& g);

FamilyVerdict dihedral_analysis(std::uint64_t n, const FieldContext& fc, GroupLimits limits = {});
FamilyVerdict direct_product_rule(const GroupDescriptor& a, const GroupDescriptor& b, const FieldContext& fc,
                                  GroupLimits limits = {});

}  // namespace paramaudit
