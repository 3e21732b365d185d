#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramaudit/cycletype.hpp"
#include "paramaudit/descriptor.hpp"
#include "paramaudit/error.hpp"
#include "paramaudit/field.hpp"
#include "paramaudit/genus.hpp"
#include "paramaudit/group.hpp"

namespace paramaudit {

enum class Theorem { T32, T34, T34Addendum, T36, T37, T38 };
enum class Conclusion { NoFiniteOneParametricSet, NoParametricExtension };
enum class EvidenceRule { SolvableKernel, GARKernel, IndexTwoRegular, DirectFactor, UserAssertion };
enum class Justification { SolvableByShafarevich, Symmetric, Alternating, Abelian, RegularWlog, UserAsserted };
enum class OracleRule { AbelianAllClasses, SymmetricOddClasses, UserAssertion };

std::string to_string(Theorem t);
std::string to_string(Conclusion c);
std::string to_string(EvidenceRule r);
std::string to_string(Justification j);
std::string to_string(OracleRule r);
Theorem theorem_from_string(const std::string& s);
Conclusion conclusion_from_string(const std::string& s);
EvidenceRule evidence_rule_from_string(const std::string& s);
Justification justification_from_string(const std::string& s);
OracleRule oracle_rule_from_string(const std::string& s);

struct Assumption {
    std::string tag;
    std::string statement;
    bool operator==(const Assumption&) const = default;
};

// Condition (*) for (G, H): some G/H-extension of k embeds into infinitely
// many G-extensions.
struct EmbeddingEvidence {
    EvidenceRule rule = EvidenceRule::UserAssertion;
    // The realizability the rule needs: G itself for SolvableKernel and
    // DirectFactor, G/H for GARKernel.
    bool realizability = true;
    Justification justification = Justification::UserAsserted;
    nlohmann::json details = nlohmann::json::object();

    bool machine_verified() const {
        return rule != EvidenceRule::UserAssertion && justification != Justification::UserAsserted;
    }
};

struct InertiaRealizabilityOracle {
    OracleRule rule = OracleRule::UserAssertion;
    std::vector<std::string> scope;  // asserted class labels ("*" = all) for UserAssertion
};

// Evidence a caller may supply for what the tool cannot verify.
struct Assertions {
    std::optional<std::string> realizability;  // "user-asserted" or "regular-wlog"
    std::optional<std::string> embedding;      // justification for condition (*)
    std::optional<std::string> quadratic_embedding;
    struct Local {
        std::string rule;
        std::uint64_t ramification_index = 0;
        std::string primes;
    };
    std::optional<Local> local;
    std::optional<std::vector<std::string>> inertia;
};
Assertions assertions_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Assertions& a);

struct Certificate {
    GroupDescriptor group;
    FieldContext field;
    Theorem theorem = Theorem::T32;
    nlohmann::json witness;  // {"order", "generators", "descriptor"?}
    GroupDescriptor quotient;
    EmbeddingEvidence evidence;
    nlohmann::json genus_evidence;
    Conclusion conclusion = Conclusion::NoFiniteOneParametricSet;
    std::vector<Assumption> assumptions;
    std::vector<std::string> implied;
    bool uniformity_extension = false;  // the T3.2 route also gives Thms 5.4/5.5 under UC
};

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

struct Refusal {
    ErrorCode code = ErrorCode::InvalidArgument;
    std::string reason;
    nlohmann::json payload = nlohmann::json::object();
};
nlohmann::json to_json(const Refusal& r);

struct CheckResult {
    std::optional<Certificate> certificate;
    std::optional<Refusal> refusal;
    bool ok() const { return certificate.has_value(); }
};

// A materialized group together with the descriptor it came from (the
// descriptor lets S_n, A_n and abelian groups auto-justify realizability).
struct Audited {
    GroupDescriptor desc;
    PermGroup G;
    static Audited make(const GroupDescriptor& d, GroupLimits limits = {});
};

nlohmann::json subgroup_witness(const PermGroup& G, const Subset& H);
Subset subgroup_from_witness(const PermGroup& G, const nlohmann::json& w);

// PSL_2(p) membership test used for the GAR list: simple of order p(p^2-1)/2.
std::optional<std::uint64_t> psl2_prime(const PermGroup& H);
bool in_gar_list(const PermGroup& H, std::string* name = nullptr);

// Throws NoEvidence when neither built-in rule applies and nothing is asserted.
EmbeddingEvidence embedding_star_evidence(const Audited& A, const Subset& H, const FieldContext& fc,
                                          const Assertions& asserted = {});
// H = A_n in G = S_n, no enumeration.
EmbeddingEvidence embedding_star_evidence_symmetric(std::uint64_t n, const FieldContext& fc);

struct T32Options {
    std::optional<EmbeddingEvidence> evidence;
    // Replaces the quotient's group-level verdict, e.g. an extension-level
    // genus argument or an external fact; its assumptions are recorded.
    std::optional<nlohmann::json> genus_override;
    std::vector<Assumption> extra_assumptions;
};

CheckResult check_T32(const Audited& A, const Subset& H, const FieldContext& fc, const Assertions& asserted = {},
                      const T32Options& opt = {});
CheckResult check_T34(const Audited& A, const Subset& H, const FieldContext& fc, const Assertions& asserted = {},
                      const std::optional<EmbeddingEvidence>& evidence = std::nullopt);
CheckResult check_T36(const Audited& A, const Subset& H, const FieldContext& fc, const Assertions& asserted = {},
                      const std::vector<std::string>& hint = {});
CheckResult check_T36_symmetric(std::uint64_t n, const FieldContext& fc, const std::vector<CycleType>& hint = {});
CheckResult check_T37(const Audited& A, const Subset& H, const FieldContext& fc, const Assertions& asserted = {});
CheckResult check_T38(const Audited& A, const FieldContext& fc, const Assertions& asserted = {},
                      const std::vector<std::string>& hint = {});
CheckResult check_T38_symmetric(std::uint64_t n, const FieldContext& fc, const std::vector<CycleType>& hint = {});

// Label of a conjugacy class as used in certificates: the cycle type for
// S_n, coordinates for abelian descriptors, "#index" otherwise.
std::string class_label(const Audited& A, std::size_t class_index);

// Re-derives every machine-checkable claim of a certificate. Returns the
// list of problems (empty when the certificate re-validates).
std::vector<std::string> verify_certificate(const Certificate& c, GroupLimits limits = {});

}  // namespace paramaudit
