#include "paramaudit/criteria.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "paramaudit/numtheory.hpp"

namespace paramaudit {

using namespace nt;

using nlohmann::json;

namespace {

template <class E, std::size_t N>
E from_table(const std::string& s, const std::pair<E, const char*> (&table)[N], const char* what) {
    for (auto& [e, name] : table)
        if (s == name) return e;
    fail(ErrorCode::ParseError, std::string("unknown ") + what + " '" + s + "'");
}

template <class E, std::size_t N>
std::string to_table(E e, const std::pair<E, const char*> (&table)[N]) {
    for (auto& [x, name] : table)
        if (x == e) return name;
    return "?";
}

const std::pair<Theorem, const char*> kTheorems[] = {
    {Theorem::T32, "T3.2"},   {Theorem::T34, "T3.4"}, {Theorem::T34Addendum, "T3.4addendum"},
    {Theorem::T36, "T3.6"},   {Theorem::T37, "T3.7"}, {Theorem::T38, "T3.8"},
};
const std::pair<Conclusion, const char*> kConclusions[] = {
    {Conclusion::NoFiniteOneParametricSet, "NoFiniteOneParametricSet"},
    {Conclusion::NoParametricExtension, "NoParametricExtension"},
};
const std::pair<EvidenceRule, const char*> kRules[] = {
    {EvidenceRule::SolvableKernel, "SolvableKernel"}, {EvidenceRule::GARKernel, "GARKernel"},
    {EvidenceRule::IndexTwoRegular, "IndexTwoRegular"}, {EvidenceRule::DirectFactor, "DirectFactor"},
    {EvidenceRule::UserAssertion, "UserAssertion"},
};
const std::pair<Justification, const char*> kJustifications[] = {
    {Justification::SolvableByShafarevich, "solvable-by-Shafarevich"},
    {Justification::Symmetric, "symmetric"},
    {Justification::Alternating, "alternating"},
    {Justification::Abelian, "abelian"},
    {Justification::RegularWlog, "regular-wlog"},
    {Justification::UserAsserted, "user-asserted"},
};
const std::pair<OracleRule, const char*> kOracles[] = {
    {OracleRule::AbelianAllClasses, "AbelianAllClasses"},
    {OracleRule::SymmetricOddClasses, "SymmetricOddClasses"},
    {OracleRule::UserAssertion, "UserAssertion"},
};

}  // namespace

std::string to_string(Theorem t) { return to_table(t, kTheorems); }
std::string to_string(Conclusion c) { return to_table(c, kConclusions); }
std::string to_string(EvidenceRule r) { return to_table(r, kRules); }
std::string to_string(Justification j) { return to_table(j, kJustifications); }
std::string to_string(OracleRule r) { return to_table(r, kOracles); }
Theorem theorem_from_string(const std::string& s) { return from_table(s, kTheorems, "theorem"); }
Conclusion conclusion_from_string(const std::string& s) { return from_table(s, kConclusions, "conclusion"); }
EvidenceRule evidence_rule_from_string(const std::string& s) { return from_table(s, kRules, "evidence rule"); }
Justification justification_from_string(const std::string& s) {
    return from_table(s, kJustifications, "justification");
}
OracleRule oracle_rule_from_string(const std::string& s) { return from_table(s, kOracles, "oracle rule"); }

Assertions assertions_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorCode::ParseError, "assertions must be a JSON object");
    Assertions a;
    try {
        if (j.contains("realizability")) {
            a.realizability = j.at("realizability").get<std::string>();
            if (*a.realizability != "user-asserted" && *a.realizability != "regular-wlog")
                fail(ErrorCode::ParseError, "realizability must be 'user-asserted' or 'regular-wlog'");
        }
        if (j.contains("embedding")) a.embedding = j.at("embedding").get<std::string>();
        if (j.contains("quadratic_embedding")) a.quadratic_embedding = j.at("quadratic_embedding").get<std::string>();
        if (j.contains("local")) {
            const json& l = j.at("local");
            a.local = Assertions::Local{l.value("rule", std::string("user-asserted")),
                                        l.at("ramification_index").get<std::uint64_t>(),
                                        l.value("primes", std::string())};
        }
        if (j.contains("inertia")) a.inertia = j.at("inertia").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("bad assertions: ") + e.what());
    }
    return a;
}

json to_json(const Assertions& a) {
    json j = json::object();
    if (a.realizability) j["realizability"] = *a.realizability;
    if (a.embedding) j["embedding"] = *a.embedding;
    if (a.quadratic_embedding) j["quadratic_embedding"] = *a.quadratic_embedding;
    if (a.local)
        j["local"] = {{"rule", a.local->rule},
                      {"ramification_index", a.local->ramification_index},
                      {"primes", a.local->primes}};
    if (a.inertia) j["inertia"] = *a.inertia;
    return j;
}

json to_json(const Certificate& c) {
    json as = json::array();
    for (auto& a : c.assumptions) as.push_back({{"tag", a.tag}, {"statement", a.statement}});
    return {
        {"group", to_json(c.group)},
        {"group_label", label(c.group)},
        {"field", to_json(c.field)},
        {"theorem", to_string(c.theorem)},
        {"witness", c.witness},
        {"quotient", to_json(c.quotient)},
        {"quotient_label", label(c.quotient)},
        {"evidence",
         {{"rule", to_string(c.evidence.rule)},
          {"realizability", c.evidence.realizability},
          {"justification", to_string(c.evidence.justification)},
          {"details", c.evidence.details}}},
        {"genus_evidence", c.genus_evidence},
        {"conclusion", to_string(c.conclusion)},
        {"assumptions", as},
        {"implied", c.implied},
        {"uniformity_extension", c.uniformity_extension},
    };
}

Certificate certificate_from_json(const json& j) {
    try {
        Certificate c;
        c.group = descriptor_from_json(j.at("group"));
        c.field = field_from_json(j.at("field"));
        c.theorem = theorem_from_string(j.at("theorem").get<std::string>());
        c.witness = j.at("witness");
        c.quotient = descriptor_from_json(j.at("quotient"));
        const json& e = j.at("evidence");
        c.evidence.rule = evidence_rule_from_string(e.at("rule").get<std::string>());
        c.evidence.realizability = e.at("realizability").get<bool>();
        c.evidence.justification = justification_from_string(e.at("justification").get<std::string>());
        c.evidence.details = e.at("details");
        c.genus_evidence = j.at("genus_evidence");
        c.conclusion = conclusion_from_string(j.at("conclusion").get<std::string>());
        for (auto& a : j.at("assumptions"))
            c.assumptions.push_back({a.at("tag").get<std::string>(), a.at("statement").get<std::string>()});
        c.implied = j.at("implied").get<std::vector<std::string>>();
        c.uniformity_extension = j.at("uniformity_extension").get<bool>();
        return c;
    } catch (const json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("bad certificate: ") + ex.what());
    }
}

json to_json(const Refusal& r) {
    return {{"refused", true},
            {"code", std::string(error_code_name(r.code))},
            {"reason", r.reason},
            {"payload", r.payload}};
}

Audited Audited::make(const GroupDescriptor& d, GroupLimits limits) { return {d, materialize(d, limits)}; }

json subgroup_witness(const PermGroup& G, const Subset& H) {
    json gens = json::array();
    for (ElemId g : generating_set(G, H)) gens.push_back(G.table().perm(g).to_cycle_string());
    json w{{"order", H.size()}, {"degree", G.degree()}, {"generators", gens}};
    if (H.size() <= G.limits().brute_force) {
        GroupDescriptor d = identify(subgroup_as_group(G, H));
        if (!d.as<PermDesc>()) {
            w["descriptor"] = to_json(d);
            w["label"] = label(d);
        }
    }
    return w;
}

Subset subgroup_from_witness(const PermGroup& G, const json& w) {
    std::vector<ElemId> ids;
    try {
        for (auto& g : w.at("generators")) {
            Perm p = Perm::parse_cycles(G.degree(), g.get<std::string>());
            auto id = G.table().find(p.images());
            if (!id) fail(ErrorCode::InvalidArgument, "witness generator " + g.get<std::string>() + " not in G");
            ids.push_back(*id);
        }
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("bad witness: ") + e.what());
    }
    Subset H = generated_subgroup(G, ids);
    if (w.contains("order") && w.at("order").is_number() && w.at("order").get<std::size_t>() != H.size())
        fail(ErrorCode::InvalidArgument, "witness order does not match its generators");
    return H;
}

namespace {

Certificate base_certificate(const Audited& A, const FieldContext& fc, Theorem t) {
    Certificate c;
    c.group = A.desc;
    c.field = fc;
    c.theorem = t;
    return c;
}

bool natural_symmetric(const GroupDescriptor& d) { return d.as<SymmetricDesc>() != nullptr; }

// Realizability of G over k when it follows from the group's structure.
std::optional<Justification> auto_justify(const GroupDescriptor& d, const PermGroup& G) {
    if (d.as<AbelianDesc>()) return Justification::Abelian;
    if (d.as<SymmetricDesc>()) return Justification::Symmetric;
    if (d.as<AlternatingDesc>()) return Justification::Alternating;
    if (is_abelian(G)) return Justification::Abelian;
    if (is_solvable(G)) return Justification::SolvableByShafarevich;
    if (G.order() <= G.limits().brute_force) {
        GroupDescriptor id = identify(G);
        if (id.as<SymmetricDesc>()) return Justification::Symmetric;
        if (id.as<AlternatingDesc>()) return Justification::Alternating;
    }
    return std::nullopt;
}

std::optional<Justification> asserted_justification(const Assertions& a) {
    if (!a.realizability) return std::nullopt;
    return *a.realizability == "regular-wlog" ? Justification::RegularWlog : Justification::UserAsserted;
}

void add_assumption(std::vector<Assumption>& as, Assumption a) {
    if (std::find(as.begin(), as.end(), a) == as.end()) as.push_back(std::move(a));
}

// Assumptions implied by an embedding-evidence record.
void evidence_assumptions(const EmbeddingEvidence& e, const FieldContext& fc, std::vector<Assumption>& as) {
    switch (e.justification) {
        case Justification::UserAsserted:
            add_assumption(as, {"realizability", e.rule == EvidenceRule::GARKernel
                                                     ? "G/H is a Galois group over k (user-asserted)"
                                                     : "G is a Galois group over k (user-asserted)"});
            break;
        case Justification::RegularWlog:
            add_assumption(as, {"regular-wlog",
                                "G is taken to be a regular Galois group over k; otherwise the conclusion holds "
                                "vacuously"});
            break;
        default:
            break;
    }
    if (e.rule == EvidenceRule::UserAssertion)
        add_assumption(as, {"embedding", "condition (*) asserted by the caller: " +
                                             e.details.value("assertion", std::string())});
    if (e.rule == EvidenceRule::IndexTwoRegular) {
        add_assumption(as, {"cited-realization",
                            "a regular S_n-realization with inertia invariant " +
                                e.details.value("inertia", std::string()) + " exists (cited, not constructed)"});
        if (!fc.rational)
            add_assumption(as, {"field-transfer",
                                "the index-2 criterion instance, stated over Q, is used over k"});
    }
}

std::uint64_t factorial_u64(std::uint64_t n) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

std::optional<std::uint64_t> alternating_degree(const GroupDescriptor& d, std::uint64_t order) {
    if (auto s = d.as<SymmetricDesc>())
        if (s->n >= 2 && s->n <= 20 && order == factorial_u64(s->n) / 2) return s->n;
    if (auto a = d.as<AlternatingDesc>())
        if (a->n <= 20 && order == factorial_u64(a->n) / 2) return a->n;
    return std::nullopt;
}

bool gar_alternating(std::uint64_t n) { return n != 1 && n != 2 && n != 3 && n != 4 && n != 6; }

}  // namespace

std::optional<std::uint64_t> psl2_prime(const PermGroup& H) {
    std::uint64_t o = H.order();
    for (std::uint64_t p = 5; p * (p * p - 1) / 2 <= o; ++p) {
        if (!is_prime(p) || p * (p * p - 1) / 2 != o) continue;
        if (o > H.limits().brute_force) return std::nullopt;
        if (normal_subgroups(H).size() == 2) return p;
    }
    return std::nullopt;
}

bool in_gar_list(const PermGroup& H, std::string* name) {
    if (H.order() <= H.limits().brute_force) {
        GroupDescriptor d = identify(H);
        if (auto a = d.as<AlternatingDesc>(); a && gar_alternating(a->n)) {
            if (name) *name = "A_" + std::to_string(a->n);
            return true;
        }
    }
    if (auto p = psl2_prime(H)) {
        std::uint64_t r = *p % 24;
        if (r != 1 && r != 23) {
            if (name) *name = "PSL_2(" + std::to_string(*p) + ")";
            return true;
        }
    }
    return false;
}

EmbeddingEvidence embedding_star_evidence(const Audited& A, const Subset& H, const FieldContext& fc,
                                          const Assertions& asserted) {
    validate(fc);
    const PermGroup& G = A.G;
    if (H.size() <= 1) fail(ErrorCode::InvalidArgument, "condition (*) needs a non-trivial kernel");
    if (!is_normal(G, H)) fail(ErrorCode::NotNormal, "kernel is not normal");
    auto jG = auto_justify(A.desc, G);
    if (!jG) jG = asserted_justification(asserted);

    EmbeddingEvidence e;
    if (is_solvable_subgroup(G, H) && jG) {
        e.rule = EvidenceRule::SolvableKernel;
        e.justification = *jG;
        e.details = {{"kernel_order", H.size()}, {"kernel_solvable", true}, {"citation", "Prop 4.1(1)"}};
        return e;
    }

    std::string name;
    bool gar = false;
    if (auto n = alternating_degree(A.desc, H.size()); n && gar_alternating(*n)) {
        gar = true;
        name = "A_" + std::to_string(*n);
    } else if (!is_solvable_subgroup(G, H)) {
        gar = in_gar_list(subgroup_as_group(G, H), &name);
    }
    if (gar) {
        PermGroup Q = quotient(G, H);
        auto jQ = auto_justify(identify(Q), Q);
        if (!jQ) jQ = asserted_justification(asserted);
        if (jQ) {
            e.rule = EvidenceRule::GARKernel;
            e.justification = *jQ;
            e.details = {{"kernel", name}, {"citation", "Prop 4.3"}, {"realizability_of", "G/H"}};
            return e;
        }
    }

    if (auto s = A.desc.as<SymmetricDesc>(); s && s->n >= 5 && G.order() == 2 * H.size()) {
        std::uint64_t n = s->n;
        e.rule = EvidenceRule::IndexTwoRegular;
        e.justification = Justification::Symmetric;
        e.details = {{"citation", "Prop 4.4"},
                     {"inertia", "([1^" + std::to_string(n - 2) + " 2^1], [1^1 " + std::to_string(n - 1) + "^1], [" +
                                     std::to_string(n) + "^1])"},
                     {"genus", rh_genus(RamificationType(factorial_u64(n), {2, n - 1, n}))},
                     {"even_order_classes", 2}};
        return e;
    }

    if (asserted.embedding) {
        e.rule = EvidenceRule::UserAssertion;
        e.justification = jG.value_or(Justification::UserAsserted);
        e.details = {{"assertion", *asserted.embedding}};
        return e;
    }
    fail(ErrorCode::NoEvidence, is_solvable_subgroup(G, H)
                                    ? "kernel is solvable but realizability of G over k is not justified"
                                    : "kernel is neither solvable nor in the GAR list; supply an assertion");
}

EmbeddingEvidence embedding_star_evidence_symmetric(std::uint64_t n, const FieldContext& fc) {
    validate(fc);
    if (n < 2) fail(ErrorCode::InvalidArgument, "S_n with n >= 2 required");
    EmbeddingEvidence e;
    e.justification = Justification::Symmetric;
    if (n <= 4) {
        e.rule = EvidenceRule::SolvableKernel;
        e.details = {{"kernel", "A_" + std::to_string(n)}, {"kernel_solvable", true}, {"citation", "Prop 4.1(1)"}};
    } else if (gar_alternating(n)) {
        e.rule = EvidenceRule::GARKernel;
        e.justification = Justification::Abelian;  // G/H = Z/2
        e.details = {{"kernel", "A_" + std::to_string(n)}, {"citation", "Prop 4.3"}, {"realizability_of", "G/H"}};
    } else {
        e.rule = EvidenceRule::IndexTwoRegular;
        std::string inertia = "([1^" + std::to_string(n - 2) + " 2^1], [1^1 " + std::to_string(n - 1) + "^1], [" +
                              std::to_string(n) + "^1])";
        std::int64_t g = n <= 20 ? rh_genus(RamificationType(factorial_u64(n), {2, n - 1, n})) : -1;
        e.details = {{"citation", "Prop 4.4"}, {"inertia", inertia}, {"even_order_classes", 2}};
        if (g >= 0) e.details["genus"] = g;
    }
    return e;
}

namespace {

Refusal refuse(ErrorCode code, std::string reason, json payload = json::object()) {
    return {code, std::move(reason), std::move(payload)};
}

CheckResult refused(ErrorCode code, std::string reason, json payload = json::object()) {
    CheckResult r;
    r.refusal = refuse(code, std::move(reason), std::move(payload));
    return r;
}

CheckResult accepted(Certificate c) {
    CheckResult r;
    r.certificate = std::move(c);
    return r;
}

std::optional<Refusal> check_kernel(const PermGroup& G, const Subset& H) {
    if (H.size() <= 1 || H.size() >= G.order())
        return refuse(ErrorCode::InvalidArgument, "H must be a non-trivial proper subgroup");
    if (!is_subgroup(G, H) || !is_normal(G, H)) return refuse(ErrorCode::NotNormal, "H is not a normal subgroup");
    return std::nullopt;
}

// All normal H' with G/H' isomorphic to G/H (H first). Empty when the
// lattice is beyond the brute-force bound.
std::optional<std::vector<Subset>> isomorphic_kernels(const PermGroup& G, const Subset& H) {
    try {
        PermGroup Q = quotient(G, H);
        std::vector<Subset> out{H};
        for (Subset& K : normal_subgroups_of_order(G, H.size())) {
            if (K == H) continue;
            if (is_isomorphic(quotient(G, K), Q)) out.push_back(std::move(K));
        }
        return out;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::OrderTooLarge) return std::nullopt;
        throw;
    }
}

// ---- class search ----------------------------------------------------------

struct ClassInfo {
    std::string label;
    std::uint64_t order = 1;
    std::uint64_t size = 0;  // 0 = beyond 64 bits
    std::string representative;
    bool maximal = false;
    bool odd = false;
};

struct ClassModel {
    std::vector<ClassInfo> classes;
    std::function<bool(std::size_t, std::size_t)> is_power_of;  // C_i is a power of C_j
};

struct KernelModel {
    json witness;
    std::function<bool(std::size_t)> outside;
};

ClassModel materialized_model(const Audited& A) {
    const PermGroup& G = A.G;
    const auto& part = G.class_partition();
    ClassModel m;
    for (std::size_t i = 0; i < part.classes.size(); ++i) {
        const ConjClass& c = part.classes[i];
        m.classes.push_back({class_label(A, i), c.element_order, c.size, c.representative.to_cycle_string(),
                             generates_maximal_cyclic(G, c.representative_id), c.representative.sign() < 0});
    }
    auto cache = std::make_shared<std::map<std::size_t, std::set<std::size_t>>>();
    const PermGroup* Gp = &A.G;
    m.is_power_of = [cache, Gp](std::size_t i, std::size_t j) {
        auto it = cache->find(j);
        if (it == cache->end()) {
            const auto& part = Gp->class_partition();
            ElemId r = part.classes[j].representative_id;
            std::set<std::size_t> s;
            ElemId x = 0;
            for (std::uint64_t k = 0; k < part.classes[j].element_order; ++k) {
                s.insert(part.class_of[x]);
                x = Gp->mul(x, r);
            }
            it = cache->emplace(j, std::move(s)).first;
        }
        return it->second.count(i) > 0;
    };
    return m;
}

Perm perm_of_type(const CycleType& t) {
    std::size_t n = type_degree(t);
    std::vector<std::vector<Point>> cycles;
    Point next = 0;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        std::vector<Point> c;
        for (std::size_t i = 0; i < *it; ++i) c.push_back(next++);
        if (c.size() > 1) cycles.push_back(std::move(c));
    }
    return Perm::from_cycles(n, cycles);
}

ClassModel symmetric_model(const std::vector<CycleType>& types) {
    ClassModel m;
    for (const CycleType& t : types) {
        std::uint64_t size = 0;
        try {
            size = type_class_size(t);
        } catch (const Error&) {
        }
        m.classes.push_back({type_label(t), type_order(t), size, perm_of_type(t).to_cycle_string(),
                             type_maximal_cyclic(t), type_sign(t) < 0});
    }
    m.is_power_of = [types](std::size_t i, std::size_t j) { return type_is_power_of(types[i], types[j]); };
    return m;
}

bool oracle_covers(const InertiaRealizabilityOracle& o, const ClassInfo& c, bool abelian) {
    switch (o.rule) {
        case OracleRule::AbelianAllClasses: return abelian && c.order > 1;
        case OracleRule::SymmetricOddClasses: return c.odd;
        case OracleRule::UserAssertion:
            for (auto& s : o.scope)
                if (s == "*" || s == c.label) return true;
            return false;
    }
    return false;
}

json oracle_json(const InertiaRealizabilityOracle& o) {
    json j{{"rule", to_string(o.rule)}};
    if (o.rule == OracleRule::AbelianAllClasses) j["citation"] = "Lemma 6.4";
    if (o.rule == OracleRule::SymmetricOddClasses) j["citation"] = "Lemma 6.7";
    if (o.rule == OracleRule::UserAssertion) j["scope"] = o.scope;
    return j;
}

InertiaRealizabilityOracle choose_oracle(const GroupDescriptor& d, bool abelian, const Assertions& a) {
    if (abelian) return {OracleRule::AbelianAllClasses, {}};
    if (natural_symmetric(d)) return {OracleRule::SymmetricOddClasses, {}};
    return {OracleRule::UserAssertion, a.inertia.value_or(std::vector<std::string>{})};
}

enum class Arity { Five, Three, Cyclic2 };

struct SearchOutcome {
    std::optional<std::vector<std::size_t>> found;
    bool exhausted_budget = false;
};

// Candidates in order of element order descending, then class index.
SearchOutcome search(const ClassModel& m, std::vector<std::size_t> cand, Arity arity) {
    std::stable_sort(cand.begin(), cand.end(),
                     [&](std::size_t a, std::size_t b) { return m.classes[a].order > m.classes[b].order; });
    SearchOutcome out;
    if (arity == Arity::Three || arity == Arity::Cyclic2) {
        if (cand.size() >= 3) {
            out.found = std::vector<std::size_t>(cand.begin(), cand.begin() + 3);
            return out;
        }
        if (arity == Arity::Cyclic2)
            for (std::size_t a : cand)
                for (std::size_t b : cand)
                    if (a != b && m.is_power_of(b, a)) {
                        out.found = std::vector<std::size_t>{a, b};
                        return out;
                    }
        return out;
    }
    std::size_t budget = 5'000'000;
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t from) {
        if (pick.size() == 5) return true;
        for (std::size_t i = from; i < cand.size(); ++i) {
            if (cand.size() - i < 5 - pick.size()) return false;
            if (budget-- == 0) {
                out.exhausted_budget = true;
                return false;
            }
            std::size_t c = cand[i];
            bool ok = true;
            for (std::size_t p : pick)
                if (m.is_power_of(c, p) || m.is_power_of(p, c)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            pick.push_back(c);
            if (rec(i + 1)) return true;
            pick.pop_back();
            if (out.exhausted_budget) return false;
        }
        return false;
    };
    if (rec(0)) out.found = pick;
    return out;
}

bool tuple_valid(const ClassModel& m, const std::vector<std::size_t>& t, Arity arity,
                 const std::function<bool(std::size_t)>& outside) {
    std::set<std::size_t> distinct(t.begin(), t.end());
    if (distinct.size() != t.size()) return false;
    for (std::size_t c : t)
        if (!outside(c) || !m.classes[c].maximal) return false;
    if (arity == Arity::Five) {
        if (t.size() != 5) return false;
        for (std::size_t a : t)
            for (std::size_t b : t)
                if (a != b && m.is_power_of(a, b)) return false;
    } else if (arity == Arity::Three) {
        return t.size() == 3;
    } else {
        if (t.size() == 2) return m.is_power_of(t[1], t[0]);
        return t.size() == 3;
    }
    return true;
}

json class_json(const ClassInfo& c) {
    json j{{"label", c.label}, {"order", c.order}, {"representative", c.representative}};
    if (c.size) j["size"] = c.size;
    return j;
}

// Runs the search for every kernel; on success fills `payload`.
std::optional<Refusal> class_search(const ClassModel& m, const std::vector<KernelModel>& kernels, Arity arity,
                                    const InertiaRealizabilityOracle& oracle, bool abelian,
                                    const std::vector<std::size_t>& hint, json& payload) {
    json per = json::array();
    std::string strategy = "order-descending";
    for (const KernelModel& K : kernels) {
        std::optional<std::vector<std::size_t>> chosen;
        if (!hint.empty() && tuple_valid(m, hint, arity, K.outside)) {
            bool covered = true;
            for (std::size_t c : hint) covered = covered && oracle_covers(oracle, m.classes[c], abelian);
            if (covered) {
                chosen = hint;
                strategy = "hint";
            }
        }
        if (!chosen) {
            std::vector<std::size_t> all, cov;
            for (std::size_t i = 0; i < m.classes.size(); ++i) {
                if (!K.outside(i) || !m.classes[i].maximal) continue;
                all.push_back(i);
                if (oracle_covers(oracle, m.classes[i], abelian)) cov.push_back(i);
            }
            SearchOutcome s = search(m, cov, arity);
            if (s.found) {
                chosen = s.found;
            } else {
                SearchOutcome u = search(m, all, arity);
                json cand = json::array();
                for (std::size_t i : all) cand.push_back(m.classes[i].label);
                if (u.found) {
                    json classes = json::array();
                    for (std::size_t i : *u.found) classes.push_back(class_json(m.classes[i]));
                    return refuse(ErrorCode::OracleGap,
                                  "classes satisfying (a)-(c) exist but the inertia oracle does not cover them",
                                  {{"kernel", K.witness}, {"classes", classes}, {"oracle", oracle_json(oracle)}});
                }
                return refuse(ErrorCode::ClassSearchFailed,
                              s.exhausted_budget || u.exhausted_budget ? "class search budget exhausted"
                                                                       : "no qualifying class tuple",
                              {{"kernel", K.witness}, {"qualifying_classes", cand}});
            }
        }
        json classes = json::array();
        for (std::size_t i : *chosen) classes.push_back(class_json(m.classes[i]));
        per.push_back({{"kernel", K.witness}, {"classes", classes}});
    }
    payload = {{"kernels", per}, {"oracle", oracle_json(oracle)}, {"strategy", strategy},
               {"arity", arity == Arity::Five ? 5 : 3}};
    if (arity == Arity::Cyclic2) payload["arity"] = "3, or 2 with C_2 a power of C_1";
    return std::nullopt;
}

std::vector<std::size_t> hint_indices(const ClassModel& m, const std::vector<std::string>& hint) {
    std::vector<std::size_t> out;
    for (auto& h : hint) {
        for (std::size_t i = 0; i < m.classes.size(); ++i)
            if (m.classes[i].label == h) {
                out.push_back(i);
                break;
            }
    }
    if (out.size() != hint.size()) return {};
    return out;
}

void oracle_assumptions(const InertiaRealizabilityOracle& o, const FieldContext& fc, std::vector<Assumption>& as) {
    if (o.rule == OracleRule::UserAssertion)
        add_assumption(as, {"inertia", "the selected classes occur in inertia canonical invariants of regular "
                                       "realizations (user-asserted)"});
    else if (!fc.rational)
        add_assumption(as, {"field-transfer", "the inertia realizations, constructed over Q, are base-changed to k"});
}

json witness_symmetric_An(std::uint64_t n) {
    json gens = json::array();
    if (n >= 3) {
        CycleType three(n - 3, 1);
        three.push_back(3);
        gens.push_back(perm_of_type(three).to_cycle_string());
        if (n >= 4) {
            std::vector<Point> cyc;
            for (std::size_t i = (n % 2 ? 0 : 1); i < n; ++i) cyc.push_back(static_cast<Point>(i));
            gens.push_back(Perm::from_cycles(n, {cyc}).to_cycle_string());
        }
    }
    json w{{"degree", n}, {"generators", gens}, {"label", "A_" + std::to_string(n)},
           {"descriptor", to_json(GroupDescriptor::alternating(n))}};
    if (n <= 20) w["order"] = factorial_u64(n) / 2;
    else w["order"] = "n!/2";
    return w;
}

std::vector<CycleType> types_of(const std::vector<CycleType>& hint) {
    std::vector<CycleType> out;
    for (auto t : hint) out.push_back(normalize_type(std::move(t)));
    return out;
}

// Class model restricted to the given types (hint pass) or all partitions.
std::optional<Refusal> symmetric_search(std::uint64_t n, const std::vector<CycleType>& hint, Arity arity,
                                        json& payload) {
    InertiaRealizabilityOracle oracle{OracleRule::SymmetricOddClasses, {}};
    std::vector<KernelModel> kernels;
    if (!hint.empty()) {
        auto types = types_of(hint);
        bool right_degree = true;
        for (auto& t : types) right_degree = right_degree && type_degree(t) == n;
        if (right_degree) {
            ClassModel m = symmetric_model(types);
            std::vector<std::size_t> idx(types.size());
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            KernelModel K{witness_symmetric_An(n), [&m](std::size_t i) { return m.classes[i].odd; }};
            if (tuple_valid(m, idx, arity, K.outside) &&
                !class_search(m, {K}, arity, oracle, false, idx, payload))
                return std::nullopt;
        }
    }
    std::vector<CycleType> all = partitions(n);
    ClassModel m = symmetric_model(all);
    KernelModel K{witness_symmetric_An(n), [&m](std::size_t i) { return m.classes[i].odd; }};
    return class_search(m, {K}, arity, oracle, false, {}, payload);
}

}  // namespace

std::string class_label(const Audited& A, std::size_t i) {
    const ConjClass& c = A.G.class_partition().classes.at(i);
    if (natural_symmetric(A.desc)) return type_label(c.representative.cycle_type());
    if (auto a = A.desc.as<AbelianDesc>(); a && !a->invariants.empty()) {
        std::string s = "(";
        std::size_t start = 0;
        for (std::size_t k = 0; k < a->invariants.size(); ++k) {
            if (k) s += ",";
            s += std::to_string((c.representative[start] + a->invariants[k] - start) % a->invariants[k]);
            start += a->invariants[k];
        }
        return s + ")";
    }
    return "#" + std::to_string(i);
}

CheckResult check_T32(const Audited& A, const Subset& H, const FieldContext& fc, const Assertions& asserted,
                      const T32Options& opt) {
    validate(fc);
    const PermGroup& G = A.G;
    if (auto r = check_kernel(G, H)) return {std::nullopt, r};
    PermGroup Q = quotient(G, H);
    Certificate c = base_certificate(A, fc, Theorem::T32);
    c.witness = subgroup_witness(G, H);
    c.quotient = identify(Q);

    if (opt.genus_override) {
        c.genus_evidence = *opt.genus_override;
    } else {
        MinimalGenusVerdict v = minimal_genus_lower_bound(Q, fc);
        if (v.bound != GenusBound::AtLeastTwo)
            return refused(ErrorCode::GenusNotCertified,
                           "m_{G/H,k} >= 2 is not certified for G/H = " + label(c.quotient),
                           {{"quotient", to_json(c.quotient)}, {"verdict", to_json(v)}});
        json per = json::array();
        auto kernels = isomorphic_kernels(G, H);
        if (kernels) {
            for (const Subset& K : *kernels) {
                MinimalGenusVerdict vk = minimal_genus_lower_bound(quotient(G, K), fc);
                if (vk.bound != GenusBound::AtLeastTwo)
                    return refused(ErrorCode::GenusNotCertified, "an isomorphic quotient failed the genus bound");
                per.push_back({{"kernel", subgroup_witness(G, K)}, {"bound", to_string(vk.bound)}});
            }
        }
        c.genus_evidence = {{"quotient_verdict", to_json(v)},
                            {"kernels_enumerated", kernels.has_value()},
                            {"kernels", per}};
        if (!kernels)
            c.genus_evidence["note"] =
                "normal lattice beyond the brute-force bound; isomorphic quotients share the group-level bound";
    }

    try {
        c.evidence = opt.evidence ? *opt.evidence : embedding_star_evidence(A, H, fc, asserted);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoEvidence) throw;
        return refused(ErrorCode::EmbeddingNotCertified, e.what());
    }
    evidence_assumptions(c.evidence, fc, c.assumptions);
    for (auto& a : opt.extra_assumptions) add_assumption(c.assumptions, a);
    c.conclusion = Conclusion::NoFiniteOneParametricSet;
    c.implied = {"NoParametricExtension"};
    c.uniformity_extension = true;
    return accepted(std::move(c));
}

CheckResult check_T34(const Audited& A, const Subset& H, const FieldContext& fc, const Assertions& asserted,
                      const std::optional<EmbeddingEvidence>& evidence) {
    validate(fc);
    const PermGroup& G = A.G;
    if (auto r = check_kernel(G, H)) return {std::nullopt, r};
    PermGroup Q = quotient(G, H);
    Certificate c = base_certificate(A, fc, fc.rational ? Theorem::T34Addendum : Theorem::T34);
    c.witness = subgroup_witness(G, H);
    c.quotient = identify(Q);
    MinimalGenusVerdict v = minimal_genus_lower_bound(Q, fc);
    if (!at_least(v.bound, GenusBound::AtLeastOne))
        return refused(ErrorCode::GenusNotCertified, "m_{G/H,k} >= 1 is not certified for G/H = " + label(c.quotient),
                       {{"quotient", to_json(c.quotient)}, {"verdict", to_json(v)}});
    if (!asserted.local)
        return refused(ErrorCode::MissingLocalEvidence,
                       "T3.4 needs ramification evidence at infinitely many primes");
    const auto& loc = *asserted.local;
    std::uint64_t e = loc.ramification_index;
    bool ok = fc.rational ? e >= 3 : !(e == 1 || e == 2 || e == 3 || e == 4 || e == 6);
    if (!ok)
        return refused(ErrorCode::MissingLocalEvidence,
                       "ramification index " + std::to_string(e) + " does not meet the threshold",
                       {{"threshold", fc.rational ? ">= 3" : "not in {1,2,3,4,6}"}});
    try {
        c.evidence = evidence ? *evidence : embedding_star_evidence(A, H, fc, asserted);
    } catch (const Error& ex) {
        if (ex.code() != ErrorCode::NoEvidence) throw;
        return refused(ErrorCode::EmbeddingNotCertified, ex.what());
    }
    json per = json::array();
    auto kernels = isomorphic_kernels(G, H);
    if (kernels)
        for (const Subset& K : *kernels) {
            MinimalGenusVerdict vk = minimal_genus_lower_bound(quotient(G, K), fc);
            per.push_back({{"kernel", subgroup_witness(G, K)}, {"bound", to_string(vk.bound)}});
        }
    c.genus_evidence = {{"quotient_verdict", to_json(v)},
                        {"kernels_enumerated", kernels.has_value()},
                        {"kernels", per},
                        {"local",
                         {{"rule", loc.rule},
                          {"ramification_index", e},
                          {"primes", loc.primes},
                          {"threshold", fc.rational ? ">= 3" : "not in {1,2,3,4,6}"}}}};
    evidence_assumptions(c.evidence, fc, c.assumptions);
    add_assumption(c.assumptions,
                   {"local-ramification", "for infinitely many primes (" + (loc.primes.empty() ? "unspecified" : loc.primes) +
                                              ") a G/H-extension with ramification index " + std::to_string(e) +
                                              " embeds into infinitely many G-extensions (construction: " + loc.rule +
                                              "); infinitude is not verified"});
    c.conclusion = Conclusion::NoFiniteOneParametricSet;
    c.implied = {"NoParametricExtension"};
    return accepted(std::move(c));
}

namespace {

std::vector<KernelModel> kernel_models(const Audited& A, const std::vector<Subset>& kernels,
                                       std::vector<std::shared_ptr<Subset>>& keep) {
    std::vector<KernelModel> out;
    const auto& part = A.G.class_partition();
    for (const Subset& K : kernels) {
        auto k = std::make_shared<Subset>(K);
        keep.push_back(k);
        out.push_back({subgroup_witness(A.G, K),
                       [k, &part](std::size_t i) { return !k->contains(part.classes[i].representative_id); }});
    }
    return out;
}

}  // namespace

CheckResult check_T36(const Audited& A, const Subset& H, const FieldContext& fc, const Assertions& asserted,
                      const std::vector<std::string>& hint) {
    validate(fc);
    const PermGroup& G = A.G;
    if (auto r = check_kernel(G, H)) return {std::nullopt, r};
    Certificate c = base_certificate(A, fc, Theorem::T36);
    c.witness = subgroup_witness(G, H);
    c.quotient = identify(quotient(G, H));
    try {
        c.evidence = embedding_star_evidence(A, H, fc, asserted);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoEvidence) throw;
        return refused(ErrorCode::EmbeddingNotCertified, e.what());
    }
    auto kernels = isomorphic_kernels(G, H);
    if (!kernels) return refused(ErrorCode::OrderTooLarge, "cannot enumerate the normal subgroups H'");
    ClassModel m = materialized_model(A);
    std::vector<std::shared_ptr<Subset>> keep;
    auto km = kernel_models(A, *kernels, keep);
    bool abelian = is_abelian(G);
    auto oracle = choose_oracle(A.desc, abelian, asserted);
    json payload;
    if (auto r = class_search(m, km, Arity::Five, oracle, abelian, hint_indices(m, hint), payload))
        return {std::nullopt, r};
    c.genus_evidence = payload;
    evidence_assumptions(c.evidence, fc, c.assumptions);
    oracle_assumptions(oracle, fc, c.assumptions);
    c.conclusion = Conclusion::NoParametricExtension;
    return accepted(std::move(c));
}

CheckResult check_T36_symmetric(std::uint64_t n, const FieldContext& fc, const std::vector<CycleType>& hint) {
    validate(fc);
    if (n < 5) return refused(ErrorCode::NotEnoughClasses, "S_n with n < 5 has too few odd classes");
    Certificate c;
    c.group = GroupDescriptor::symmetric(n);
    c.field = fc;
    c.theorem = Theorem::T36;
    c.witness = witness_symmetric_An(n);
    c.quotient = GroupDescriptor::abelian({2});
    c.evidence = embedding_star_evidence_symmetric(n, fc);
    json payload;
    if (auto r = symmetric_search(n, hint, Arity::Five, payload)) return {std::nullopt, r};
    c.genus_evidence = payload;
    c.genus_evidence["kernels_note"] = "A_n is the only normal subgroup with quotient Z/2";
    evidence_assumptions(c.evidence, fc, c.assumptions);
    oracle_assumptions({OracleRule::SymmetricOddClasses, {}}, fc, c.assumptions);
    c.conclusion = Conclusion::NoParametricExtension;
    return accepted(std::move(c));
}

CheckResult check_T37(const Audited& A, const Subset& H, const FieldContext& fc, const Assertions& asserted) {
    validate(fc);
    if (!fc.rational) return refused(ErrorCode::InvalidArgument, "T3.7 is stated over Q");
    const PermGroup& G = A.G;
    if (auto r = check_kernel(G, H)) return {std::nullopt, r};
    PermGroup Q = quotient(G, H);
    if (!is_cyclic(Q) || Q.order() < 3)
        return refused(ErrorCode::InvalidArgument, "G/H must be cyclic of order >= 3");
    Certificate c = base_certificate(A, fc, Theorem::T37);
    c.witness = subgroup_witness(G, H);
    c.quotient = identify(Q);
    try {
        c.evidence = embedding_star_evidence(A, H, fc, asserted);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoEvidence) throw;
        return refused(ErrorCode::EmbeddingNotCertified, e.what());
    }
    auto kernels = isomorphic_kernels(G, H);
    if (!kernels) return refused(ErrorCode::OrderTooLarge, "cannot enumerate the normal subgroups H'");
    ClassModel m = materialized_model(A);
    std::vector<std::shared_ptr<Subset>> keep;
    auto km = kernel_models(A, *kernels, keep);
    bool abelian = is_abelian(G);
    auto oracle = choose_oracle(A.desc, abelian, asserted);
    json payload;
    if (auto r = class_search(m, km, Arity::Three, oracle, abelian, {}, payload)) return {std::nullopt, r};
    c.genus_evidence = payload;
    evidence_assumptions(c.evidence, fc, c.assumptions);
    oracle_assumptions(oracle, fc, c.assumptions);
    c.conclusion = Conclusion::NoParametricExtension;
    return accepted(std::move(c));
}

CheckResult check_T38(const Audited& A, const FieldContext& fc, const Assertions& asserted,
                      const std::vector<std::string>& hint) {
    validate(fc);
    if (!fc.rational) return refused(ErrorCode::InvalidArgument, "T3.8 is stated over Q");
    const PermGroup& G = A.G;
    std::size_t count = index_two_subgroup_count(G);
    if (count != 1)
        return refused(ErrorCode::NonUniqueIndexTwo,
                       "G has " + std::to_string(count) + " subgroups of index 2", {{"count", count}});
    Subset H = squares_subgroup(G);
    Certificate c = base_certificate(A, fc, Theorem::T38);
    c.witness = subgroup_witness(G, H);
    c.quotient = GroupDescriptor::abelian({2});

    // condition (2): every quadratic extension embeds
    json quad;
    std::string gar;
    if (natural_symmetric(A.desc)) {
        quad = {{"rule", "symmetric-over-alternating"}, {"citation", "Prop 4.5(2)"}};
    } else if (H.size() > 1 && in_gar_list(subgroup_as_group(G, H), &gar)) {
        quad = {{"rule", "GAR-kernel"}, {"kernel", gar}, {"citation", "Prop 4.5(1)"}};
    } else {
        // G = H x <z> with z a central involution outside H and H realizable:
        // compose the quadratic field with a disjoint H-extension.
        Subset Z = center(G);
        std::optional<ElemId> z;
        for (ElemId x : Z.members())
            if (G.element_orders()[x] == 2 && !H.contains(x)) {
                z = x;
                break;
            }
        if (z && (H.size() % 2 == 1 || is_solvable_subgroup(G, H))) {
            quad = {{"rule", "direct-factor"},
                    {"central_involution", G.table().perm(*z).to_cycle_string()},
                    {"complement_realizable", "solvable-by-Shafarevich"}};
            if (H.size() % 2 == 0)
                quad["note"] = "an H-extension linearly disjoint from the quadratic field is chosen among infinitely many";
        } else if (asserted.quadratic_embedding) {
            quad = {{"rule", "user-asserted"}, {"assertion", *asserted.quadratic_embedding}};
            add_assumption(c.assumptions, {"quadratic-embedding", "every quadratic extension of Q embeds into a "
                                                                  "G-extension (user-asserted)"});
        } else {
            return refused(ErrorCode::EmbeddingNotCertified, "condition (2) of T3.8 is not certified");
        }
    }
    try {
        c.evidence = embedding_star_evidence(A, H, fc, asserted);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoEvidence) throw;
        return refused(ErrorCode::EmbeddingNotCertified, e.what());
    }
    ClassModel m = materialized_model(A);
    std::vector<std::shared_ptr<Subset>> keep;
    auto km = kernel_models(A, {H}, keep);
    bool abelian = is_abelian(G);
    auto oracle = choose_oracle(A.desc, abelian, asserted);
    json payload;
    if (auto r = class_search(m, km, Arity::Cyclic2, oracle, abelian, hint_indices(m, hint), payload))
        return {std::nullopt, r};
    c.genus_evidence = payload;
    c.genus_evidence["unique_index_two"] = true;
    c.genus_evidence["quadratic_embedding"] = quad;
    evidence_assumptions(c.evidence, fc, c.assumptions);
    oracle_assumptions(oracle, fc, c.assumptions);
    c.conclusion = Conclusion::NoParametricExtension;
    return accepted(std::move(c));
}

CheckResult check_T38_symmetric(std::uint64_t n, const FieldContext& fc, const std::vector<CycleType>& hint) {
    validate(fc);
    if (!fc.rational) return refused(ErrorCode::InvalidArgument, "T3.8 is stated over Q");
    if (n < 3) return refused(ErrorCode::NotEnoughClasses, "S_n with n < 3 has too few odd classes");
    Certificate c;
    c.group = GroupDescriptor::symmetric(n);
    c.field = fc;
    c.theorem = Theorem::T38;
    c.witness = witness_symmetric_An(n);
    c.quotient = GroupDescriptor::abelian({2});
    c.evidence = embedding_star_evidence_symmetric(n, fc);
    json payload;
    if (auto r = symmetric_search(n, hint, Arity::Cyclic2, payload)) return {std::nullopt, r};
    c.genus_evidence = payload;
    c.genus_evidence["unique_index_two"] = true;
    c.genus_evidence["quadratic_embedding"] = {{"rule", "symmetric-over-alternating"}, {"citation", "Prop 4.5(2)"}};
    evidence_assumptions(c.evidence, fc, c.assumptions);
    oracle_assumptions({OracleRule::SymmetricOddClasses, {}}, fc, c.assumptions);
    c.conclusion = Conclusion::NoParametricExtension;
    return accepted(std::move(c));
}

// ---- re-verification ---------------------------------------------------------

namespace {

void verify_classes_symmetric(const Certificate& c, std::uint64_t n, std::vector<std::string>& problems) {
    Arity arity = c.theorem == Theorem::T36 ? Arity::Five : Arity::Cyclic2;
    for (auto& k : c.genus_evidence.at("kernels")) {
        std::vector<CycleType> types;
        for (auto& cl : k.at("classes")) {
            CycleType t = parse_cycle_type(cl.at("label").get<std::string>());
            if (type_degree(t) != n) problems.push_back("class " + type_label(t) + " has the wrong degree");
            types.push_back(t);
        }
        ClassModel m = symmetric_model(types);
        std::vector<std::size_t> idx(types.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        if (!tuple_valid(m, idx, arity, [&](std::size_t i) { return m.classes[i].odd; }))
            problems.push_back("class payload fails the definitional predicates");
        for (auto& t : types)
            if (type_maximal_cyclic(t) != type_maximal_cyclic_search(t))
                problems.push_back("maximal-cyclic closed form disagrees with search for " + type_label(t));
    }
}

void verify_classes(const Certificate& c, const Audited& A, std::vector<std::string>& problems) {
    const PermGroup& G = A.G;
    Arity arity = c.theorem == Theorem::T36 ? Arity::Five : c.theorem == Theorem::T37 ? Arity::Three : Arity::Cyclic2;
    ClassModel m = materialized_model(A);
    PermGroup Q = quotient(G, subgroup_from_witness(G, c.witness));
    std::size_t kernels_seen = 0;
    for (auto& k : c.genus_evidence.at("kernels")) {
        Subset K = subgroup_from_witness(G, k.at("kernel"));
        if (!is_normal(G, K)) problems.push_back("kernel H' is not normal");
        if (!is_isomorphic(quotient(G, K), Q)) problems.push_back("G/H' is not isomorphic to G/H");
        std::vector<std::size_t> idx;
        for (auto& cl : k.at("classes")) {
            Perm rep = Perm::parse_cycles(G.degree(), cl.at("representative").get<std::string>());
            auto id = G.table().find(rep.images());
            if (!id) {
                problems.push_back("class representative not in G");
                continue;
            }
            idx.push_back(G.class_partition().class_of[*id]);
            // direct brute force, independent of the cached class model
            if (!generates_maximal_cyclic(G, *id)) problems.push_back("representative not maximal cyclic");
            if (K.contains(*id)) problems.push_back("class contained in H'");
        }
        auto outside = [&](std::size_t i) { return !K.contains(G.class_partition().classes[i].representative_id); };
        if (!tuple_valid(m, idx, arity, outside))
            problems.push_back("class payload fails the definitional predicates");
        ++kernels_seen;
    }
    if (c.theorem != Theorem::T38) {
        auto all = isomorphic_kernels(G, subgroup_from_witness(G, c.witness));
        if (all && all->size() != kernels_seen) problems.push_back("not every H' with isomorphic quotient was checked");
    }
}

}  // namespace

std::vector<std::string> verify_certificate(const Certificate& c, GroupLimits limits) {
    std::vector<std::string> problems;
    if (c.theorem == Theorem::T32 || c.theorem == Theorem::T34 || c.theorem == Theorem::T34Addendum) {
        if (c.conclusion != Conclusion::NoFiniteOneParametricSet) problems.push_back("wrong conclusion");
    } else if (c.conclusion != Conclusion::NoParametricExtension) {
        problems.push_back("wrong conclusion");
    }
    if (!c.evidence.machine_verified() && c.assumptions.empty())
        problems.push_back("unverified evidence with an empty assumption list");

    auto sym = c.group.as<SymmetricDesc>();
    std::optional<Audited> A;
    try {
        A = Audited::make(c.group, limits);
        A->G.order();
    } catch (const Error& e) {
        if (e.code() != ErrorCode::OrderTooLarge) throw;
        A.reset();
    }
    if (!A) {
        if (sym && (c.theorem == Theorem::T36 || c.theorem == Theorem::T38)) {
            verify_classes_symmetric(c, sym->n, problems);
            return problems;
        }
        if (c.genus_evidence.contains("closed_form")) return problems;
        problems.push_back("group beyond the enumeration bound; nothing re-verified");
        return problems;
    }
    const PermGroup& G = A->G;
    Subset H = subgroup_from_witness(G, c.witness);
    if (!is_normal(G, H)) problems.push_back("witness H is not normal");
    if (H.size() <= 1 || H.size() >= G.order()) problems.push_back("witness H is trivial or the whole group");
    PermGroup Q = quotient(G, H);
    if (!is_isomorphic(Q, materialize(c.quotient, limits))) problems.push_back("quotient identification mismatch");

    switch (c.theorem) {
        case Theorem::T32:
            if (!c.genus_evidence.contains("rule")) {
                if (minimal_genus_lower_bound(Q, c.field).bound != GenusBound::AtLeastTwo)
                    problems.push_back("quotient genus bound is not AtLeastTwo");
                for (auto& k : c.genus_evidence.at("kernels")) {
                    Subset K = subgroup_from_witness(G, k.at("kernel"));
                    if (minimal_genus_lower_bound(quotient(G, K), c.field).bound != GenusBound::AtLeastTwo)
                        problems.push_back("an isomorphic quotient is not AtLeastTwo");
                }
            }
            if (c.evidence.rule == EvidenceRule::SolvableKernel && !is_solvable_subgroup(G, H))
                problems.push_back("SolvableKernel evidence with a non-solvable kernel");
            break;
        case Theorem::T34:
        case Theorem::T34Addendum:
            if (!at_least(minimal_genus_lower_bound(Q, c.field).bound, GenusBound::AtLeastOne))
                problems.push_back("quotient genus bound is below AtLeastOne");
            break;
        case Theorem::T38:
            if (index_two_subgroup_count(G) != 1) problems.push_back("index-2 subgroup is not unique");
            [[fallthrough]];
        case Theorem::T36:
        case Theorem::T37:
            verify_classes(c, *A, problems);
            break;
    }
    return problems;
}

}  // namespace paramaudit
