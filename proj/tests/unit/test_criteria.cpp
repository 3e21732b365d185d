#include <doctest.h>

#include <set>

#include "paramaudit/criteria.hpp"
#include "paramaudit/cycletype.hpp"
#include "paramaudit/descriptor.hpp"
#include "paramaudit/error.hpp"
#include "paramaudit/group.hpp"

using namespace paramaudit;
using nlohmann::json;

namespace {

const FieldContext Q = FieldContext::rationals();

Audited make(const GroupDescriptor& d) { return Audited::make(d); }

Subset gen(const PermGroup& G, const std::vector<std::string>& cycles) {
    std::vector<ElemId> ids;
    for (auto& c : cycles) ids.push_back(G.table().index_of(Perm::parse_cycles(G.degree(), c).images()));
    return generated_subgroup(G, ids);
}

std::set<ElemId> conj_class(const PermGroup& G, ElemId x) {
    std::set<ElemId> s;
    for (std::size_t g = 0; g < G.order(); ++g) s.insert(G.conj(static_cast<ElemId>(g), x));
    return s;
}

// x generates a maximal cyclic subgroup iff no y has x in <y> with ord(y) > ord(x).
bool brute_maximal(const PermGroup& G, ElemId x) {
    for (std::size_t y = 0; y < G.order(); ++y) {
        auto oy = G.element_order(static_cast<ElemId>(y));
        if (oy <= G.element_order(x)) continue;
        for (std::uint64_t k = 0; k < oy; ++k)
            if (G.power(static_cast<ElemId>(y), static_cast<long long>(k)) == x) return false;
    }
    return true;
}

bool brute_is_power(const PermGroup& G, ElemId a, ElemId b) {
    auto ca = conj_class(G, a);
    for (std::uint64_t k = 0; k < G.element_order(b); ++k)
        if (ca.count(G.power(b, static_cast<long long>(k)))) return true;
    return false;
}

// Independent re-check of a class-list certificate payload; arity is the
// minimum number of classes required.
void brute_check_classes(const Certificate& c, std::size_t arity, bool allow_power_pair, bool non_power = true) {
    PermGroup G = materialize(c.group);
    const json& kernels = c.genus_evidence.at("kernels");
    REQUIRE(kernels.size() >= 1);
    for (const json& k : kernels) {
        std::vector<std::string> hg = k.at("kernel").at("generators");
        Subset H = gen(G, hg);
        CHECK(H.size() == k.at("kernel").at("order").get<std::size_t>());
        CHECK(is_normal(G, H));
        std::vector<ElemId> reps;
        for (const json& cl : k.at("classes"))
            reps.push_back(G.table().index_of(Perm::parse_cycles(G.degree(), cl.at("representative").get<std::string>()).images()));
        CHECK(reps.size() >= (allow_power_pair ? 2 : arity));
        for (auto x : reps) {
            CHECK_FALSE(H.contains(x));
            CHECK(brute_maximal(G, x));
        }
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i + 1; j < reps.size(); ++j) {
                CHECK(conj_class(G, reps[i]) != conj_class(G, reps[j]));
                if (non_power && !(allow_power_pair && reps.size() == 2)) {
                    CHECK_FALSE(brute_is_power(G, reps[i], reps[j]));
                    CHECK_FALSE(brute_is_power(G, reps[j], reps[i]));
                }
            }
        if (allow_power_pair && reps.size() == 2) CHECK(brute_is_power(G, reps[1], reps[0]));
    }
}

void round_trip(const Certificate& c) {
    json j = to_json(c);
    Certificate back = certificate_from_json(j);
    CHECK(to_json(back) == j);
    auto problems = verify_certificate(back);
    CHECK_MESSAGE(problems.empty(), (problems.empty() ? "" : problems.front()));
}

}  // namespace

TEST_CASE("cycle type closed form agrees with partition search") {
    for (std::size_t n = 1; n <= 18; ++n)
        for (auto& t : partitions(n)) CHECK_MESSAGE(type_maximal_cyclic(t) == type_maximal_cyclic_search(t), type_label(t));
}

TEST_CASE("cycle type predicates agree with brute force in S_n") {
    for (std::uint64_t n = 2; n <= 6; ++n) {
        PermGroup G = materialize(GroupDescriptor::symmetric(n));
        const auto& cp = G.class_partition();
        for (std::size_t i = 0; i < cp.classes.size(); ++i) {
            ElemId x = cp.classes[i].representative_id;
            CycleType t = cp.classes[i].representative.cycle_type();
            CHECK(type_maximal_cyclic(t) == brute_maximal(G, x));
            CHECK(type_sign(t) == cp.classes[i].representative.sign());
            CHECK(type_class_size(t) == cp.classes[i].size);
            CHECK(type_order(t) == cp.classes[i].element_order);
            for (std::size_t j = 0; j < cp.classes.size(); ++j) {
                CycleType s = cp.classes[j].representative.cycle_type();
                CHECK(type_is_power_of(t, s) == brute_is_power(G, x, cp.classes[j].representative_id));
            }
        }
    }
}

TEST_CASE("parse_cycle_type accepts the label forms") {
    CHECK(parse_cycle_type("[1^2 4^1]") == CycleType{1, 1, 4});
    CHECK(parse_cycle_type("1^2 4") == CycleType{1, 1, 4});
    CHECK(parse_cycle_type("4,1,1") == CycleType{1, 1, 4});
    CHECK(type_label({1, 1, 4}) == "[1^2 4^1]");
    CHECK_THROWS_AS(parse_cycle_type("[a]"), Error);
}

TEST_CASE("embedding evidence rules") {
    SUBCASE("abelian G gives SolvableKernel, auto-justified") {
        Audited A = make(GroupDescriptor::abelian({4, 4}));
        Subset H = gen(A.G, {"(1 2 3 4)"});
        auto e = embedding_star_evidence(A, H, Q);
        CHECK(e.rule == EvidenceRule::SolvableKernel);
        CHECK(e.justification == Justification::Abelian);
        CHECK(e.machine_verified());
    }
    SUBCASE("S_7 over A_7 is GAR") {
        auto e = embedding_star_evidence_symmetric(7, Q);
        CHECK(e.rule == EvidenceRule::GARKernel);
    }
    SUBCASE("A_6 kernel without assertion is refused") {
        Audited A = make(GroupDescriptor::symmetric(6));
        Subset H = derived_subgroup(A.G);
        CHECK(H.size() == 360);
        auto e = embedding_star_evidence(A, H, Q);
        // S_6 over A_6 has the built-in index-two route, recorded as a cited realization
        CHECK(e.rule == EvidenceRule::IndexTwoRegular);
        Audited B = make(GroupDescriptor::product(GroupDescriptor::alternating(6), GroupDescriptor::abelian({2})));
        Subset K = derived_subgroup(B.G);
        REQUIRE(K.size() == 360);
        CHECK_THROWS_AS(embedding_star_evidence(B, K, Q), Error);
        Assertions as;
        as.embedding = "caller-supplied construction";
        auto u = embedding_star_evidence(B, K, Q, as);
        CHECK(u.rule == EvidenceRule::UserAssertion);
        CHECK_FALSE(u.machine_verified());
    }
    SUBCASE("GAR list membership") {
        std::string name;
        CHECK(in_gar_list(materialize(GroupDescriptor::alternating(5)), &name));
        CHECK_FALSE(in_gar_list(materialize(GroupDescriptor::alternating(6))));
        CHECK(psl2_prime(materialize(GroupDescriptor::gl(2, 2))) == std::nullopt);
    }
}

TEST_CASE("T3.2") {
    SUBCASE("Z/5 x Z/5 with H a factor") {
        Audited A = make(GroupDescriptor::abelian({5, 5}));
        Subset H = gen(A.G, {"(1 2 3 4 5)"});
        auto r = check_T32(A, H, Q);
        REQUIRE(r.ok());
        CHECK(r.certificate->conclusion == Conclusion::NoFiniteOneParametricSet);
        CHECK(r.certificate->uniformity_extension);
        CHECK(r.certificate->implied == std::vector<std::string>{"NoParametricExtension"});
        // every order-5 normal subgroup has quotient Z/5 and is re-checked
        CHECK(r.certificate->genus_evidence.at("kernels").size() == 6);
        CHECK(r.certificate->assumptions.empty());
        round_trip(*r.certificate);
    }
    SUBCASE("GL(2,5) over its center") {
        Audited A = make(GroupDescriptor::gl(2, 5));
        Subset Z = center(A.G);
        CHECK(Z.size() == 4);
        Assertions wlog;
        wlog.realizability = "regular-wlog";
        auto r = check_T32(A, Z, Q, wlog);
        REQUIRE(r.ok());
        round_trip(*r.certificate);
    }
    SUBCASE("S_3 over A_3 is refused") {
        Audited A = make(GroupDescriptor::symmetric(3));
        auto r = check_T32(A, derived_subgroup(A.G), Q);
        REQUIRE_FALSE(r.ok());
        CHECK(r.refusal->code == ErrorCode::GenusNotCertified);
    }
}

TEST_CASE("T3.4") {
    Assertions loc;
    loc.local = Assertions::Local{"Lemma 6.5", 5, "q = 1 mod 15"};
    Audited A = make(GroupDescriptor::dihedral(15));
    Subset H = gen(A.G, {"(1 6 11)(2 7 12)(3 8 13)(4 9 14)(5 10 15)"});
    SUBCASE("D_15 over D_5") {
        auto r = check_T34(A, H, Q, loc);
        REQUIRE(r.ok());
        CHECK(r.certificate->theorem == Theorem::T34Addendum);
        CHECK(label(r.certificate->quotient) == "D_5");
        CHECK_FALSE(r.certificate->assumptions.empty());
        round_trip(*r.certificate);
    }
    SUBCASE("missing local evidence") {
        auto r = check_T34(A, H, Q);
        REQUIRE_FALSE(r.ok());
        CHECK(r.refusal->code == ErrorCode::MissingLocalEvidence);
    }
    SUBCASE("D_25 over D_5") {
        Audited B = make(GroupDescriptor::dihedral(25));
        auto Hs = normal_subgroups_of_order(B.G, 5);
        REQUIRE(Hs.size() == 1);
        auto r = check_T34(B, Hs[0], Q, loc);
        REQUIRE(r.ok());
        round_trip(*r.certificate);
    }
    SUBCASE("genus-0 quotient is refused") {
        Audited B = make(GroupDescriptor::dihedral(6));
        auto Hs = normal_subgroups_of_order(B.G, 3);
        REQUIRE(Hs.size() == 1);
        auto r = check_T34(B, Hs[0], Q, loc);
        REQUIRE_FALSE(r.ok());
        CHECK(r.refusal->code == ErrorCode::GenusNotCertified);
    }
}

TEST_CASE("T3.6") {
    SUBCASE("(Z/2)^4 over an order-2 subgroup") {
        Audited A = make(GroupDescriptor::abelian({2, 2, 2, 2}));
        Subset H = gen(A.G, {"(1 2)"});
        auto r = check_T36(A, H, Q);
        REQUIRE(r.ok());
        CHECK(r.certificate->conclusion == Conclusion::NoParametricExtension);
        brute_check_classes(*r.certificate, 5, false);
        round_trip(*r.certificate);
    }
    SUBCASE("S_9 over A_9, symmetric path") {
        auto r = check_T36_symmetric(9, Q, {{1, 8}, {2, 7}, {3, 6}, {4, 5}, {1, 2, 3, 3}});
        REQUIRE(r.ok());
        auto free = check_T36_symmetric(9, Q);
        REQUIRE(free.ok());
        round_trip(*free.certificate);
        std::set<std::string> labels;
        for (auto& c : r.certificate->genus_evidence.at("kernels")[0].at("classes")) labels.insert(c.at("label"));
        INFO(json(labels).dump());
        CHECK(labels == std::set<std::string>{"[1^1 8^1]", "[2^1 7^1]", "[3^1 6^1]", "[4^1 5^1]", "[1^1 2^1 3^2]"});
        round_trip(*r.certificate);
    }
    SUBCASE("S_8 materialized agrees with the symmetric path") {
        GroupLimits big{50'000, 50'000};
        Audited A = Audited::make(GroupDescriptor::symmetric(8), big);
        auto r = check_T36(A, derived_subgroup(A.G), Q, {},
                           {"[8^1]", "[1^2 6^1]", "[1^1 2^1 5^1]", "[1^1 3^1 4^1]", "[2^1 3^2]"});
        REQUIRE(r.ok());
        auto s = check_T36_symmetric(8, Q, {{8}, {1, 1, 6}, {1, 2, 5}, {1, 3, 4}, {2, 3, 3}});
        REQUIRE(s.ok());
        auto labels = [](const Certificate& c) {
            std::set<std::string> out;
            for (auto& x : c.genus_evidence.at("kernels")[0].at("classes")) out.insert(x.at("label"));
            return out;
        };
        CHECK(labels(*r.certificate) == labels(*s.certificate));
    }
    SUBCASE("Z/4 has too few classes") {
        Audited A = make(GroupDescriptor::abelian({4}));
        auto r = check_T36(A, gen(A.G, {"(1 3)(2 4)"}), Q);
        REQUIRE_FALSE(r.ok());
        CHECK(r.refusal->code == ErrorCode::ClassSearchFailed);
    }
    SUBCASE("user oracle scope too narrow gives OracleGap") {
        Audited A = make(GroupDescriptor::product(GroupDescriptor::symmetric(3), GroupDescriptor::abelian({2, 2, 2})));
        Subset H = derived_subgroup(A.G);
        Assertions as;
        as.inertia = std::vector<std::string>{"#1"};
        auto r = check_T36(A, H, Q, as);
        REQUIRE_FALSE(r.ok());
        CHECK((r.refusal->code == ErrorCode::OracleGap || r.refusal->code == ErrorCode::ClassSearchFailed));
    }
}

TEST_CASE("T3.7") {
    SUBCASE("Z/12 over Z/2") {
        Audited A = make(GroupDescriptor::abelian({12}));
        auto Hs = normal_subgroups_of_order(A.G, 2);
        auto r = check_T37(A, Hs.at(0), Q);
        REQUIRE(r.ok());
        brute_check_classes(*r.certificate, 3, false, false);
        round_trip(*r.certificate);
    }
    SUBCASE("(Z/3)^2 over Z/3 x 0") {
        Audited A = make(GroupDescriptor::abelian({3, 3}));
        auto r = check_T37(A, gen(A.G, {"(1 2 3)"}), Q);
        REQUIRE(r.ok());
        brute_check_classes(*r.certificate, 3, false, false);
        round_trip(*r.certificate);
    }
    SUBCASE("Z/6 over Z/2 is refused") {
        Audited A = make(GroupDescriptor::abelian({6}));
        auto r = check_T37(A, normal_subgroups_of_order(A.G, 2).at(0), Q);
        REQUIRE_FALSE(r.ok());
        CHECK(r.refusal->code == ErrorCode::ClassSearchFailed);
    }
}

TEST_CASE("T3.8") {
    SUBCASE("Z/6 uses the two order-6 classes") {
        Audited A = make(GroupDescriptor::abelian({6}));
        auto r = check_T38(A, Q);
        REQUIRE(r.ok());
        auto& classes = r.certificate->genus_evidence.at("kernels")[0].at("classes");
        CHECK(classes.size() == 2);
        for (auto& c : classes) CHECK(c.at("order") == 6);
        brute_check_classes(*r.certificate, 2, true);
        round_trip(*r.certificate);
    }
    SUBCASE("S_6 materialized and symmetric paths") {
        Audited A = make(GroupDescriptor::symmetric(6));
        auto r = check_T38(A, Q, {}, {"[6^1]", "[1^2 4^1]", "[1^1 2^1 3^1]"});
        REQUIRE(r.ok());
        brute_check_classes(*r.certificate, 3, false);
        round_trip(*r.certificate);
        auto s = check_T38_symmetric(6, Q);
        REQUIRE(s.ok());
        round_trip(*s.certificate);
    }
    SUBCASE("(Z/2)^2 has three index-two subgroups") {
        Audited A = make(GroupDescriptor::abelian({2, 2}));
        auto r = check_T38(A, Q);
        REQUIRE_FALSE(r.ok());
        CHECK(r.refusal->code == ErrorCode::NonUniqueIndexTwo);
    }
    SUBCASE("stated over Q only") {
        Audited A = make(GroupDescriptor::abelian({6}));
        auto r = check_T38(A, FieldContext::number_field(2));
        REQUIRE_FALSE(r.ok());
    }
}

TEST_CASE("assumptions are empty only for machine-verified evidence") {
    Audited A = make(GroupDescriptor::abelian({5, 5}));
    Subset H = gen(A.G, {"(1 2 3 4 5)"});
    Assertions as;
    as.embedding = "asserted";
    T32Options opt;
    EmbeddingEvidence e;
    e.rule = EvidenceRule::UserAssertion;
    opt.evidence = e;
    auto r = check_T32(A, H, Q, as, opt);
    REQUIRE(r.ok());
    CHECK_FALSE(r.certificate->assumptions.empty());
    Certificate c = *r.certificate;
    c.assumptions.clear();
    CHECK_FALSE(verify_certificate(c).empty());
}

TEST_CASE("tampered certificates fail verification") {
    Audited A = make(GroupDescriptor::abelian({3, 3}));
    auto r = check_T37(A, gen(A.G, {"(1 2 3)"}), Q);
    REQUIRE(r.ok());
    Certificate c = *r.certificate;
    c.genus_evidence["kernels"][0]["classes"][0]["representative"] = "(1 2 3)";
    CHECK_FALSE(verify_certificate(c).empty());
    Certificate d = *r.certificate;
    d.quotient = GroupDescriptor::abelian({2});
    CHECK_FALSE(verify_certificate(d).empty());
}
