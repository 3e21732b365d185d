#include "paramaudit/field.hpp"

#include <algorithm>

#include "paramaudit/error.hpp"
#include "paramaudit/numtheory.hpp"

namespace paramaudit {

FieldContext FieldContext::number_field(std::uint64_t degree, std::optional<std::vector<std::uint64_t>> ramified,
                                        bool cyclic_subextension) {
    FieldContext fc;
    fc.rational = degree == 1;
    fc.degree = degree;
    fc.ramified = std::move(ramified);
    fc.cyclic_subextension = degree == 1 ? false : cyclic_subextension;
    validate(fc);
    return fc;
}

void validate(const FieldContext& fc) {
    if (fc.degree < 1) fail(ErrorCode::InvalidArgument, "field degree must be at least 1");
    if (fc.rational && fc.degree != 1) fail(ErrorCode::InvalidArgument, "the rational field has degree 1");
    if (!fc.rational && fc.degree == 2 && !fc.cyclic_subextension)
        fail(ErrorCode::InvalidArgument, "a quadratic field is itself a cyclic extension of Q");
    auto check_primes = [](const std::vector<std::uint64_t>& ps, const char* what) {
        for (auto p : ps)
            if (!nt::is_prime(p)) fail(ErrorCode::InvalidArgument, std::string(what) + " contains non-prime " + std::to_string(p));
    };
    if (fc.ramified) check_primes(*fc.ramified, "ramified set");
    if (fc.prime_set_override) {
        check_primes(*fc.prime_set_override, "prime set override");
        auto& s = *fc.prime_set_override;
        if (std::find(s.begin(), s.end(), 2) == s.end() || std::find(s.begin(), s.end(), 3) == s.end())
            fail(ErrorCode::InvalidArgument, "prime set override must contain 2 and 3");
    }
}

nlohmann::json to_json(const FieldContext& fc) {
    if (fc.rational && !fc.prime_set_override) return "Q";
    nlohmann::json j{{"degree", fc.degree}, {"cyclic_subextension", fc.cyclic_subextension}};
    if (fc.ramified) j["ramified"] = *fc.ramified;
    if (fc.prime_set_override) j["prime_set"] = *fc.prime_set_override;
    return j;
}

FieldContext field_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "Q") return FieldContext::rationals();
        fail(ErrorCode::ParseError, "unknown field '" + j.get<std::string>() + "'");
    }
    if (!j.is_object() || !j.contains("degree")) fail(ErrorCode::ParseError, "field object needs a degree");
    FieldContext fc;
    try {
        fc.degree = j.at("degree").get<std::uint64_t>();
        fc.rational = fc.degree == 1;
        if (j.contains("ramified")) fc.ramified = j.at("ramified").get<std::vector<std::uint64_t>>();
        fc.cyclic_subextension = j.value("cyclic_subextension", fc.degree > 1);
        if (j.contains("prime_set")) fc.prime_set_override = j.at("prime_set").get<std::vector<std::uint64_t>>();
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("bad field description: ") + e.what());
    }
    for (auto& v : {&fc.ramified, &fc.prime_set_override})
        if (*v) std::sort((*v)->begin(), (*v)->end());
    validate(fc);
    return fc;
}

FieldContext parse_field(const std::string& text) {
    if (text == "Q") return FieldContext::rationals();
    try {
        return field_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::ParseError, std::string("field is neither Q nor JSON: ") + e.what());
    }
}

PrimeSet prime_set_S(const FieldContext& fc) {
    validate(fc);
    if (fc.prime_set_override) {
        auto s = *fc.prime_set_override;
        std::sort(s.begin(), s.end());
        return {s, true, "user-supplied prime set"};
    }
    if (fc.rational) return {{2, 3}, true, "k = Q"};
    bool small_ramification = fc.ramified && std::all_of(fc.ramified->begin(), fc.ramified->end(),
                                                         [](std::uint64_t p) { return p == 2 || p == 3; });
    if (small_ramification) return {{2, 3}, true, "k/Q ramifies at most at 2 and 3"};
    if (!fc.cyclic_subextension) return {{2, 3}, true, "k/Q has no non-trivial cyclic subextension"};
    // Odd p >= 5 lies in S only if k contains the degree (p-1)/2 subfield of
    // Q(zeta_p): so p <= 2[k:Q]+1, (p-1)/2 divides [k:Q], and p ramifies in k.
    std::vector<std::uint64_t> out{2, 3};
    std::uint64_t bound = 2 * fc.degree + 1;
    for (std::uint64_t p = 5; p <= bound; p += 2) {
        if (!nt::is_prime(p)) continue;
        if (fc.degree % ((p - 1) / 2) != 0) continue;
        if (fc.ramified && std::find(fc.ramified->begin(), fc.ramified->end(), p) == fc.ramified->end()) continue;
        out.push_back(p);
    }
    bool exact = out.size() == 2;
    std::string basis = fc.ramified ? "degree bound, subfield degree and ramified primes" : "degree bound and subfield degree";
    return {out, exact, basis};
}

nlohmann::json to_json(const PrimeSet& s) {
    return {{"primes", s.primes}, {"exact", s.exact}, {"superset", !s.exact}, {"basis", s.basis}};
}

}  // namespace paramaudit
