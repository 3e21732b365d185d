#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace paramaudit {

// The base number field k, described by coarse features only.
struct FieldContext {
    bool rational = true;
    std::uint64_t degree = 1;
    // Rational primes ramified in k/Q, when known.
    std::optional<std::vector<std::uint64_t>> ramified;
    // Whether k/Q has a non-trivial cyclic subextension (conservative default).
    bool cyclic_subextension = true;
    std::optional<std::vector<std::uint64_t>> prime_set_override;

    static FieldContext rationals() { return {}; }
    static FieldContext number_field(std::uint64_t degree,
                                     std::optional<std::vector<std::uint64_t>> ramified = std::nullopt,
                                     bool cyclic_subextension = true);
    bool operator==(const FieldContext&) const = default;
};

void validate(const FieldContext& fc);
nlohmann::json to_json(const FieldContext& fc);
FieldContext field_from_json(const nlohmann::json& j);
// "Q" or a JSON object {"degree":..,"ramified":[..],"cyclic_subextension":..,"prime_set":[..]}.
FieldContext parse_field(const std::string& text);

// The primes p with [k(zeta_p):k] <= 2, or a certified finite superset.
struct PrimeSet {
    std::vector<std::uint64_t> primes;
    bool exact = false;
    std::string basis;
};

PrimeSet prime_set_S(const FieldContext& fc);
nlohmann::json to_json(const PrimeSet& s);

}  // namespace paramaudit
