#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace paramaudit {

using Point = std::uint32_t;

// A permutation of {0..degree-1} stored as its image list. The product
// p * q applies q first: (p * q)(x) = p(q(x)).
class Perm {
public:
    Perm() = default;
    explicit Perm(std::size_t degree);
    explicit Perm(std::vector<Point> images);

    static Perm from_one_based(std::span<const std::int64_t> images);
    // Cycles in 1-based notation, e.g. "(1 2 3)(4 5)" or "(1,2,3)".
    static Perm parse_cycles(std::size_t degree, std::string_view text);
    static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

    std::size_t degree() const { return images_.size(); }
    Point operator[](std::size_t i) const { return images_[i]; }
    std::span<const Point> images() const { return images_; }

    Perm operator*(const Perm& rhs) const;
    Perm inverse() const;
    Perm pow(long long k) const;
    bool is_identity() const;
    std::uint64_t order() const;
    // Cycle lengths including fixed points, ascending.
    std::vector<std::size_t> cycle_type() const;
    int sign() const;

    std::vector<std::int64_t> to_one_based() const;
    std::string to_cycle_string() const;

    auto operator<=>(const Perm&) const = default;
    bool operator==(const Perm&) const = default;

private:
    std::vector<Point> images_;
};

// "[1^2 4^1]" style label from a cycle type.
std::string cycle_type_label(const std::vector<std::size_t>& type);

}  // namespace paramaudit
