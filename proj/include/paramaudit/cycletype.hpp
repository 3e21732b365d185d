#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace paramaudit {

// Cycle lengths of a permutation of {1..n}, fixed points included, ascending.
using CycleType = std::vector<std::size_t>;

CycleType normalize_type(CycleType t);
std::size_t type_degree(const CycleType& t);
// lcm of the lengths; Overflow past 64 bits.
std::uint64_t type_order(const CycleType& t);
int type_sign(const CycleType& t);
// Type of sigma^k for sigma of type t.
CycleType type_power(const CycleType& t, std::uint64_t k);
// True when some power of a permutation of type s has type t.
bool type_is_power_of(const CycleType& t, const CycleType& s);
// |class| = n! / prod(l^m_l m_l!); Overflow past 64 bits.
std::uint64_t type_class_size(const CycleType& t);

// Closed form: t is not maximal-cyclic iff for some prime p there is a
// p-th root of order p * ord(t). Such a root exists iff either p divides a
// length and every length divisible by p occurs a multiple of p times, or p
// divides no length and some length occurs at least p times.
bool type_maximal_cyclic(const CycleType& t);
// Definitional oracle: no type of larger order powers to t. Walks all
// partitions of n; OrderTooLarge past `cap` partitions.
bool type_maximal_cyclic_search(const CycleType& t, std::size_t cap = 200'000);

// All partitions of n (ascending parts), OrderTooLarge past cap.
std::vector<CycleType> partitions(std::size_t n, std::size_t cap = 2'000'000);
void for_each_partition(std::size_t n, const std::function<bool(const CycleType&)>& f);

// "[1^2 4^1]"
std::string type_label(const CycleType& t);
// Accepts "[1^2 4^1]", "1^2 4", "1,1,4".
CycleType parse_cycle_type(std::string_view text);

}  // namespace paramaudit
