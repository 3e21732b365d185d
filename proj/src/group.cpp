#include "paramaudit/group.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

#include "paramaudit/error.hpp"
#include "paramaudit/numtheory.hpp"
#include "paramaudit/simd/kernels.hpp"

namespace paramaudit {

namespace {

constexpr std::size_t kCayleyMax = 1024;

std::uint64_t order_of_images(std::span<const Point> img) {
    thread_local std::vector<std::uint8_t> seen;
    seen.assign(img.size(), 0);
    std::uint64_t o = 1;
    for (std::size_t s = 0; s < img.size(); ++s) {
        if (seen[s]) continue;
        std::uint64_t len = 0;
        for (Point x = static_cast<Point>(s); !seen[x]; x = img[x]) {
            seen[x] = 1;
            ++len;
        }
        o = nt::lcm(o, len);
    }
    return o;
}

// Open-addressing index over a flat image buffer.
class FlatIndex {
public:
    FlatIndex(const std::vector<Point>& data, std::size_t degree) : data_(data), degree_(degree) {}

    void reserve(std::size_t n) {
        std::size_t cap = 16;
        while (cap < 2 * n + 2) cap <<= 1;
        slots_.assign(cap, 0);
    }

    std::optional<std::uint32_t> find(const Point* img, std::uint64_t h) const {
        std::size_t mask = slots_.size() - 1;
        for (std::size_t i = h & mask;; i = (i + 1) & mask) {
            std::uint32_t s = slots_[i];
            if (!s) return std::nullopt;
            if (std::equal(img, img + degree_, data_.data() + std::size_t(s - 1) * degree_)) return s - 1;
        }
    }

    void insert(std::uint32_t id, std::uint64_t h) {
        std::size_t mask = slots_.size() - 1;
        std::size_t i = h & mask;
        while (slots_[i]) i = (i + 1) & mask;
        slots_[i] = id + 1;
    }

    std::size_t capacity() const { return slots_.size(); }
    std::vector<std::uint32_t>& slots() { return slots_; }

private:
    const std::vector<Point>& data_;
    std::size_t degree_;
    std::vector<std::uint32_t> slots_;
};

}  // namespace

ElementTable ElementTable::enumerate(std::size_t degree, const std::vector<Perm>& generators,
                                     std::size_t bound) {
    const auto& k = simd::kernels();
    std::vector<Point> data(degree);
    std::iota(data.begin(), data.end(), Point{0});
    FlatIndex index(data, degree);
    index.reserve(64);
    index.insert(0, k.hash(data.data(), degree));
    std::size_t count = 1;
    std::vector<Point> buf(degree);
    for (std::size_t i = 0; i < count; ++i) {
        for (const Perm& s : generators) {
            k.compose(s.images().data(), data.data() + i * degree, buf.data(), degree);
            std::uint64_t h = k.hash(buf.data(), degree);
            if (index.find(buf.data(), h)) continue;
            if (count >= bound)
                fail(ErrorCode::OrderTooLarge,
                     "group order exceeds the enumeration bound " + std::to_string(bound));
            data.insert(data.end(), buf.begin(), buf.end());
            ++count;
            if (2 * count + 2 > index.capacity()) {
                index.reserve(count * 2);
                for (std::size_t j = 0; j < count; ++j)
                    index.insert(static_cast<std::uint32_t>(j), k.hash(data.data() + j * degree, degree));
            } else {
                index.insert(static_cast<std::uint32_t>(count - 1), h);
            }
        }
    }
    std::vector<std::uint32_t> ord(count);
    std::iota(ord.begin(), ord.end(), 0u);
    std::sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(data.begin() + a * degree, data.begin() + (a + 1) * degree,
                                            data.begin() + b * degree, data.begin() + (b + 1) * degree);
    });
    ElementTable t;
    t.degree_ = degree;
    t.size_ = count;
    t.data_.reserve(count * degree);
    for (std::uint32_t id : ord)
        t.data_.insert(t.data_.end(), data.begin() + id * degree, data.begin() + (id + 1) * degree);
    t.build_index();
    return t;
}

void ElementTable::build_index() {
    const auto& k = simd::kernels();
    FlatIndex index(data_, degree_);
    index.reserve(size_);
    for (std::size_t j = 0; j < size_; ++j)
        index.insert(static_cast<std::uint32_t>(j), k.hash(data_.data() + j * degree_, degree_));
    slots_ = std::move(index.slots());
}

Perm ElementTable::perm(ElemId id) const {
    auto img = images(id);
    return Perm(std::vector<Point>(img.begin(), img.end()));
}

std::optional<ElemId> ElementTable::find(std::span<const Point> img) const {
    if (img.size() != degree_) return std::nullopt;
    std::uint64_t h = simd::kernels().hash(img.data(), degree_);
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
        std::uint32_t s = slots_[i];
        if (!s) return std::nullopt;
        if (std::equal(img.begin(), img.end(), data_.data() + std::size_t(s - 1) * degree_)) return s - 1;
    }
}

ElemId ElementTable::index_of(std::span<const Point> img) const {
    auto id = find(img);
    if (!id) fail(ErrorCode::InvalidArgument, "permutation is not an element of the group");
    return *id;
}

Subset::Subset(std::size_t universe, std::vector<ElemId> members)
    : universe_(universe), members_(std::move(members)), bits_((universe + 63) / 64, 0) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (ElemId id : members_) {
        if (id >= universe) fail(ErrorCode::InvalidArgument, "subset element out of range");
        bits_[id >> 6] |= 1ull << (id & 63);
    }
}

Subset Subset::from_bits(std::size_t universe, std::vector<std::uint64_t> bits) {
    Subset s;
    s.universe_ = universe;
    s.bits_ = std::move(bits);
    s.bits_.resize((universe + 63) / 64, 0);
    for (std::size_t w = 0; w < s.bits_.size(); ++w) {
        std::uint64_t b = s.bits_[w];
        while (b) {
            s.members_.push_back(static_cast<ElemId>(w * 64 + __builtin_ctzll(b)));
            b &= b - 1;
        }
    }
    return s;
}

bool Subset::is_subset_of(const Subset& other) const {
    if (universe_ != other.universe_) return false;
    return simd::kernels().is_subset(bits_.data(), other.bits_.data(), bits_.size());
}

bool Subset::operator<(const Subset& o) const {
    if (members_.size() != o.members_.size()) return members_.size() < o.members_.size();
    return members_ < o.members_;
}

struct PermGroup::State {
    std::once_flag table_once;
    std::optional<ElementTable> table;
    std::exception_ptr table_error;

    std::once_flag aux_once;
    std::vector<ElemId> inverse;
    std::vector<ElemId> gen_ids;
    std::vector<std::uint64_t> orders;

    std::once_flag cayley_once;
    std::vector<ElemId> cayley;

    std::once_flag class_once;
    ClassPartition classes;
};

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators, GroupLimits limits)
    : degree_(degree), generators_(std::move(generators)), limits_(limits),
      state_(std::make_shared<State>()) {
    if (degree == 0) fail(ErrorCode::InvalidArgument, "permutation group of degree 0");
    for (const Perm& g : generators_)
        if (g.degree() != degree) fail(ErrorCode::InvalidArgument, "generator degree mismatch");
}

const ElementTable& PermGroup::table() const {
    std::call_once(state_->table_once, [this] {
        try {
            state_->table = ElementTable::enumerate(degree_, generators_, limits_.enumeration);
        } catch (...) {
            state_->table_error = std::current_exception();
        }
    });
    if (state_->table_error) std::rethrow_exception(state_->table_error);
    return *state_->table;
}

bool PermGroup::enumerable() const {
    try {
        table();
        return true;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::OrderTooLarge) return false;
        throw;
    }
}

void PermGroup::require_brute_force(const char* what) const {
    if (order() > limits_.brute_force)
        fail(ErrorCode::OrderTooLarge, std::string(what) + ": group order " + std::to_string(order()) +
                                           " exceeds the brute-force bound " +
                                           std::to_string(limits_.brute_force));
}

namespace {

ElemId compose_ids(const ElementTable& t, ElemId a, ElemId b) {
    thread_local std::vector<Point> buf;
    buf.resize(t.degree());
    simd::kernels().compose(t.images(a).data(), t.images(b).data(), buf.data(), t.degree());
    return t.index_of(buf);
}

}  // namespace

ElemId PermGroup::mul(ElemId a, ElemId b) const {
    const ElementTable& t = table();
    if (t.size() <= kCayleyMax) {
        std::call_once(state_->cayley_once, [&] {
            std::size_t n = t.size();
            state_->cayley.resize(n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    state_->cayley[i * n + j] = compose_ids(t, static_cast<ElemId>(i), static_cast<ElemId>(j));
        });
        return state_->cayley[std::size_t(a) * t.size() + b];
    }
    return compose_ids(t, a, b);
}

namespace {

void fill_aux(const PermGroup& G, const ElementTable& t, std::vector<ElemId>& inverse,
              std::vector<ElemId>& gen_ids, std::vector<std::uint64_t>& orders) {
    std::size_t n = t.size(), d = t.degree();
    inverse.resize(n);
    orders.resize(n);
    std::vector<Point> buf(d);
    for (std::size_t i = 0; i < n; ++i) {
        auto img = t.images(static_cast<ElemId>(i));
        for (std::size_t x = 0; x < d; ++x) buf[img[x]] = static_cast<Point>(x);
        inverse[i] = t.index_of(buf);
        orders[i] = order_of_images(img);
    }
    for (const Perm& g : G.generators()) gen_ids.push_back(t.index_of(g.images()));
}

}  // namespace

ElemId PermGroup::inv(ElemId a) const {
    const ElementTable& t = table();
    std::call_once(state_->aux_once, [&] { fill_aux(*this, t, state_->inverse, state_->gen_ids, state_->orders); });
    return state_->inverse[a];
}

const std::vector<ElemId>& PermGroup::generator_ids() const {
    inv(0);
    return state_->gen_ids;
}

const std::vector<std::uint64_t>& PermGroup::element_orders() const {
    inv(0);
    return state_->orders;
}

std::uint64_t PermGroup::element_order(ElemId a) const { return element_orders()[a]; }

ElemId PermGroup::power(ElemId a, long long k) const {
    return table().index_of(table().perm(a).pow(k).images());
}

const ClassPartition& PermGroup::class_partition() const {
    const ElementTable& t = table();
    std::call_once(state_->class_once, [&] {
        ClassPartition& cp = state_->classes;
        std::size_t n = t.size(), d = t.degree();
        const auto& orders = element_orders();
        constexpr std::uint32_t kNone = ~0u;
        std::vector<std::uint32_t> raw(n, kNone);
        std::vector<std::vector<ElemId>> members;
        std::vector<Point> buf(d);
        for (std::size_t x = 0; x < n; ++x) {
            if (raw[x] != kNone) continue;
            auto cid = static_cast<std::uint32_t>(members.size());
            members.emplace_back();
            auto& m = members.back();
            m.push_back(static_cast<ElemId>(x));
            raw[x] = cid;
            for (std::size_t q = 0; q < m.size(); ++q) {
                auto xi = t.images(m[q]);
                for (const Perm& g : generators_) {
                    // (g x g^-1)(g(i)) = g(x(i))
                    for (std::size_t i = 0; i < d; ++i) buf[g[i]] = g[xi[i]];
                    ElemId y = t.index_of(buf);
                    if (raw[y] == kNone) {
                        raw[y] = cid;
                        m.push_back(y);
                    }
                }
            }
            std::sort(m.begin(), m.end());
        }
        std::vector<std::uint32_t> ord(members.size());
        std::iota(ord.begin(), ord.end(), 0u);
        std::sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
            auto ka = std::make_tuple(orders[members[a][0]], members[a].size(), members[a][0]);
            auto kb = std::make_tuple(orders[members[b][0]], members[b].size(), members[b][0]);
            return ka < kb;
        });
        std::vector<std::uint32_t> rank(members.size());
        for (std::size_t i = 0; i < ord.size(); ++i) rank[ord[i]] = static_cast<std::uint32_t>(i);
        cp.class_of.resize(n);
        for (std::size_t x = 0; x < n; ++x) cp.class_of[x] = rank[raw[x]];
        for (std::uint32_t c : ord) {
            ConjClass cc;
            cc.representative_id = members[c][0];
            cc.representative = t.perm(cc.representative_id);
            cc.size = members[c].size();
            cc.element_order = orders[cc.representative_id];
            cc.parent_order = n;
            cp.classes.push_back(std::move(cc));
            cp.members.push_back(std::move(members[c]));
        }
    });
    return state_->classes;
}

std::uint64_t element_order(const Perm& g) { return g.order(); }

Subset trivial_subgroup(const PermGroup& G) { return Subset(G.order(), {0}); }

Subset whole_group(const PermGroup& G) {
    std::vector<ElemId> all(G.order());
    std::iota(all.begin(), all.end(), ElemId{0});
    return Subset(G.order(), std::move(all));
}

Subset subset_of(const PermGroup& G, std::vector<ElemId> ids) { return Subset(G.order(), std::move(ids)); }

namespace {

// Closure of <gens> as a bitset plus the list of members in BFS order.
struct Closure {
    std::vector<std::uint64_t> bits;
    std::vector<ElemId> elems;
};

Closure close(const PermGroup& G, const std::vector<ElemId>& gens) {
    std::size_t n = G.order();
    Closure c;
    c.bits.assign((n + 63) / 64, 0);
    c.elems.push_back(0);
    c.bits[0] |= 1;
    for (std::size_t i = 0; i < c.elems.size(); ++i) {
        for (ElemId s : gens) {
            ElemId y = G.mul(c.elems[i], s);
            if (!((c.bits[y >> 6] >> (y & 63)) & 1)) {
                c.bits[y >> 6] |= 1ull << (y & 63);
                c.elems.push_back(y);
            }
        }
    }
    return c;
}

bool has(const std::vector<std::uint64_t>& bits, ElemId y) { return (bits[y >> 6] >> (y & 63)) & 1; }

// Greedy: keep an element only when it is not in the span of the ones kept.
std::pair<Closure, std::vector<ElemId>> close_greedy(const PermGroup& G, std::span<const ElemId> cand) {
    std::vector<ElemId> kept;
    Closure c = close(G, kept);
    for (ElemId x : cand) {
        if (has(c.bits, x)) continue;
        kept.push_back(x);
        c = close(G, kept);
    }
    return {std::move(c), std::move(kept)};
}

// Normal closure inside the subgroup generated by ambient, starting from elems.
std::pair<Closure, std::vector<ElemId>> normal_closure_in(const PermGroup& G,
                                                          const std::vector<ElemId>& ambient,
                                                          std::span<const ElemId> elems) {
    auto [c, kept] = close_greedy(G, elems);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (ElemId k : ambient) {
            ElemId y = G.conj(k, kept[i]);
            if (has(c.bits, y)) continue;
            kept.push_back(y);
            c = close(G, kept);
            i = static_cast<std::size_t>(-1);  // restart the scan
            break;
        }
    }
    return {std::move(c), std::move(kept)};
}

}  // namespace

Subset generated_subgroup(const PermGroup& G, std::span<const ElemId> gens) {
    auto [c, kept] = close_greedy(G, gens);
    return Subset::from_bits(G.order(), std::move(c.bits));
}

std::vector<ElemId> generating_set(const PermGroup& G, const Subset& S) {
    // Prefer high-order elements so the set stays small.
    std::vector<ElemId> cand(S.members());
    const auto& ord = G.element_orders();
    std::stable_sort(cand.begin(), cand.end(), [&](ElemId a, ElemId b) { return ord[a] > ord[b]; });
    std::vector<ElemId> kept;
    Closure c = close(G, kept);
    for (ElemId x : cand) {
        if (c.elems.size() == S.size()) break;
        if (has(c.bits, x)) continue;
        kept.push_back(x);
        c = close(G, kept);
    }
    return kept;
}

Subset normal_closure(const PermGroup& G, std::span<const ElemId> elems) {
    auto [c, kept] = normal_closure_in(G, G.generator_ids(), elems);
    return Subset::from_bits(G.order(), std::move(c.bits));
}

bool is_subgroup(const PermGroup& G, const Subset& S) {
    if (S.universe() != G.order() || !S.contains(0)) return false;
    // the closure of a generating set drawn from S equals S iff S is closed
    return close(G, generating_set(G, S)).bits == S.bits();
}

bool is_normal(const PermGroup& G, const Subset& S) {
    if (S.universe() != G.order() || !S.contains(0)) return false;
    std::vector<ElemId> gens = generating_set(G, S);
    if (close(G, gens).bits != S.bits()) return false;
    for (ElemId h : gens)
        for (ElemId g : G.generator_ids())
            if (!S.contains(G.conj(g, h))) return false;
    return true;
}

PermGroup subgroup_as_group(const PermGroup& G, const Subset& S) {
    std::vector<Perm> gens;
    for (ElemId x : generating_set(G, S)) gens.push_back(G.table().perm(x));
    if (gens.empty()) gens.push_back(Perm(G.degree()));
    return PermGroup(G.degree(), std::move(gens), G.limits());
}

std::vector<ConjClass> conjugacy_classes(const PermGroup& G) { return G.class_partition().classes; }

std::size_t class_index(const PermGroup& G, const Perm& g) {
    return G.class_partition().class_of[G.table().index_of(g.images())];
}

ConjClass class_power(const ConjClass& C, long long i, const PermGroup& G) {
    const auto& cp = G.class_partition();
    return cp.classes[class_index(G, C.representative.pow(i))];
}

namespace {

struct BitsHash {
    std::size_t operator()(const std::vector<std::uint64_t>& b) const {
        return simd::kernels().hash(reinterpret_cast<const std::uint32_t*>(b.data()), b.size() * 2);
    }
};

std::vector<Subset> lattice_walk(const PermGroup& G, std::size_t target, std::size_t max_count) {
    // target == 0 means no order restriction.
    const auto& cp = G.class_partition();
    std::size_t n = G.order();
    auto divides_target = [&](std::size_t k) { return target == 0 || target % k == 0; };

    struct Node {
        std::vector<std::uint64_t> bits;
        std::vector<ElemId> gens;
        std::size_t size;
    };
    std::vector<Node> closures;
    std::unordered_map<std::vector<std::uint64_t>, std::size_t, BitsHash> seen_closure;
    for (std::size_t c = 1; c < cp.classes.size(); ++c) {
        // A normal subgroup containing the class has more than size elements
        // and order divisible by the element order.
        if (target != 0 && (target % cp.classes[c].element_order != 0 || cp.classes[c].size + 1 > target))
            continue;
        auto [cl, kept] = close_greedy(G, cp.members[c]);
        std::size_t sz = cl.elems.size();
        if (!divides_target(sz)) continue;
        if (seen_closure.emplace(cl.bits, closures.size()).second)
            closures.push_back(Node{std::move(cl.bits), std::move(kept), sz});
    }

    std::vector<Node> nodes;
    std::unordered_map<std::vector<std::uint64_t>, std::size_t, BitsHash> seen;
    {
        Closure triv = close(G, {});
        seen.emplace(triv.bits, 0);
        nodes.push_back(Node{std::move(triv.bits), {}, 1});
    }
    const auto& k = simd::kernels();
    std::vector<std::uint64_t> tmp;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (const Node& K : closures) {
            const Node& N = nodes[i];
            if (k.is_subset(K.bits.data(), N.bits.data(), N.bits.size())) continue;
            if (target != 0) {
                std::size_t inter = 0;
                for (std::size_t w = 0; w < N.bits.size(); ++w)
                    inter += static_cast<std::size_t>(__builtin_popcountll(N.bits[w] & K.bits[w]));
                std::size_t join = N.size / inter * K.size;
                if (!divides_target(join)) continue;
            }
            std::vector<ElemId> gens = N.gens;
            gens.insert(gens.end(), K.gens.begin(), K.gens.end());
            auto [cl, kept] = close_greedy(G, gens);
            if (seen.count(cl.bits)) continue;
            if (nodes.size() >= max_count)
                fail(ErrorCode::OrderTooLarge, "normal subgroup lattice exceeds " + std::to_string(max_count));
            std::size_t sz = cl.elems.size();
            seen.emplace(cl.bits, nodes.size());
            nodes.push_back(Node{std::move(cl.bits), std::move(kept), sz});
        }
    }
    std::vector<Subset> out;
    for (Node& nd : nodes)
        if (target == 0 || nd.size == target) out.push_back(Subset::from_bits(n, std::move(nd.bits)));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Subset> normal_subgroups(const PermGroup& G, std::size_t max_count) {
    G.require_brute_force("normal_subgroups");
    return lattice_walk(G, 0, max_count);
}

std::vector<Subset> normal_subgroups_of_order(const PermGroup& G, std::size_t order, std::size_t max_count) {
    G.require_brute_force("normal_subgroups_of_order");
    if (order == 0 || G.order() % order != 0) return {};
    return lattice_walk(G, order, max_count);
}

QuotientMap quotient_map(const PermGroup& G, const Subset& H) {
    if (!is_normal(G, H)) fail(ErrorCode::NotNormal, "subset is not a normal subgroup");
    std::size_t n = G.order();
    constexpr std::uint32_t kNone = ~0u;
    std::vector<std::uint32_t> coset(n, kNone);
    std::vector<ElemId> reps;
    for (std::size_t g = 0; g < n; ++g) {
        if (coset[g] != kNone) continue;
        auto c = static_cast<std::uint32_t>(reps.size());
        reps.push_back(static_cast<ElemId>(g));
        for (ElemId h : H.members()) coset[G.mul(static_cast<ElemId>(g), h)] = c;
    }
    std::size_t m = reps.size();
    std::vector<Perm> gens;
    for (ElemId s : G.generator_ids()) {
        std::vector<Point> img(m);
        for (std::size_t c = 0; c < m; ++c) img[c] = coset[G.mul(s, reps[c])];
        gens.emplace_back(std::move(img));
    }
    if (gens.empty()) gens.emplace_back(m);
    return QuotientMap{PermGroup(m, std::move(gens), G.limits()), std::move(coset), std::move(reps)};
}

PermGroup quotient(const PermGroup& G, const Subset& H) { return quotient_map(G, H).group; }

bool is_abelian(const PermGroup& G) {
    const auto& gens = G.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
    return true;
}

std::vector<std::uint64_t> invariants_from_order_counts(const std::vector<std::uint64_t>& orders) {
    std::uint64_t n = orders.size();
    // exps[p] = exponents a_i of the p-primary part, descending.
    std::map<std::uint64_t, std::vector<int>> exps;
    for (auto [p, e] : nt::factorize(n)) {
        std::vector<int> ge;  // ge[k-1] = #{i : a_i >= k}
        int prev_log = 0;
        std::uint64_t pk = 1;
        for (int kk = 1; kk <= e; ++kk) {
            pk *= p;
            std::uint64_t cnt = 0;
            for (std::uint64_t o : orders)
                if (pk % o == 0) ++cnt;
            int lg = 0;
            for (std::uint64_t c = cnt; c > 1; c /= p) ++lg;
            ge.push_back(lg - prev_log);
            prev_log = lg;
            if (lg == e) break;
        }
        std::vector<int> a;
        for (int r = ge.empty() ? 0 : ge[0]; r >= 1; --r) {
            int cnt = 0;
            for (int x : ge)
                if (x >= r) ++cnt;
            a.push_back(cnt);
        }
        exps[p] = a;  // ascending
    }
    std::size_t m = 0;
    for (auto& [p, a] : exps) m = std::max(m, a.size());
    std::vector<std::uint64_t> inv(m, 1);
    for (auto& [p, a] : exps) {
        // Largest exponents go to the last invariant factors.
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t pk = 1;
            for (int t = 0; t < a[i]; ++t) pk *= p;
            inv[m - a.size() + i] *= pk;
        }
    }
    return inv;
}

std::vector<std::uint64_t> abelian_invariants(const PermGroup& G) {
    if (!is_abelian(G)) fail(ErrorCode::InvalidArgument, "group is not abelian");
    return invariants_from_order_counts(G.element_orders());
}

bool is_cyclic(const PermGroup& G) {
    if (!is_abelian(G)) return false;
    for (std::uint64_t o : G.element_orders())
        if (o == G.order()) return true;
    return false;
}

Subset center(const PermGroup& G) {
    const ElementTable& t = G.table();
    std::vector<ElemId> z;
    std::vector<Point> a(G.degree()), b(G.degree());
    const auto& k = simd::kernels();
    for (std::size_t x = 0; x < t.size(); ++x) {
        auto xi = t.images(static_cast<ElemId>(x));
        bool central = true;
        for (const Perm& s : G.generators()) {
            k.compose(s.images().data(), xi.data(), a.data(), G.degree());
            k.compose(xi.data(), s.images().data(), b.data(), G.degree());
            if (a != b) {
                central = false;
                break;
            }
        }
        if (central) z.push_back(static_cast<ElemId>(x));
    }
    return Subset(t.size(), std::move(z));
}

Subset derived_subgroup_of(const PermGroup& G, const Subset& K) {
    std::vector<ElemId> gens = generating_set(G, K);
    std::vector<ElemId> comms;
    for (ElemId a : gens)
        for (ElemId b : gens) {
            ElemId c = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)));
            if (c != 0) comms.push_back(c);
        }
    auto [cl, kept] = normal_closure_in(G, gens, comms);
    return Subset::from_bits(G.order(), std::move(cl.bits));
}

Subset derived_subgroup(const PermGroup& G) { return derived_subgroup_of(G, whole_group(G)); }

std::vector<Subset> derived_series(const PermGroup& G) {
    std::vector<Subset> series{whole_group(G)};
    for (;;) {
        Subset next = derived_subgroup_of(G, series.back());
        if (next == series.back()) break;
        series.push_back(std::move(next));
    }
    return series;
}

bool is_solvable(const PermGroup& G) { return derived_series(G).back().size() == 1; }

bool is_solvable_subgroup(const PermGroup& G, const Subset& K) {
    Subset cur = K;
    for (;;) {
        if (cur.size() == 1) return true;
        Subset next = derived_subgroup_of(G, cur);
        if (next == cur) return false;
        cur = std::move(next);
    }
}

Subset squares_subgroup(const PermGroup& G) {
    std::vector<ElemId> sq;
    for (std::size_t x = 0; x < G.order(); ++x) sq.push_back(G.mul(static_cast<ElemId>(x), static_cast<ElemId>(x)));
    std::sort(sq.begin(), sq.end());
    sq.erase(std::unique(sq.begin(), sq.end()), sq.end());
    return generated_subgroup(G, sq);
}

std::size_t index_two_subgroup_count(const PermGroup& G) {
    std::size_t idx = G.order() / squares_subgroup(G).size();
    std::size_t r = 0;
    while ((std::size_t{1} << r) < idx) ++r;
    return (std::size_t{1} << r) - 1;
}

bool generates_maximal_cyclic(const PermGroup& G, ElemId g) {
    const auto& ord = G.element_orders();
    std::uint64_t o = ord[g];
    for (std::size_t h = 0; h < G.order(); ++h) {
        std::uint64_t m = ord[h];
        if (m <= o || m % o) continue;
        // <g> < <h> iff g is a power of h^(m/o)
        ElemId p = G.power(static_cast<ElemId>(h), static_cast<long long>(m / o));
        ElemId x = p;
        for (std::uint64_t j = 0; j < o; ++j) {
            if (x == g) return false;
            x = G.mul(x, p);
        }
    }
    return true;
}

bool generates_maximal_cyclic(const PermGroup& G, const Perm& g) {
    return generates_maximal_cyclic(G, G.table().index_of(g.images()));
}

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> class_profile(const PermGroup& G) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> p;
    for (const auto& c : G.class_partition().classes) p.emplace_back(c.element_order, c.size);
    std::sort(p.begin(), p.end());
    return p;
}

std::vector<std::uint64_t> order_histogram(const PermGroup& G) {
    std::vector<std::uint64_t> h(G.order() + 1, 0);
    for (std::uint64_t o : G.element_orders()) ++h[o];
    return h;
}

class IsoSearch {
public:
    IsoSearch(const PermGroup& a, const PermGroup& b) : A(a), B(b) {
        const auto& ca = A.class_partition();
        const auto& cb = B.class_partition();
        gens = generating_set(A, whole_group(A));
        for (ElemId x : gens) {
            std::vector<ElemId> cand;
            auto key = std::make_pair(A.element_order(x), ca.classes[ca.class_of[x]].size);
            for (std::size_t y = 0; y < B.order(); ++y) {
                auto ky = std::make_pair(B.element_order(static_cast<ElemId>(y)), cb.classes[cb.class_of[y]].size);
                if (ky == key) cand.push_back(static_cast<ElemId>(y));
            }
            candidates.push_back(std::move(cand));
        }
        // First image only up to conjugacy in B.
        if (!candidates.empty()) {
            std::vector<ElemId> reps;
            for (ElemId y : candidates[0])
                if (cb.classes[cb.class_of[y]].representative_id == y) reps.push_back(y);
            candidates[0] = reps;
        }
        images.resize(gens.size());
    }

    std::optional<std::vector<ElemId>> run() {
        if (gens.empty()) return std::vector<ElemId>{0};
        if (dfs(0)) return map;
        return std::nullopt;
    }

private:
    bool extend(std::size_t upto) {
        constexpr ElemId kNone = ~0u;
        map.assign(A.order(), kNone);
        used.assign(B.order(), 0);
        map[0] = 0;
        used[0] = 1;
        std::vector<ElemId> queue{0};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            ElemId u = queue[q];
            for (std::size_t i = 0; i <= upto; ++i) {
                ElemId v = A.mul(u, gens[i]);
                ElemId w = B.mul(map[u], images[i]);
                if (map[v] == kNone) {
                    if (used[w]) return false;
                    map[v] = w;
                    used[w] = 1;
                    queue.push_back(v);
                } else if (map[v] != w) {
                    return false;
                }
            }
        }
        return true;
    }

    bool dfs(std::size_t i) {
        for (ElemId y : candidates[i]) {
            images[i] = y;
            if (!extend(i)) continue;
            if (i + 1 == gens.size()) return true;
            if (dfs(i + 1)) return true;
        }
        return false;
    }

    const PermGroup& A;
    const PermGroup& B;
    std::vector<ElemId> gens;
    std::vector<std::vector<ElemId>> candidates;
    std::vector<ElemId> images;
    std::vector<ElemId> map;
    std::vector<std::uint8_t> used;
};

}  // namespace

std::optional<std::vector<ElemId>> find_isomorphism(const PermGroup& G1, const PermGroup& G2) {
    G1.require_brute_force("is_isomorphic");
    G2.require_brute_force("is_isomorphic");
    if (G1.order() != G2.order()) return std::nullopt;
    if (order_histogram(G1) != order_histogram(G2)) return std::nullopt;
    if (is_abelian(G1) != is_abelian(G2)) return std::nullopt;
    if (class_profile(G1) != class_profile(G2)) return std::nullopt;
    return IsoSearch(G1, G2).run();
}

bool is_isomorphic(const PermGroup& G1, const PermGroup& G2) {
    G1.require_brute_force("is_isomorphic");
    G2.require_brute_force("is_isomorphic");
    if (G1.order() != G2.order()) return false;
    if (order_histogram(G1) != order_histogram(G2)) return false;
    bool ab = is_abelian(G1);
    if (ab != is_abelian(G2)) return false;
    // Finite abelian groups are determined by their element order counts.
    if (ab) return true;
    return find_isomorphism(G1, G2).has_value();
}

FiberPower fiber_power(const PermGroup& G, const Subset& H, std::size_t n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "fiber power exponent must be at least 1");
    if (!is_normal(G, H)) fail(ErrorCode::NotNormal, "kernel is not normal");
    std::uint64_t target = G.order();
    for (std::size_t i = 1; i < n; ++i) {
        target *= H.size();
        if (target > G.limits().enumeration)
            fail(ErrorCode::OrderTooLarge, "fiber power order exceeds the enumeration bound");
    }
    std::size_t d = G.degree();
    std::size_t D = d * n;
    auto embed = [&](const std::vector<std::span<const Point>>& coords) {
        std::vector<Point> img(D);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t x = 0; x < d; ++x) img[i * d + x] = static_cast<Point>(i * d + coords[i][x]);
        return Perm(std::move(img));
    };
    const ElementTable& t = G.table();
    std::vector<Perm> gens;
    for (ElemId s : G.generator_ids()) gens.push_back(embed(std::vector<std::span<const Point>>(n, t.images(s))));
    std::vector<ElemId> hgens = generating_set(G, H);
    for (std::size_t i = 0; i < n; ++i)
        for (ElemId h : hgens) {
            std::vector<std::span<const Point>> coords(n, t.images(0));
            coords[i] = t.images(h);
            gens.push_back(embed(coords));
        }
    if (gens.empty()) gens.emplace_back(D);
    PermGroup P(D, std::move(gens), G.limits());
    const ElementTable& pt = P.table();
    if (pt.size() != target) fail(ErrorCode::InvalidArgument, "fiber power has unexpected order");

    std::vector<Point> block(d);
    auto coord = [&](ElemId e, std::size_t i) {
        auto img = pt.images(e);
        for (std::size_t x = 0; x < d; ++x) block[x] = static_cast<Point>(img[i * d + x] - i * d);
        return t.index_of(block);
    };
    std::vector<ElemId> nmem;
    std::vector<std::vector<ElemId>> nimem(n);
    for (std::size_t e = 0; e < pt.size(); ++e) {
        bool inN = true;
        std::vector<ElemId> cs(n);
        for (std::size_t i = 0; i < n; ++i) {
            cs[i] = coord(static_cast<ElemId>(e), i);
            if (!H.contains(cs[i])) inN = false;
        }
        if (!inN) continue;
        nmem.push_back(static_cast<ElemId>(e));
        for (std::size_t i = 0; i < n; ++i)
            if (cs[i] == 0) nimem[i].push_back(static_cast<ElemId>(e));
    }
    FiberPower fp{G, H, n, P, Subset(pt.size(), std::move(nmem)), {}};
    for (auto& m : nimem) fp.N_i.emplace_back(pt.size(), std::move(m));

    PermGroup GH = quotient(G, H);
    fp.quotient_by_N_isomorphic_to_base_quotient = is_isomorphic(quotient(P, fp.N), GH);
    fp.quotients_by_N_i_isomorphic_to_base = true;
    for (const Subset& Ni : fp.N_i)
        if (!is_isomorphic(quotient(P, Ni), G)) fp.quotients_by_N_i_isomorphic_to_base = false;
    return fp;
}

}  // namespace paramaudit
