#include "paramaudit/perm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "paramaudit/error.hpp"
#include "paramaudit/numtheory.hpp"
#include "paramaudit/simd/kernels.hpp"

namespace paramaudit {

Perm::Perm(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
        if (p >= images_.size() || seen[p])
            fail(ErrorCode::InvalidArgument, "image list is not a bijection");
        seen[p] = true;
    }
}

Perm Perm::from_one_based(std::span<const std::int64_t> images) {
    std::vector<Point> v;
    v.reserve(images.size());
    for (std::int64_t x : images) {
        if (x < 1 || x > static_cast<std::int64_t>(images.size()))
            fail(ErrorCode::InvalidArgument, "image " + std::to_string(x) + " out of range");
        v.push_back(static_cast<Point>(x - 1));
    }
    return Perm(std::move(v));
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            Point a = c[i];
            if (a >= degree || used[a]) fail(ErrorCode::InvalidArgument, "bad cycle notation");
            used[a] = true;
            img[a] = c[(i + 1) % c.size()];
        }
    }
    return Perm(std::move(img));
}

Perm Perm::parse_cycles(std::size_t degree, std::string_view text) {
    std::vector<std::vector<Point>> cycles;
    std::vector<Point>* cur = nullptr;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '(') {
            if (cur) fail(ErrorCode::ParseError, "nested cycle");
            cycles.emplace_back();
            cur = &cycles.back();
            ++i;
        } else if (c == ')') {
            if (!cur) fail(ErrorCode::ParseError, "unbalanced cycle");
            cur = nullptr;
            ++i;
        } else if (c == ' ' || c == ',') {
            ++i;
        } else if (c >= '0' && c <= '9') {
            if (!cur) fail(ErrorCode::ParseError, "point outside a cycle");
            std::size_t v = 0;
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
            if (v < 1 || v > degree) fail(ErrorCode::ParseError, "point out of range in cycle");
            cur->push_back(static_cast<Point>(v - 1));
        } else {
            fail(ErrorCode::ParseError, std::string("unexpected character '") + c + "' in cycle");
        }
    }
    if (cur) fail(ErrorCode::ParseError, "unterminated cycle");
    return from_cycles(degree, cycles);
}

Perm Perm::operator*(const Perm& rhs) const {
    if (rhs.degree() != degree()) fail(ErrorCode::InvalidArgument, "degree mismatch");
    Perm out;
    out.images_.resize(degree());
    simd::kernels().compose(images_.data(), rhs.images_.data(), out.images_.data(), degree());
    return out;
}

Perm Perm::inverse() const {
    Perm out;
    out.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
    return out;
}

Perm Perm::pow(long long k) const {
    // Walk each cycle instead of repeated squaring.
    std::vector<Point> img(degree());
    std::vector<bool> seen(degree(), false);
    std::vector<Point> cyc;
    for (std::size_t s = 0; s < degree(); ++s) {
        if (seen[s]) continue;
        cyc.clear();
        for (Point x = static_cast<Point>(s); !seen[x]; x = images_[x]) {
            seen[x] = true;
            cyc.push_back(x);
        }
        long long len = static_cast<long long>(cyc.size());
        long long sh = ((k % len) + len) % len;
        for (long long i = 0; i < len; ++i) img[cyc[i]] = cyc[(i + sh) % len];
    }
    Perm out;
    out.images_ = std::move(img);
    return out;
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < degree(); ++i)
        if (images_[i] != i) return false;
    return true;
}

std::vector<std::size_t> Perm::cycle_type() const {
    std::vector<std::size_t> t;
    std::vector<bool> seen(degree(), false);
    for (std::size_t s = 0; s < degree(); ++s) {
        if (seen[s]) continue;
        std::size_t len = 0;
        for (Point x = static_cast<Point>(s); !seen[x]; x = images_[x]) {
            seen[x] = true;
            ++len;
        }
        t.push_back(len);
    }
    std::sort(t.begin(), t.end());
    return t;
}

std::uint64_t Perm::order() const {
    std::uint64_t o = 1;
    for (std::size_t len : cycle_type()) o = nt::lcm(o, len);
    return o;
}

int Perm::sign() const {
    std::size_t even_cycles = 0;
    for (std::size_t len : cycle_type())
        if (len % 2 == 0) ++even_cycles;
    return even_cycles % 2 ? -1 : 1;
}

std::vector<std::int64_t> Perm::to_one_based() const {
    std::vector<std::int64_t> v;
    v.reserve(degree());
    for (Point p : images_) v.push_back(static_cast<std::int64_t>(p) + 1);
    return v;
}

std::string Perm::to_cycle_string() const {
    std::ostringstream os;
    std::vector<bool> seen(degree(), false);
    for (std::size_t s = 0; s < degree(); ++s) {
        if (seen[s] || images_[s] == s) continue;
        os << '(';
        bool first = true;
        for (Point x = static_cast<Point>(s); !seen[x]; x = images_[x]) {
            seen[x] = true;
            if (!first) os << ' ';
            os << x + 1;
            first = false;
        }
        os << ')';
    }
    std::string out = os.str();
    return out.empty() ? "()" : out;
}

std::string cycle_type_label(const std::vector<std::size_t>& type) {
    std::map<std::size_t, std::size_t> mult;
    for (std::size_t len : type) ++mult[len];
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (auto [len, m] : mult) {
        if (!first) os << ' ';
        os << len << '^' << m;
        first = false;
    }
    os << ']';
    return os.str();
}

}  // namespace paramaudit
