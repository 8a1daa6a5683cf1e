#include "wga/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace wga {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError("integer overflow in group element addition");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError("integer overflow in group element multiple");
    return out;
}

std::int64_t checked_neg(std::int64_t a) {
    if (a == INT64_MIN) throw OverflowError("integer overflow negating group element");
    return -a;
}

std::int64_t mod_reduce(std::int64_t v, std::int64_t m) {
    std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

} // namespace

GroupSpec::GroupSpec(int d, std::vector<std::int64_t> torsion)
    : free_rank(d), torsion_orders(std::move(torsion)) {
    if (d < 0) throw DomainError("free rank must be nonnegative");
    for (auto m : torsion_orders)
        if (m < 2) throw DomainError("torsion orders must be >= 2");
}

std::int64_t GroupSpec::finite_order() const {
    std::int64_t n = 1;
    for (auto m : torsion_orders) n = checked_mul(n, m);
    return n;
}

std::string GroupSpec::to_string() const {
    if (is_trivial()) return "1";
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
        os << "Z";
        first = false;
    } else if (free_rank > 1) {
        os << "Z^" << free_rank;
        first = false;
    }
    for (auto m : torsion_orders) {
        if (!first) os << "x";
        os << "Z_" << m;
        first = false;
    }
    return os.str();
}

bool GroupElement::operator<(const GroupElement& other) const {
    if (free != other.free) return free < other.free;
    return torsion < other.torsion;
}

std::string GroupElement::to_string() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (auto v : free) {
        if (!first) os << ",";
        os << v;
        first = false;
    }
    for (auto v : torsion) {
        if (!first) os << ",";
        os << v;
        first = false;
    }
    os << ")";
    return os.str();
}

GroupSpec make_group_spec(int free_rank, std::vector<std::int64_t> torsion_orders) {
    return GroupSpec(free_rank, std::move(torsion_orders));
}

GroupElement identity_element(const GroupSpec& spec) {
    GroupElement e;
    e.free.assign(static_cast<std::size_t>(spec.free_rank), 0);
    e.torsion.assign(spec.torsion_orders.size(), 0);
    return e;
}

GroupElement make_element(const GroupSpec& spec, const std::vector<std::int64_t>& coords) {
    if (coords.size() != spec.num_axes())
        throw DomainError("element coordinate count does not match group spec");
    GroupElement e;
    e.free.assign(coords.begin(), coords.begin() + spec.free_rank);
    e.torsion.resize(spec.torsion_orders.size());
    for (std::size_t i = 0; i < spec.torsion_orders.size(); ++i)
        e.torsion[i] = mod_reduce(coords[spec.free_rank + i], spec.torsion_orders[i]);
    return e;
}

bool element_belongs(const GroupSpec& spec, const GroupElement& a) {
    if (a.free.size() != static_cast<std::size_t>(spec.free_rank)) return false;
    if (a.torsion.size() != spec.torsion_orders.size()) return false;
    for (std::size_t i = 0; i < a.torsion.size(); ++i)
        if (a.torsion[i] < 0 || a.torsion[i] >= spec.torsion_orders[i]) return false;
    return true;
}

namespace {
void require_member(const GroupSpec& spec, const GroupElement& a, const char* who) {
    if (!element_belongs(spec, a))
        throw DomainError(std::string(who) + ": element does not belong to the group spec");
}
} // namespace

GroupElement add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    require_member(spec, a, "add");
    require_member(spec, b, "add");
    GroupElement out = a;
    for (std::size_t i = 0; i < out.free.size(); ++i)
        out.free[i] = checked_add(a.free[i], b.free[i]);
    for (std::size_t i = 0; i < out.torsion.size(); ++i)
        out.torsion[i] = mod_reduce(a.torsion[i] + b.torsion[i], spec.torsion_orders[i]);
    return out;
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& a) {
    require_member(spec, a, "inverse");
    GroupElement out = a;
    for (auto& v : out.free) v = checked_neg(v);
    for (std::size_t i = 0; i < out.torsion.size(); ++i)
        out.torsion[i] = mod_reduce(-a.torsion[i], spec.torsion_orders[i]);
    return out;
}

GroupElement multiple(const GroupSpec& spec, const GroupElement& a, std::int64_t n) {
    require_member(spec, a, "multiple");
    GroupElement out = identity_element(spec);
    for (std::size_t i = 0; i < out.free.size(); ++i)
        out.free[i] = checked_mul(a.free[i], n);
    for (std::size_t i = 0; i < out.torsion.size(); ++i) {
        std::int64_t m = spec.torsion_orders[i];
        out.torsion[i] = mod_reduce(mod_reduce(n, m) * a.torsion[i], m);
    }
    return out;
}

std::int64_t default_enumeration_cap() {
    if (const char* env = std::getenv("WGA_CAP_ELEMENTS")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10'000'000;
}

std::vector<GroupElement> enumerate_ball(const GroupSpec& spec, std::int64_t radius, std::int64_t cap) {
    if (radius < 0) throw DomainError("enumerate_ball: radius must be nonnegative");

    std::int64_t count = 1;
    std::int64_t side = 2 * radius + 1;
    for (int j = 0; j < spec.free_rank; ++j) {
        if (__builtin_mul_overflow(count, side, &count) || count > cap)
            throw ResourceError("enumerate_ball: cardinality exceeds the enumeration cap", cap);
    }
    for (auto m : spec.torsion_orders) {
        if (__builtin_mul_overflow(count, m, &count) || count > cap)
            throw ResourceError("enumerate_ball: cardinality exceeds the enumeration cap", cap);
    }

    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(count));
    GroupElement cur = identity_element(spec);
    for (auto& v : cur.free) v = -radius;

    // Odometer over free coordinates in [-radius, radius] and torsion
    // residues in [0, m_i), most significant axis first.
    while (true) {
        out.push_back(cur);
        std::size_t k = spec.num_axes();
        while (k > 0) {
            --k;
            if (k < static_cast<std::size_t>(spec.free_rank)) {
                if (cur.free[k] < radius) {
                    ++cur.free[k];
                    break;
                }
                cur.free[k] = -radius;
            } else {
                std::size_t t = k - spec.free_rank;
                if (cur.torsion[t] + 1 < spec.torsion_orders[t]) {
                    ++cur.torsion[t];
                    break;
                }
                cur.torsion[t] = 0;
            }
            if (k == 0) return out;
        }
        if (spec.num_axes() == 0) return out;
    }
}

std::vector<GroupElement> enumerate_ball_outward(const GroupSpec& spec, std::int64_t radius, std::int64_t cap) {
    auto out = enumerate_ball(spec, radius, cap);
    auto norm = [](const GroupElement& e) {
        std::int64_t n = 0;
        for (auto v : e.free) n = std::max(n, v < 0 ? -v : v);
        return n;
    };
    std::stable_sort(out.begin(), out.end(), [&](const GroupElement& a, const GroupElement& b) {
        std::int64_t na = norm(a), nb = norm(b);
        if (na != nb) return na < nb;
        // abs-then-sign lexicographic, positive before negative
        for (std::size_t i = 0; i < a.free.size(); ++i) {
            std::int64_t aa = a.free[i] < 0 ? -a.free[i] : a.free[i];
            std::int64_t ab = b.free[i] < 0 ? -b.free[i] : b.free[i];
            if (aa != ab) return aa < ab;
            if (a.free[i] != b.free[i]) return a.free[i] > b.free[i];
        }
        return a.torsion < b.torsion;
    });
    return out;
}

GroupElement axis_generator(const GroupSpec& spec, std::size_t axis, int sign) {
    if (axis >= spec.num_axes()) throw DomainError("axis_generator: axis out of range");
    GroupElement g = identity_element(spec);
    if (axis < static_cast<std::size_t>(spec.free_rank)) {
        g.free[axis] = sign >= 0 ? 1 : -1;
    } else {
        std::size_t t = axis - spec.free_rank;
        g.torsion[t] = sign >= 0 ? 1 : spec.torsion_orders[t] - 1;
    }
    return g;
}

} // namespace wga
