#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wga/errors.hpp"

namespace wga {

/// A finitely generated discrete Abelian group Z^d x Z_{m_1} x ... x Z_{m_k},
/// written additively.
struct GroupSpec {
    int free_rank = 0;                    // d >= 0
    std::vector<std::int64_t> torsion_orders; // each m_i >= 2

    GroupSpec() = default;
    GroupSpec(int d, std::vector<std::int64_t> torsion);

    std::size_t num_axes() const { return static_cast<std::size_t>(free_rank) + torsion_orders.size(); }
    bool is_trivial() const { return free_rank == 0 && torsion_orders.empty(); }
    bool is_finite() const { return free_rank == 0; }

    /// Product of torsion orders; only meaningful for finite groups.
    std::int64_t finite_order() const;

    bool operator==(const GroupSpec& other) const = default;

    /// Textual form "Z", "Z^2xZ_4", "1" (trivial).
    std::string to_string() const;
};

/// An element of a GroupSpec: integer vector on the free axes, reduced
/// residues on the torsion axes.
struct GroupElement {
    std::vector<std::int64_t> free;    // length = spec.free_rank
    std::vector<std::int64_t> torsion; // entry i in [0, m_i)

    bool operator==(const GroupElement& other) const = default;

    /// Lexicographic order over (free, torsion); used as the canonical
    /// deterministic ordering throughout.
    bool operator<(const GroupElement& other) const;

    std::string to_string() const;
};

GroupSpec make_group_spec(int free_rank, std::vector<std::int64_t> torsion_orders);

/// The identity element of the group.
GroupElement identity_element(const GroupSpec& spec);

/// Element with the given coordinates (free axes first, then torsion);
/// torsion entries are reduced modulo m_i.
GroupElement make_element(const GroupSpec& spec, const std::vector<std::int64_t>& coords);

bool element_belongs(const GroupSpec& spec, const GroupElement& a);

GroupElement add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupSpec& spec, const GroupElement& a);

/// n·a for any integer n; n = 0 yields the identity. Overflow on a free
/// coordinate is an error, never wraparound.
GroupElement multiple(const GroupSpec& spec, const GroupElement& a, std::int64_t n);

/// Default enumeration cap; WGA_CAP_ELEMENTS overrides it.
std::int64_t default_enumeration_cap();

/// All elements with max-norm of the free part <= radius, crossed with all
/// torsion residues, in lexicographic order. Throws ResourceError when the
/// cardinality exceeds the cap.
std::vector<GroupElement> enumerate_ball(const GroupSpec& spec, std::int64_t radius,
                                         std::int64_t cap = default_enumeration_cap());

/// Same point set as enumerate_ball, ordered outward from the identity:
/// increasing max-norm, then by |coordinate| with the positive sign first.
/// Scans that report a "first witness" use this order.
std::vector<GroupElement> enumerate_ball_outward(const GroupSpec& spec, std::int64_t radius,
                                                 std::int64_t cap = default_enumeration_cap());

/// Unit generator along the given free axis (+1 or -1) or torsion axis (+1).
GroupElement axis_generator(const GroupSpec& spec, std::size_t axis, int sign = +1);

} // namespace wga
