#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdl/errors.hpp"

namespace mdl {

// An element is an index set over a ground set of at most 64 points.
// Equality/ordering is on the raw bits, which is the canonical encoding.
struct Elem {
    std::uint64_t bits = 0;
    friend constexpr auto operator<=>(const Elem&, const Elem&) = default;
};

constexpr Elem meet(Elem a, Elem b) { return {a.bits & b.bits}; }
constexpr Elem join(Elem a, Elem b) { return {a.bits | b.bits}; }
constexpr bool leq(Elem a, Elem b) { return (a.bits & ~b.bits) == 0; }
constexpr Elem bottom_elem() { return {0}; }
constexpr bool is_bottom(Elem a) { return a.bits == 0; }

int popcount(Elem a);

class GroundSet {
public:
    explicit GroundSet(std::vector<std::string> points);

    int size() const { return static_cast<int>(points_.size()); }
    const std::string& label(int i) const { return points_.at(i); }
    const std::vector<std::string>& labels() const { return points_; }
    int index(const std::string& label) const; // throws StructuralError if unknown
    bool has(const std::string& label) const { return index_.count(label) != 0; }

    Elem full() const;
    Elem element(std::span<const std::string> labels) const;
    std::vector<std::string> labels_of(Elem e) const; // sorted by point index

    bool operator==(const GroundSet& o) const { return points_ == o.points_; }

private:
    std::vector<std::string> points_;
    std::unordered_map<std::string, int> index_;
};

// Finite distributive lattice of index sets, closed under meet and join,
// containing bottom (empty set) and top (full set).  Set lattices are
// automatically distributive, so closure is the only thing to validate.
class Lattice {
public:
    Lattice(GroundSet ground, std::vector<Elem> elems);

    static Lattice powerset(GroundSet ground);
    static Lattice bounds_only(GroundSet ground); // just {bottom, top}

    const GroundSet& ground() const { return ground_; }
    std::span<const Elem> elems() const { return elems_; }
    int size() const { return static_cast<int>(elems_.size()); }

    bool contains(Elem e) const;
    Elem bottom() const { return {0}; }
    Elem top() const { return ground_.full(); }

    // Checked operations: both operands must be members.
    Elem meet_of(Elem a, Elem b) const;
    Elem join_of(Elem a, Elem b) const;

    bool is_sublattice_of(const Lattice& host) const;
    bool complement_closed() const;
    Elem complement(Elem a) const; // requires complement_closed semantics for a

    bool operator==(const Lattice& o) const {
        return ground_ == o.ground_ && elems_ == o.elems_;
    }

private:
    struct unchecked_t {};
    Lattice(GroundSet ground, std::vector<Elem> elems, unchecked_t);

    void require_member(Elem e, const char* who) const;

    GroundSet ground_;
    std::vector<Elem> elems_; // sorted ascending by bits, unique

    friend Lattice make_lattice_unchecked(GroundSet, std::vector<Elem>);
};

// Internal: trusted construction from already-closed element families.
Lattice make_lattice_unchecked(GroundSet ground, std::vector<Elem> elems);

// A cover: finite set of elements whose join is top.  Members are kept
// sorted and deduplicated; set semantics throughout.
class Cover {
public:
    explicit Cover(std::vector<Elem> members);

    std::span<const Elem> members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool has(Elem e) const;
    Elem sup() const;

    bool operator==(const Cover& o) const { return members_ == o.members_; }
    bool operator<(const Cover& o) const { return members_ < o.members_; }

private:
    std::vector<Elem> members_;
};

// Validates membership of every member and sup == top of the host.
Cover make_cover(const Lattice& host, std::vector<Elem> members);

bool is_cover(const Lattice& host, std::span<const Elem> members);

// beta refines alpha (beta is finer): every member of beta lies below some
// member of alpha.  Quasiorder, not antisymmetric.
bool refines(const Cover& beta, const Cover& alpha);

bool mutually_refine(const Cover& a, const Cover& b);

// Pairwise meets of the two covers.  Drops bottom from the result when other
// members remain, so join stays inside bottom-free enumeration.
Cover cover_join(const Cover& a, const Cover& b);

bool is_partition(const Cover& a);

// Smallest sublattice of host containing generators and both bounds.
Lattice generate_sublattice(const Lattice& host, std::span<const Elem> generators);

// Elementwise intersection; all inputs must share the ground set.
Lattice intersect_lattices(std::span<const Lattice> lattices);

} // namespace mdl
