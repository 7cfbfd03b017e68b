#include "mdl/lattice.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace mdl {

int popcount(Elem a) { return std::popcount(a.bits); }

GroundSet::GroundSet(std::vector<std::string> points) : points_(std::move(points)) {
    if (points_.empty())
        throw StructuralError("ground set must be nonempty");
    if (points_.size() > 64)
        throw StructuralError("ground set larger than 64 points is not supported");
    for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
        if (points_[i].empty())
            throw StructuralError("ground set labels must be nonempty");
        if (!index_.emplace(points_[i], i).second)
            throw StructuralError("duplicate ground set label: " + points_[i]);
    }
}

int GroundSet::index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end())
        throw StructuralError("unknown ground set label: " + label);
    return it->second;
}

Elem GroundSet::full() const {
    if (size() == 64) return {~std::uint64_t{0}};
    return {(std::uint64_t{1} << size()) - 1};
}

Elem GroundSet::element(std::span<const std::string> labels) const {
    Elem e;
    for (const auto& l : labels) e.bits |= std::uint64_t{1} << index(l);
    return e;
}

std::vector<std::string> GroundSet::labels_of(Elem e) const {
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i)
        if (e.bits >> i & 1) out.push_back(points_[i]);
    return out;
}

namespace {

void sort_unique(std::vector<Elem>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

Lattice::Lattice(GroundSet ground, std::vector<Elem> elems)
    : ground_(std::move(ground)), elems_(std::move(elems)) {
    sort_unique(elems_);
    const Elem full = ground_.full();
    for (Elem e : elems_)
        if (!leq(e, full))
            throw StructuralError("lattice element sticks out of the ground set");
    if (elems_.empty() || elems_.front() != bottom() || elems_.back() != full)
        throw StructuralError("lattice must contain bottom and top");
    if (bottom() == full)
        throw StructuralError("bottom equals top");
    // Closure under meet and join.  Quadratic, fine at this scale.
    for (size_t i = 0; i < elems_.size(); ++i)
        for (size_t j = i + 1; j < elems_.size(); ++j) {
            if (!contains(meet(elems_[i], elems_[j])))
                throw StructuralError("lattice not closed under meet");
            if (!contains(join(elems_[i], elems_[j])))
                throw StructuralError("lattice not closed under join");
        }
}

Lattice::Lattice(GroundSet ground, std::vector<Elem> elems, unchecked_t)
    : ground_(std::move(ground)), elems_(std::move(elems)) {
    sort_unique(elems_);
}

Lattice make_lattice_unchecked(GroundSet ground, std::vector<Elem> elems) {
    return Lattice(std::move(ground), std::move(elems), Lattice::unchecked_t{});
}

Lattice Lattice::powerset(GroundSet ground) {
    const int n = ground.size();
    if (n > 20)
        throw PreconditionError("refusing to materialize a powerset over more than 20 points");
    std::vector<Elem> elems;
    elems.reserve(std::size_t{1} << n);
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) elems.push_back({b});
    return make_lattice_unchecked(std::move(ground), std::move(elems));
}

Lattice Lattice::bounds_only(GroundSet ground) {
    std::vector<Elem> elems{Elem{0}, ground.full()};
    return make_lattice_unchecked(std::move(ground), std::move(elems));
}

bool Lattice::contains(Elem e) const {
    return std::binary_search(elems_.begin(), elems_.end(), e);
}

void Lattice::require_member(Elem e, const char* who) const {
    if (!contains(e))
        throw StructuralError(std::string(who) +
                              ": operand is not an element of this lattice (mismatched "
                              "ground set or foreign element)");
}

Elem Lattice::meet_of(Elem a, Elem b) const {
    require_member(a, "meet");
    require_member(b, "meet");
    return meet(a, b);
}

Elem Lattice::join_of(Elem a, Elem b) const {
    require_member(a, "join");
    require_member(b, "join");
    return join(a, b);
}

bool Lattice::is_sublattice_of(const Lattice& host) const {
    if (!(ground_ == host.ground_)) return false;
    for (Elem e : elems_)
        if (!host.contains(e)) return false;
    return true;
}

bool Lattice::complement_closed() const {
    const Elem full = top();
    for (Elem e : elems_)
        if (!contains({full.bits & ~e.bits})) return false;
    return true;
}

Elem Lattice::complement(Elem a) const {
    require_member(a, "complement");
    Elem c{top().bits & ~a.bits};
    require_member(c, "complement");
    return c;
}

Cover::Cover(std::vector<Elem> members) : members_(std::move(members)) {
    if (members_.empty())
        throw StructuralError("cover must have at least one member");
    sort_unique(members_);
}

bool Cover::has(Elem e) const {
    return std::binary_search(members_.begin(), members_.end(), e);
}

Elem Cover::sup() const {
    Elem s;
    for (Elem e : members_) s = join(s, e);
    return s;
}

Cover make_cover(const Lattice& host, std::vector<Elem> members) {
    Cover c(std::move(members));
    for (Elem e : c.members())
        if (!host.contains(e))
            throw StructuralError("cover member is not an element of the host lattice");
    if (c.sup() != host.top())
        throw StructuralError("cover members do not join to top");
    return c;
}

bool is_cover(const Lattice& host, std::span<const Elem> members) {
    if (members.empty()) return false;
    Elem s;
    for (Elem e : members) {
        if (!host.contains(e)) return false;
        s = join(s, e);
    }
    return s == host.top();
}

bool refines(const Cover& beta, const Cover& alpha) {
    for (Elem b : beta.members()) {
        bool below = false;
        for (Elem a : alpha.members())
            if (leq(b, a)) {
                below = true;
                break;
            }
        if (!below) return false;
    }
    return true;
}

bool mutually_refine(const Cover& a, const Cover& b) {
    return refines(a, b) && refines(b, a);
}

Cover cover_join(const Cover& a, const Cover& b) {
    std::set<Elem> out;
    for (Elem x : a.members())
        for (Elem y : b.members()) out.insert(meet(x, y));
    if (out.size() > 1) out.erase(Elem{0});
    return Cover(std::vector<Elem>(out.begin(), out.end()));
}

bool is_partition(const Cover& a) {
    auto ms = a.members();
    for (size_t i = 0; i < ms.size(); ++i)
        for (size_t j = i + 1; j < ms.size(); ++j)
            if (!is_bottom(meet(ms[i], ms[j]))) return false;
    return true;
}

Lattice generate_sublattice(const Lattice& host, std::span<const Elem> generators) {
    std::set<Elem> closure{host.bottom(), host.top()};
    for (Elem g : generators) {
        if (!host.contains(g))
            throw StructuralError("sublattice generator is not an element of the host");
        closure.insert(g);
    }
    // Fixpoint under pairwise meet/join; bounded by host size, so it terminates.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Elem> snapshot(closure.begin(), closure.end());
        for (size_t i = 0; i < snapshot.size(); ++i)
            for (size_t j = i + 1; j < snapshot.size(); ++j) {
                grew |= closure.insert(meet(snapshot[i], snapshot[j])).second;
                grew |= closure.insert(join(snapshot[i], snapshot[j])).second;
            }
    }
    return make_lattice_unchecked(host.ground(),
                                  std::vector<Elem>(closure.begin(), closure.end()));
}

Lattice intersect_lattices(std::span<const Lattice> lattices) {
    if (lattices.empty())
        throw StructuralError("intersection of an empty lattice family");
    const GroundSet& g = lattices.front().ground();
    std::vector<Elem> acc(lattices.front().elems().begin(), lattices.front().elems().end());
    for (size_t k = 1; k < lattices.size(); ++k) {
        if (!(lattices[k].ground() == g))
            throw StructuralError("lattice intersection across different ground sets");
        std::vector<Elem> next;
        for (Elem e : acc)
            if (lattices[k].contains(e)) next.push_back(e);
        acc = std::move(next);
    }
    // Intersection of closed families is closed and keeps both bounds.
    return make_lattice_unchecked(g, std::move(acc));
}

} // namespace mdl
