#include "mdl/action.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace mdl {

PointPerm PointPerm::identity(int n) {
    PointPerm p;
    p.fwd_.resize(n);
    std::iota(p.fwd_.begin(), p.fwd_.end(), 0);
    return p;
}

PointPerm PointPerm::from_map(std::vector<int> fwd) {
    const int n = static_cast<int>(fwd.size());
    std::vector<bool> seen(n, false);
    for (int v : fwd) {
        if (v < 0 || v >= n || seen[v])
            throw StructuralError("permutation map is not a bijection");
        seen[v] = true;
    }
    PointPerm p;
    p.fwd_ = std::move(fwd);
    return p;
}

PointPerm PointPerm::cycle(int n) {
    std::vector<int> fwd(n);
    for (int i = 0; i < n; ++i) fwd[i] = (i + 1) % n;
    return from_map(std::move(fwd));
}

PointPerm PointPerm::swap2(int n, int i, int j) {
    auto p = identity(n);
    std::swap(p.fwd_[i], p.fwd_[j]);
    return p;
}

PointPerm PointPerm::compose(const PointPerm& then) const {
    if (size() != then.size())
        throw StructuralError("composing permutations of different sizes");
    PointPerm out;
    out.fwd_.resize(fwd_.size());
    for (int x = 0; x < size(); ++x) out.fwd_[x] = fwd_[then.fwd_[x]];
    return out;
}

PointPerm PointPerm::inverse() const {
    PointPerm out;
    out.fwd_.resize(fwd_.size());
    for (int x = 0; x < size(); ++x) out.fwd_[fwd_[x]] = x;
    return out;
}

PointPerm PointPerm::power(int k) const {
    PointPerm base = k >= 0 ? *this : inverse();
    int e = std::abs(k);
    PointPerm acc = identity(size());
    while (e-- > 0) acc = acc.compose(base);
    return acc;
}

Elem PointPerm::preimage(Elem u) const {
    Elem out;
    for (int x = 0; x < size(); ++x)
        if (u.bits >> fwd_[x] & 1) out.bits |= std::uint64_t{1} << x;
    return out;
}

bool PointPerm::is_identity() const {
    for (int x = 0; x < size(); ++x)
        if (fwd_[x] != x) return false;
    return true;
}

bool PointPerm::commutes_with(const PointPerm& o) const {
    return compose(o) == o.compose(*this);
}

GroupAction GroupAction::trivial(int ground_size) {
    return GroupAction{0, {}, ground_size};
}

GroupAction GroupAction::cyclic(int ground_size) {
    return GroupAction{1, {PointPerm::cycle(ground_size)}, ground_size};
}

void validate_action(const GroupAction& act, const Lattice& host, const Measurement* m) {
    if (act.dimension < 0 || act.dimension != static_cast<int>(act.generators.size()))
        throw StructuralError("action dimension does not match generator count");
    if (act.ground_size != host.ground().size())
        throw StructuralError("action ground size does not match the lattice");
    for (const auto& g : act.generators)
        if (g.size() != act.ground_size)
            throw StructuralError("generator permutation size mismatch");
    for (size_t i = 0; i < act.generators.size(); ++i)
        for (size_t j = i + 1; j < act.generators.size(); ++j)
            if (!act.generators[i].commutes_with(act.generators[j]))
                throw StructuralError("action generators must commute");
    for (const auto& g : act.generators) {
        const PointPerm inv = g.inverse();
        for (Elem e : host.elems()) {
            if (!host.contains(g.preimage(e)) || !host.contains(inv.preimage(e)))
                throw StructuralError("lattice is not closed under the action");
            if (m != nullptr) {
                if (std::abs((*m)(g.preimage(e)) - (*m)(e)) > kMeasureTol)
                    throw StructuralError("measurement is not action-invariant");
            }
        }
    }
}

namespace {

PointPerm group_element_perm(const GroupAction& a, std::span<const int> g) {
    if (static_cast<int>(g.size()) != a.dimension)
        throw StructuralError("group element arity does not match the action dimension");
    PointPerm acc = PointPerm::identity(a.ground_size);
    for (int i = 0; i < a.dimension; ++i) acc = acc.compose(a.generators[i].power(g[i]));
    return acc;
}

} // namespace

Elem act(const GroupAction& a, std::span<const int> g, Elem u) {
    return group_element_perm(a, g).preimage(u);
}

Cover act_on_cover(const GroupAction& a, std::span<const int> g, const Cover& alpha) {
    const PointPerm p = group_element_perm(a, g);
    std::vector<Elem> out;
    out.reserve(alpha.members().size());
    for (Elem e : alpha.members()) out.push_back(p.preimage(e));
    return Cover(std::move(out));
}

std::vector<std::vector<int>> box_members(const FolnerBox& box) {
    if (box.dim < 0 || box.side < 1)
        throw PreconditionError("Folner box needs dim >= 0 and side >= 1");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(box.dim, 0);
    while (true) {
        out.push_back(cur);
        int k = box.dim - 1;
        while (k >= 0 && cur[k] == box.side - 1) cur[k--] = 0;
        if (k < 0) break;
        ++cur[k];
    }
    return out;
}

long long box_size(const FolnerBox& box) {
    long long s = 1;
    for (int i = 0; i < box.dim; ++i) s *= box.side;
    return s;
}

Cover orbit_join(const GroupAction& a, const Cover& alpha,
                 std::span<const std::vector<int>> F) {
    if (F.empty()) throw PreconditionError("orbit join over an empty translate set");
    Cover acc = act_on_cover(a, F.front(), alpha);
    for (size_t i = 1; i < F.size(); ++i)
        acc = cover_join(acc, act_on_cover(a, F[i], alpha));
    return acc;
}

Cover orbit_join(const GroupAction& a, const Cover& alpha, const FolnerBox& box) {
    const auto members = box_members(box);
    return orbit_join(a, alpha, members);
}

Lattice generate_invariant_sublattice(const GroupAction& act, const Lattice& host,
                                      std::span<const Elem> generators,
                                      bool boolean_mode) {
    if (boolean_mode && !host.complement_closed())
        throw PreconditionError("boolean closure mode needs a complement-closed host");
    std::vector<PointPerm> moves;
    for (const auto& g : act.generators) {
        moves.push_back(g);
        moves.push_back(g.inverse());
    }
    std::set<Elem> closure{host.bottom(), host.top()};
    for (Elem g : generators) {
        if (!host.contains(g))
            throw StructuralError("invariant sublattice generator is not in the host");
        closure.insert(g);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Elem> snap(closure.begin(), closure.end());
        for (size_t i = 0; i < snap.size(); ++i) {
            for (const auto& p : moves) {
                const Elem img = p.preimage(snap[i]);
                if (!host.contains(img))
                    throw StructuralError("host is not closed under the action");
                grew |= closure.insert(img).second;
            }
            if (boolean_mode) grew |= closure.insert(host.complement(snap[i])).second;
            for (size_t j = i + 1; j < snap.size(); ++j) {
                grew |= closure.insert(meet(snap[i], snap[j])).second;
                grew |= closure.insert(join(snap[i], snap[j])).second;
            }
        }
    }
    return make_lattice_unchecked(host.ground(),
                                  std::vector<Elem>(closure.begin(), closure.end()));
}

Localization invariant_generated_topology(GroupAction act, Lattice host) {
    return Localization("generated-topology",
                        [act = std::move(act), host = std::move(host)](const Cover& a) {
                            return generate_invariant_sublattice(act, host, a.members(),
                                                                 false);
                        });
}

Localization invariant_generated_subalgebra(GroupAction act, Lattice host) {
    if (!host.complement_closed())
        throw PreconditionError("generated-subalgebra localization needs a "
                                "complement-closed host");
    return Localization("generated-subalgebra",
                        [act = std::move(act), host = std::move(host)](const Cover& a) {
                            return generate_invariant_sublattice(act, host, a.members(),
                                                                 true);
                        });
}

void validate_dyn(const DynLattice& d) {
    if (!d.object.m.defined_on(d.object.lattice))
        throw StructuralError("measurement is not total on the lattice");
    if (d.boolean_algebra && !d.object.lattice.complement_closed())
        throw StructuralError("boolean flag set but the lattice is not complement-closed");
    validate_action(d.action, d.object.lattice, &d.object.m);
}

} // namespace mdl
