#include "mdl/functors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mdl/errors.hpp"

namespace mdl {

namespace {

Measurement indicator_of(const Lattice& opens) { return Measurement::indicator(opens); }

void validate_factor_common(const GroupAction& sa, const GroupAction& da,
                            const FactorMap& fm, int src_n, int dst_n) {
    if (static_cast<int>(fm.point_map.size()) != src_n)
        throw StructuralError("factor map size does not match source ground");
    std::vector<bool> hit(static_cast<std::size_t>(dst_n), false);
    for (int x = 0; x < src_n; ++x) {
        const int t = fm.point_map[static_cast<std::size_t>(x)];
        if (t < 0 || t >= dst_n)
            throw StructuralError("factor map leaves the target ground");
        hit[static_cast<std::size_t>(t)] = true;
    }
    for (int j = 0; j < dst_n; ++j)
        if (!hit[static_cast<std::size_t>(j)])
            throw StructuralError("factor map is not surjective");
    if (sa.dimension != da.dimension)
        throw StructuralError("factor systems act through different group dimensions");
    for (int i = 0; i < sa.dimension; ++i) {
        const PointPerm& s = sa.generators[static_cast<std::size_t>(i)];
        const PointPerm& d = da.generators[static_cast<std::size_t>(i)];
        for (int x = 0; x < src_n; ++x) {
            const int lhs = fm.point_map[static_cast<std::size_t>(s.apply(x))];
            const int rhs = d.apply(fm.point_map[static_cast<std::size_t>(x)]);
            if (lhs != rhs)
                throw StructuralError("factor map is not equivariant at generator " +
                                      std::to_string(i));
        }
    }
}

bool family_has(const std::vector<Elem>& family, Elem e) {
    return std::binary_search(family.begin(), family.end(), e);
}

// Enumerate set partitions of {0..n-1} as block-index assignments, in
// restricted-growth order.
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int i, int max_used) -> void {
        if (i == n) { fn(assign); return; }
        for (int b = 0; b <= max_used + 1; ++b) {
            assign[static_cast<std::size_t>(i)] = b;
            self(self, i + 1, std::max(max_used, b));
        }
    };
    if (n > 0) rec(rec, 1, 0); // point 0 always starts block 0
    else fn(assign);
}

// Blocks of the separation relation: x ~ y when no family element splits
// them.  Ordered by least member, so labels are stable.
std::vector<Elem> separation_blocks(const std::vector<Elem>& family, int n_points) {
    std::vector<Elem> blocks;
    std::vector<bool> placed(static_cast<std::size_t>(n_points), false);
    for (int x = 0; x < n_points; ++x) {
        if (placed[static_cast<std::size_t>(x)]) continue;
        Elem block{std::uint64_t{1} << x};
        for (int y = x + 1; y < n_points; ++y) {
            if (placed[static_cast<std::size_t>(y)]) continue;
            bool same = true;
            for (const Elem& u : family) {
                const bool in_x = (u.bits >> x) & 1u;
                const bool in_y = (u.bits >> y) & 1u;
                if (in_x != in_y) { same = false; break; }
            }
            if (same) {
                block.bits |= std::uint64_t{1} << y;
                placed[static_cast<std::size_t>(y)] = true;
            }
        }
        placed[static_cast<std::size_t>(x)] = true;
        blocks.push_back(block);
    }
    return blocks;
}

GroundSet quotient_ground(std::size_t n_blocks) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n_blocks; ++i)
        labels.push_back("q" + std::to_string(i));
    return GroundSet(labels);
}

// Induced permutations on blocks; the family being action-invariant makes
// the block image well defined.
std::vector<PointPerm> induced_perms(const GroupAction& act,
                                     const std::vector<Elem>& blocks) {
    const int nb = static_cast<int>(blocks.size());
    auto block_of = [&](int point) {
        for (int i = 0; i < nb; ++i)
            if ((blocks[static_cast<std::size_t>(i)].bits >> point) & 1u) return i;
        throw InvariantError("point outside every block");
    };
    std::vector<PointPerm> out;
    for (const PointPerm& g : act.generators) {
        std::vector<int> fwd(static_cast<std::size_t>(nb), -1);
        for (int i = 0; i < nb; ++i) {
            const Elem b = blocks[static_cast<std::size_t>(i)];
            int target = -1;
            for (int x = 0; x < g.size(); ++x) {
                if (!((b.bits >> x) & 1u)) continue;
                const int t = block_of(g.apply(x));
                if (target == -1) target = t;
                else if (target != t)
                    throw InvariantError("action does not map blocks to blocks");
            }
            fwd[static_cast<std::size_t>(i)] = target;
        }
        out.push_back(PointPerm::from_map(fwd));
    }
    return out;
}

FactorMap block_factor_map(const std::vector<Elem>& blocks, int n_points) {
    FactorMap fm;
    fm.point_map.assign(static_cast<std::size_t>(n_points), -1);
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (int x = 0; x < n_points; ++x)
            if ((blocks[i].bits >> x) & 1u)
                fm.point_map[static_cast<std::size_t>(x)] = static_cast<int>(i);
    for (int v : fm.point_map)
        if (v < 0) throw InvariantError("blocks do not partition the ground set");
    return fm;
}

} // namespace

void validate_top(const TopSystem& sys) {
    if (sys.action.ground_size != sys.opens.ground().size())
        throw StructuralError("action ground size does not match the space");
    validate_action(sys.action, sys.opens);
}

void validate_psp(const ProbSystem& sys) {
    const int n = sys.algebra.ground().size();
    if (static_cast<int>(sys.mu.size()) != n)
        throw StructuralError("weight count does not match the ground set");
    double sum = 0.0;
    for (double w : sys.mu) {
        if (w < 0.0) throw StructuralError("negative point weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kMeasureTol)
        throw StructuralError("point weights do not sum to 1");
    if (!sys.algebra.complement_closed())
        throw StructuralError("event algebra is not complement closed");
    if (sys.action.ground_size != n)
        throw StructuralError("action ground size does not match the space");
    const Measurement m = psp_measurement(sys);
    validate_action(sys.action, sys.algebra, &m);
}

Measurement psp_measurement(const ProbSystem& sys) {
    return Measurement::from_point_weights(sys.algebra, sys.mu);
}

DynLattice m_top(const TopSystem& sys) {
    validate_top(sys);
    DynLattice out{
        MeasuredLattice{sys.opens, indicator_of(sys.opens),
                        invariant_generated_topology(sys.action, sys.opens)},
        sys.action, false};
    return out;
}

DynLattice m_psp(const ProbSystem& sys) {
    validate_psp(sys);
    DynLattice out{
        MeasuredLattice{sys.algebra, psp_measurement(sys),
                        invariant_generated_subalgebra(sys.action, sys.algebra)},
        sys.action, true};
    return out;
}

DynLattice m_trivial(int dimension) {
    if (dimension < 0) throw PreconditionError("negative group dimension");
    GroundSet ground(std::vector<std::string>{"*"});
    Lattice two = Lattice::bounds_only(ground);
    GroupAction act;
    act.dimension = dimension;
    act.ground_size = 1;
    for (int i = 0; i < dimension; ++i) act.generators.push_back(PointPerm::identity(1));
    const std::vector<double> unit{1.0};
    return DynLattice{
        MeasuredLattice{two, Measurement::from_point_weights(two, unit),
                        invariant_generated_subalgebra(act, two)},
        act, true};
}

Elem preimage_of(const FactorMap& fm, int source_points, Elem target_elem) {
    Elem out{0};
    for (int x = 0; x < source_points; ++x)
        if ((target_elem.bits >> fm.point_map[static_cast<std::size_t>(x)]) & 1u)
            out.bits |= std::uint64_t{1} << x;
    return out;
}

void validate_factor_top(const TopSystem& src, const TopSystem& dst, const FactorMap& fm) {
    validate_top(src);
    validate_top(dst);
    const int n = src.opens.ground().size();
    validate_factor_common(src.action, dst.action, fm, n, dst.opens.ground().size());
    for (const Elem& u : dst.opens.elems())
        if (!src.opens.contains(preimage_of(fm, n, u)))
            throw StructuralError("preimage of a target open set is not open");
}

void validate_factor_psp(const ProbSystem& src, const ProbSystem& dst, const FactorMap& fm) {
    validate_psp(src);
    validate_psp(dst);
    const int n = src.algebra.ground().size();
    validate_factor_common(src.action, dst.action, fm, n, dst.algebra.ground().size());
    for (const Elem& b : dst.algebra.elems()) {
        const Elem pre = preimage_of(fm, n, b);
        if (!src.algebra.contains(pre))
            throw StructuralError("preimage of a target event is not measurable");
        double src_mass = 0.0;
        for (int x = 0; x < n; ++x)
            if ((pre.bits >> x) & 1u) src_mass += src.mu[static_cast<std::size_t>(x)];
        double dst_mass = 0.0;
        for (int j = 0; j < dst.algebra.ground().size(); ++j)
            if ((b.bits >> j) & 1u) dst_mass += dst.mu[static_cast<std::size_t>(j)];
        if (std::abs(src_mass - dst_mass) > kMeasureTol)
            throw StructuralError("factor map does not preserve the measure");
    }
}

Morphism apply_functor_top(const TopSystem& src, const TopSystem& dst, const FactorMap& fm) {
    validate_factor_top(src, dst, fm);
    DynLattice mx = m_top(src);
    DynLattice my = m_top(dst);
    Morphism phi{std::move(mx.object), std::move(my.object), {}};
    const int n = src.opens.ground().size();
    for (const Elem& u : phi.target.lattice.elems())
        phi.embed.push_back(preimage_of(fm, n, u));
    return phi;
}

Morphism apply_functor_psp(const ProbSystem& src, const ProbSystem& dst, const FactorMap& fm) {
    validate_factor_psp(src, dst, fm);
    DynLattice mx = m_psp(src);
    DynLattice my = m_psp(dst);
    Morphism phi{std::move(mx.object), std::move(my.object), {}};
    const int n = src.algebra.ground().size();
    for (const Elem& b : phi.target.lattice.elems())
        phi.embed.push_back(preimage_of(fm, n, b));
    return phi;
}

Morphism terminal_arrow(const DynLattice& image) {
    DynLattice point = m_trivial(image.action.dimension);
    Morphism phi{image.object, std::move(point.object), {}};
    phi.embed = {image.object.lattice.bottom(), image.object.lattice.top()};
    return phi;
}

std::vector<std::vector<Elem>> invariant_subtopologies(const Lattice& opens,
                                                       const GroupAction& action) {
    std::vector<Elem> middles;
    for (const Elem& e : opens.elems())
        if (!is_bottom(e) && e != opens.top()) middles.push_back(e);
    const int mcount = static_cast<int>(middles.size());
    if (mcount > 18)
        throw PreconditionError("too many open sets to enumerate subtopologies");

    std::vector<PointPerm> gens_both;
    for (const PointPerm& g : action.generators) {
        gens_both.push_back(g);
        gens_both.push_back(g.inverse());
    }

    std::vector<std::vector<Elem>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << mcount); ++mask) {
        std::vector<Elem> family{opens.bottom()};
        for (int i = 0; i < mcount; ++i)
            if ((mask >> i) & 1u) family.push_back(middles[static_cast<std::size_t>(i)]);
        family.push_back(opens.top());
        std::sort(family.begin(), family.end());

        bool ok = true;
        for (std::size_t i = 0; i < family.size() && ok; ++i) {
            for (std::size_t j = i + 1; j < family.size() && ok; ++j) {
                if (!family_has(family, meet(family[i], family[j])) ||
                    !family_has(family, join(family[i], family[j])))
                    ok = false;
            }
        }
        for (const PointPerm& g : gens_both) {
            if (!ok) break;
            for (const Elem& e : family)
                if (!family_has(family, g.preimage(e))) { ok = false; break; }
        }
        if (ok) out.push_back(std::move(family));
    }
    return out;
}

std::vector<Elem> atoms_of(const Lattice& algebra) {
    std::vector<Elem> atoms;
    for (const Elem& e : algebra.elems()) {
        if (is_bottom(e)) continue;
        bool minimal = true;
        for (const Elem& f : algebra.elems()) {
            if (is_bottom(f) || f == e) continue;
            if (leq(f, e)) { minimal = false; break; }
        }
        if (minimal) atoms.push_back(e);
    }
    Elem acc{0};
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            if (!is_bottom(meet(atoms[i], atoms[j])))
                throw StructuralError("algebra atoms are not disjoint");
        acc = join(acc, atoms[i]);
    }
    if (acc != algebra.top())
        throw StructuralError("algebra atoms do not cover the space");
    return atoms;
}

std::vector<std::vector<Elem>> invariant_subalgebras(const Lattice& algebra,
                                                     const GroupAction& action) {
    const std::vector<Elem> atoms = atoms_of(algebra);
    const int na = static_cast<int>(atoms.size());
    if (na > 6)
        throw PreconditionError("too many atoms to enumerate subalgebras");

    std::vector<PointPerm> gens_both;
    for (const PointPerm& g : action.generators) {
        gens_both.push_back(g);
        gens_both.push_back(g.inverse());
    }

    std::vector<std::vector<Elem>> out;
    for_each_partition(na, [&](const std::vector<int>& assign) {
        int nblocks = 0;
        for (int b : assign) nblocks = std::max(nblocks, b + 1);
        std::vector<Elem> blocks(static_cast<std::size_t>(nblocks), Elem{0});
        for (int i = 0; i < na; ++i)
            blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])].bits |=
                atoms[static_cast<std::size_t>(i)].bits;
        std::vector<Elem> sorted_blocks = blocks;
        std::sort(sorted_blocks.begin(), sorted_blocks.end());
        for (const PointPerm& g : gens_both)
            for (const Elem& b : blocks)
                if (!std::binary_search(sorted_blocks.begin(), sorted_blocks.end(),
                                        g.preimage(b)))
                    return;
        std::vector<Elem> family;
        for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << nblocks); ++sub) {
            Elem e{0};
            for (int i = 0; i < nblocks; ++i)
                if ((sub >> i) & 1u) e.bits |= blocks[static_cast<std::size_t>(i)].bits;
            family.push_back(e);
        }
        std::sort(family.begin(), family.end());
        family.erase(std::unique(family.begin(), family.end()), family.end());
        out.push_back(std::move(family));
    });
    return out;
}

TopQuotient quotient_top(const TopSystem& src, const std::vector<Elem>& family) {
    const int n = src.opens.ground().size();
    for (const Elem& u : family)
        if (!src.opens.contains(u))
            throw PreconditionError("family member is not an open set");
    const std::vector<Elem> blocks = separation_blocks(family, n);
    const std::size_t nb = blocks.size();

    std::vector<Elem> images;
    for (const Elem& u : family) {
        Elem img{0};
        for (std::size_t i = 0; i < nb; ++i) {
            const Elem b = blocks[i];
            const Elem common = meet(b, u);
            if (common == b) img.bits |= std::uint64_t{1} << i;
            else if (!is_bottom(common))
                throw InvariantError("family element is not saturated");
        }
        images.push_back(img);
    }
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());

    TopQuotient q{TopSystem{Lattice(quotient_ground(nb), std::move(images)),
                            GroupAction{src.action.dimension,
                                        induced_perms(src.action, blocks),
                                        static_cast<int>(nb)}},
                  block_factor_map(blocks, n)};
    return q;
}

PspQuotient quotient_psp(const ProbSystem& src, const std::vector<Elem>& family) {
    const int n = src.algebra.ground().size();
    Lattice sub(src.algebra.ground(), family); // validates closure
    if (!sub.complement_closed())
        throw PreconditionError("family is not a subalgebra");
    const std::vector<Elem> blocks = atoms_of(sub);
    const std::size_t nb = blocks.size();
    if (family.size() != (std::size_t{1} << nb))
        throw InvariantError("subalgebra is not the span of its atoms");

    std::vector<double> mu(nb, 0.0);
    for (std::size_t i = 0; i < nb; ++i)
        for (int x = 0; x < n; ++x)
            if ((blocks[i].bits >> x) & 1u) mu[i] += src.mu[static_cast<std::size_t>(x)];

    PspQuotient q{ProbSystem{Lattice::powerset(quotient_ground(nb)), std::move(mu),
                             GroupAction{src.action.dimension,
                                         induced_perms(src.action, blocks),
                                         static_cast<int>(nb)}},
                  block_factor_map(blocks, n)};
    return q;
}

namespace {

MinimalityReport minimality_common(const Lattice& closure, const Cover& alpha,
                                   const std::vector<std::vector<Elem>>& realized) {
    MinimalityReport rep;
    rep.families_total = realized.size();
    std::vector<Elem> meet_family;
    bool first = true;
    for (const auto& family : realized) {
        bool contains_alpha = true;
        for (const Elem& a : alpha.members())
            if (!family_has(family, a)) { contains_alpha = false; break; }
        if (!contains_alpha) continue;
        ++rep.families_containing;
        if (first) { meet_family = family; first = false; }
        else {
            std::vector<Elem> tmp;
            std::set_intersection(meet_family.begin(), meet_family.end(),
                                  family.begin(), family.end(),
                                  std::back_inserter(tmp));
            meet_family = std::move(tmp);
        }
    }
    if (first)
        throw InvariantError("no invariant family contains the cover");

    std::vector<Elem> closure_elems(closure.elems().begin(), closure.elems().end());
    rep.equal = (closure_elems == meet_family);
    rep.detail = "closure " + std::to_string(closure_elems.size()) +
                 " elements, intersection " + std::to_string(meet_family.size()) +
                 ", " + std::to_string(rep.families_containing) + "/" +
                 std::to_string(rep.families_total) + " families apply";
    return rep;
}

} // namespace

std::vector<std::vector<Elem>> realized_families_top(const TopSystem& sys) {
    validate_top(sys);
    const int n = sys.opens.ground().size();
    auto families = invariant_subtopologies(sys.opens, sys.action);
    for (const auto& family : families) {
        TopQuotient q = quotient_top(sys, family);
        validate_factor_top(sys, q.system, q.map);
        std::vector<Elem> pulled;
        for (const Elem& u : q.system.opens.elems())
            pulled.push_back(preimage_of(q.map, n, u));
        std::sort(pulled.begin(), pulled.end());
        if (pulled != family)
            throw InvariantError("factor witness does not realize its family");
    }
    return families;
}

std::vector<std::vector<Elem>> realized_families_psp(const ProbSystem& sys) {
    validate_psp(sys);
    const int n = sys.algebra.ground().size();
    auto families = invariant_subalgebras(sys.algebra, sys.action);
    for (const auto& family : families) {
        PspQuotient q = quotient_psp(sys, family);
        validate_factor_psp(sys, q.system, q.map);
        std::vector<Elem> pulled;
        for (const Elem& b : q.system.algebra.elems())
            pulled.push_back(preimage_of(q.map, n, b));
        std::sort(pulled.begin(), pulled.end());
        if (pulled != family)
            throw InvariantError("factor witness does not realize its family");
    }
    return families;
}

MinimalityReport check_localization_minimality_top(const TopSystem& sys, const Cover& alpha,
                                                   const std::vector<std::vector<Elem>>& realized) {
    DynLattice image = m_top(sys);
    return minimality_common(image.object.omega(alpha), alpha, realized);
}

MinimalityReport check_localization_minimality_psp(const ProbSystem& sys, const Cover& alpha,
                                                   const std::vector<std::vector<Elem>>& realized) {
    DynLattice image = m_psp(sys);
    return minimality_common(image.object.omega(alpha), alpha, realized);
}

MinimalityReport check_localization_minimality_top(const TopSystem& sys, const Cover& alpha) {
    return check_localization_minimality_top(sys, alpha, realized_families_top(sys));
}

MinimalityReport check_localization_minimality_psp(const ProbSystem& sys, const Cover& alpha) {
    return check_localization_minimality_psp(sys, alpha, realized_families_psp(sys));
}

} // namespace mdl
