#pragma once

#include <span>
#include <vector>

#include "mdl/measured.hpp"

namespace mdl {

// Permutation of ground set points.  Lattice automorphisms are induced by
// taking preimages, so composing group elements reverses on points, which is
// exactly the opposite-action convention the entropy layer expects.
class PointPerm {
public:
    static PointPerm identity(int n);
    static PointPerm from_map(std::vector<int> fwd); // validates bijection
    static PointPerm cycle(int n);                   // 0 -> 1 -> ... -> 0
    static PointPerm swap2(int n, int i, int j);

    int size() const { return static_cast<int>(fwd_.size()); }
    int apply(int x) const { return fwd_.at(x); }
    PointPerm compose(const PointPerm& then) const; // (this.compose(g))(x) = this(g(x))
    PointPerm inverse() const;
    PointPerm power(int k) const;

    // {x : fwd(x) in u}
    Elem preimage(Elem u) const;

    bool operator==(const PointPerm&) const = default;
    bool is_identity() const;
    bool commutes_with(const PointPerm& o) const;

private:
    std::vector<int> fwd_;
};

// Z^d action presented by one commuting generator permutation per coordinate.
// dimension 0 is the trivial group (used for static entropy computations).
struct GroupAction {
    int dimension = 0;
    std::vector<PointPerm> generators; // size == dimension
    int ground_size = 0;

    static GroupAction trivial(int ground_size);
    static GroupAction cyclic(int ground_size); // d=1, full cycle
};

// Generators must commute pairwise; every generator (and inverse) must map
// lattice elements to lattice elements; when m is given it must be preserved.
void validate_action(const GroupAction& act, const Lattice& host,
                     const Measurement* m = nullptr);

Elem act(const GroupAction& a, std::span<const int> g, Elem u);
Cover act_on_cover(const GroupAction& a, std::span<const int> g, const Cover& alpha);

// {0..side-1}^dim; dimension 0 yields the single empty tuple.
struct FolnerBox {
    int dim = 0;
    int side = 1;
};
std::vector<std::vector<int>> box_members(const FolnerBox& box);
long long box_size(const FolnerBox& box);

// Join of the translated covers g.alpha over all g in F (F nonempty).
Cover orbit_join(const GroupAction& a, const Cover& alpha,
                 std::span<const std::vector<int>> F);
Cover orbit_join(const GroupAction& a, const Cover& alpha, const FolnerBox& box);

// Smallest sublattice of host containing the generators that is closed under
// the action (generators and inverses); boolean_mode additionally closes
// under complement and requires a complement-closed host.
Lattice generate_invariant_sublattice(const GroupAction& act, const Lattice& host,
                                      std::span<const Elem> generators,
                                      bool boolean_mode);

Localization invariant_generated_topology(GroupAction act, Lattice host);
Localization invariant_generated_subalgebra(GroupAction act, Lattice host);

// A measured lattice together with the acting group; the assembled dynamical
// object all entropy quantities are computed against.
struct DynLattice {
    MeasuredLattice object;
    GroupAction action;
    bool boolean_algebra = false;
};

void validate_dyn(const DynLattice& d);

} // namespace mdl
