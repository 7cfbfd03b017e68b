#include <doctest.h>

#include <cmath>
#include <set>

#include "mdl/entropy.hpp"
#include "mdl/errors.hpp"
#include "mdl/functors.hpp"

using namespace mdl;

namespace {

GroundSet g2() { return GroundSet({"a", "b"}); }

ProbSystem coin() {
    Lattice algebra = Lattice::powerset(g2());
    return {algebra, {0.5, 0.5}, GroupAction::cyclic(2)};
}

TopSystem sierpinski() {
    GroundSet g = g2();
    Lattice opens(g, {Elem{0}, Elem{0b01}, Elem{0b11}});
    return {opens, GroupAction::trivial(2)};
}

} // namespace

TEST_CASE("system validation guards weights, closure, and equivariance") {
    validate_psp(coin());
    validate_top(sierpinski());

    ProbSystem heavy = coin();
    heavy.mu = {0.7, 0.7};
    CHECK_THROWS_AS(validate_psp(heavy), StructuralError);

    ProbSystem skewed = coin();
    skewed.mu = {0.3, 0.7}; // swap action no longer preserves mu
    CHECK_THROWS_AS(validate_psp(skewed), StructuralError);

    // psp algebras must be boolean
    GroundSet g = g2();
    ProbSystem chain{Lattice(g, {Elem{0}, Elem{0b01}, Elem{0b11}}),
                     {0.5, 0.5},
                     GroupAction::trivial(2)};
    CHECK_THROWS_AS(validate_psp(chain), StructuralError);

    // opens must be preserved by the action
    TopSystem drift{Lattice(g, {Elem{0}, Elem{0b01}, Elem{0b11}}),
                    GroupAction::cyclic(2)};
    CHECK_THROWS_AS(validate_top(drift), StructuralError);
}

TEST_CASE("functor images carry the right measurement and localization") {
    DynLattice dp = m_psp(coin());
    CHECK(dp.boolean_algebra);
    CHECK(dp.object.lattice.size() == 4);
    CHECK(dp.object.m(Elem{0b01}) == doctest::Approx(0.5).epsilon(1e-15));
    validate_dyn(dp);

    DynLattice dt = m_top(sierpinski());
    CHECK_FALSE(dt.boolean_algebra);
    CHECK(is_indicator(dt.object.lattice, dt.object.m));
    validate_dyn(dt);

    DynLattice d0 = m_trivial(1);
    CHECK(d0.object.lattice.size() == 2);
    CHECK(d0.action.dimension == 1);
    CHECK(d0.object.m(d0.object.lattice.top()) == 1.0);
    validate_dyn(d0);

    EntropyConfig cfg;
    cfg.tolerance = 0.0;
    cfg.folner_max_n = 2;
    CHECK(h_mdl(d0, cfg).value == 0.0);
}

TEST_CASE("factor maps must be surjective equivariant point maps") {
    ProbSystem x = coin();
    GroundSet gy({"y"});
    ProbSystem y{Lattice::powerset(gy), {1.0}, GroupAction::trivial(1)};

    // dimensions disagree: cyclic(2) has dimension 1, trivial 0
    FactorMap collapse{{0, 0}};
    CHECK_THROWS_AS(validate_factor_psp(x, y, collapse), StructuralError);

    ProbSystem y1{Lattice::powerset(gy), {1.0},
                  GroupAction{1, {PointPerm::identity(1)}, 1}};
    validate_factor_psp(x, y1, collapse);

    // non-surjective
    ProbSystem z{Lattice::powerset(g2()), {0.5, 0.5},
                 GroupAction{1, {PointPerm::identity(2)}, 2}};
    FactorMap into_one{{0, 0}};
    CHECK_THROWS_AS(validate_factor_psp(x, z, into_one), StructuralError);

    // non-equivariant: swap upstairs, identity downstairs, bijective map
    FactorMap ident{{0, 1}};
    CHECK_THROWS_AS(validate_factor_psp(x, z, ident), StructuralError);

    // measure must push forward: uneven target weights break it
    ProbSystem z_uneven{Lattice::powerset(g2()), {0.25, 0.75},
                        GroupAction{1, {PointPerm::identity(2)}, 2}};
    CHECK_THROWS_AS(validate_factor_psp(z_uneven, z, ident), StructuralError);
}

TEST_CASE("the functor image of a factor is a checked morphism") {
    ProbSystem x = coin();
    GroundSet gy({"y"});
    ProbSystem y{Lattice::powerset(gy), {1.0},
                 GroupAction{1, {PointPerm::identity(1)}, 1}};
    FactorMap collapse{{0, 0}};

    Morphism phi = apply_functor_psp(x, y, collapse);
    CHECK(check_morphism(phi).empty());
    // preimage of the one-point top is the two-point top
    CHECK(phi.apply(Elem{1}) == Elem{0b11});
    CHECK(preimage_of(collapse, 2, Elem{1}) == Elem{0b11});
    CHECK(preimage_of(collapse, 2, Elem{0}) == Elem{0});

    Morphism bang = terminal_arrow(m_psp(x));
    CHECK(check_morphism(bang).empty());
    CHECK(bang.target.lattice.size() == 2);
    CHECK(bang.apply(bang.target.lattice.top()) == Elem{0b11});
}

TEST_CASE("atoms are the minimal nonzero events") {
    Lattice p = Lattice::powerset(GroundSet({"a", "b", "c"}));
    std::vector<Elem> atoms = atoms_of(p);
    REQUIRE(atoms.size() == 3);
    CHECK(atoms[0] == Elem{0b001});

    // a non-boolean lattice has no atom partition
    GroundSet g3({"a", "b", "c"});
    Lattice w(g3, {Elem{0}, Elem{0b010}, Elem{0b011}, Elem{0b110}, Elem{0b111}});
    CHECK_THROWS_AS((void)atoms_of(w), StructuralError);
}

TEST_CASE("invariant families enumerate sublattices and subalgebras") {
    GroundSet g = g2();
    Lattice p = Lattice::powerset(g);

    auto topo_still = invariant_subtopologies(p, GroupAction::trivial(2));
    CHECK(topo_still.size() == 4); // {}, {a}, {b}, {a,b} as middle choices

    auto topo_swap = invariant_subtopologies(p, GroupAction::cyclic(2));
    CHECK(topo_swap.size() == 2); // singletons are not swap-stable

    auto alg_still = invariant_subalgebras(p, GroupAction::trivial(2));
    CHECK(alg_still.size() == 2); // split or merge the two atoms

    auto alg_swap = invariant_subalgebras(p, GroupAction::cyclic(2));
    CHECK(alg_swap.size() == 2); // the split partition maps blocks to blocks

    // every family is closed and bounded
    for (const auto& fam : topo_swap) {
        Lattice sub(g, fam);
        CHECK(sub.is_sublattice_of(p));
    }
}

TEST_CASE("quotients realize invariant families as factor preimages") {
    GroundSet g = g2();
    ProbSystem x{Lattice::powerset(g), {0.5, 0.5},
                 GroupAction{1, {PointPerm::identity(2)}, 2}};

    // the full algebra splits the two points
    std::vector<Elem> full{Elem{0}, Elem{0b01}, Elem{0b10}, Elem{0b11}};
    PspQuotient q = quotient_psp(x, full);
    CHECK(q.system.algebra.size() == 4);
    CHECK(q.system.mu.size() == 2);
    validate_factor_psp(x, q.system, q.map);

    // the bounds-only family merges them
    std::vector<Elem> merged{Elem{0}, Elem{0b11}};
    PspQuotient q0 = quotient_psp(x, merged);
    CHECK(q0.system.mu.size() == 1);
    CHECK(q0.system.mu[0] == doctest::Approx(1.0).epsilon(1e-15));
    validate_factor_psp(x, q0.system, q0.map);

    // topological side: saturated opens only
    TopSystem t = sierpinski();
    std::vector<Elem> opens{Elem{0}, Elem{0b01}, Elem{0b11}};
    TopQuotient tq = quotient_top(t, opens);
    CHECK(tq.system.opens.size() == 3);
    validate_factor_top(t, tq.system, tq.map);

    // a family may split every point; all such members are still saturated
    std::vector<Elem> full_family{Elem{0}, Elem{0b01}, Elem{0b10}, Elem{0b11}};
    CHECK_NOTHROW((void)quotient_top(TopSystem{Lattice::powerset(g),
                                               GroupAction::trivial(2)},
                                     full_family));
}

TEST_CASE("realized families all come with honest witnesses") {
    ProbSystem x = coin();
    auto fams = realized_families_psp(x);
    CHECK(fams.size() == 2);

    TopSystem t = sierpinski();
    auto tfams = realized_families_top(t);
    CHECK(tfams.size() == 2); // {0,X} and the full sierpinski family

    // each family contains bottom and top
    for (const auto& f : tfams) {
        CHECK(std::find(f.begin(), f.end(), Elem{0}) != f.end());
        CHECK(std::find(f.begin(), f.end(), t.opens.top()) != f.end());
    }
}

TEST_CASE("localization minimality holds on the smallest systems") {
    GroundSet g = g2();
    TopSystem still{Lattice::powerset(g), GroupAction::trivial(2)};
    Cover top_only = make_cover(still.opens, {still.opens.top()});
    MinimalityReport r = check_localization_minimality_top(still, top_only);
    CHECK(r.equal);
    CHECK(r.families_total == 4);
    CHECK(r.families_containing == 4);

    Cover split = make_cover(still.opens, {Elem{0b01}, Elem{0b10}});
    MinimalityReport r2 = check_localization_minimality_top(still, split);
    CHECK(r2.equal);
    CHECK(r2.families_containing == 1); // only the full topology holds both

    ProbSystem x = coin();
    Cover part = make_cover(x.algebra, {Elem{0b01}, Elem{0b10}});
    MinimalityReport rp = check_localization_minimality_psp(x, part);
    CHECK(rp.equal);

    // precomputed families give the same verdicts
    auto fams = realized_families_psp(x);
    MinimalityReport rp2 = check_localization_minimality_psp(x, part, fams);
    CHECK(rp2.equal == rp.equal);
    CHECK(rp2.families_containing == rp.families_containing);
}
