#include <doctest.h>

#include <set>

#include "mdl/action.hpp"
#include "mdl/errors.hpp"

using namespace mdl;

namespace {

GroundSet g3() { return GroundSet({"a", "b", "c"}); }

Elem el(const GroundSet& g, std::initializer_list<std::string> labels) {
    std::vector<std::string> v(labels);
    return g.element(v);
}

} // namespace

TEST_CASE("point permutations compose, invert, and power") {
    PointPerm c = PointPerm::cycle(3); // 0 -> 1 -> 2 -> 0
    CHECK(c.apply(0) == 1);
    CHECK(c.apply(2) == 0);
    CHECK(c.power(3).is_identity());
    CHECK(c.inverse().apply(1) == 0);
    CHECK(c.power(-1) == c.inverse());

    PointPerm s = PointPerm::swap2(3, 0, 1);
    // (c.compose(s))(x) = c(s(x))
    CHECK(c.compose(s).apply(0) == 2);
    CHECK(c.compose(s).apply(1) == 1);

    CHECK(PointPerm::identity(4).is_identity());
    CHECK_THROWS_AS(PointPerm::from_map({0, 0, 1}), StructuralError);
    CHECK_THROWS_AS(PointPerm::from_map({0, 3, 1}), StructuralError);

    CHECK(c.commutes_with(c.power(2)));
    CHECK_FALSE(c.commutes_with(s));
}

TEST_CASE("permutation preimages of index sets") {
    PointPerm c = PointPerm::cycle(3);
    // preimage of {0} under 0->1,1->2,2->0 is {2}
    CHECK(c.preimage(Elem{0b001}) == Elem{0b100});
    CHECK(c.preimage(Elem{0b011}) == Elem{0b101});
    CHECK(c.preimage(Elem{0b111}) == Elem{0b111});
    CHECK(c.preimage(Elem{0}) == Elem{0});
}

TEST_CASE("group elements act through preimages of generator words") {
    GroupAction a = GroupAction::cyclic(3);
    GroundSet g = g3();
    std::vector<int> one{1}, zero{0}, two{2};
    CHECK(act(a, zero, el(g, {"a"})) == el(g, {"a"}));
    CHECK(act(a, one, el(g, {"a"})) == el(g, {"c"}));
    CHECK(act(a, two, el(g, {"a"})) == el(g, {"b"}));
    // exponent -1 undoes exponent 1
    std::vector<int> minus{-1};
    CHECK(act(a, minus, act(a, one, el(g, {"b"}))) == el(g, {"b"}));
}

TEST_CASE("trivial actions have dimension zero") {
    GroupAction t = GroupAction::trivial(3);
    CHECK(t.dimension == 0);
    CHECK(t.generators.empty());
    Lattice host = Lattice::powerset(g3());
    validate_action(t, host);

    std::vector<int> empty_word;
    CHECK(act(t, empty_word, Elem{0b101}) == Elem{0b101});
}

TEST_CASE("action validation rejects non-automorphisms and measure drift") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    GroupAction a = GroupAction::cyclic(3);
    validate_action(a, host); // fine on the full powerset

    // the five-element sublattice is not cycle-invariant
    Lattice w(g, {Elem{0}, Elem{0b010}, Elem{0b011}, Elem{0b110}, Elem{0b111}});
    CHECK_THROWS_AS(validate_action(a, w), StructuralError);

    // swap moves mass between unevenly weighted points
    GroupAction sw = GroupAction::cyclic(2);
    GroundSet g2({"a", "b"});
    Lattice p2 = Lattice::powerset(g2);
    Measurement uneven =
        Measurement::from_point_weights(p2, std::vector<double>{0.3, 0.7});
    validate_action(sw, p2);
    CHECK_THROWS_AS(validate_action(sw, p2, &uneven), StructuralError);
    Measurement even =
        Measurement::from_point_weights(p2, std::vector<double>{0.5, 0.5});
    validate_action(sw, p2, &even);
}

TEST_CASE("boxes enumerate lattice points of the given side") {
    FolnerBox line{1, 3};
    auto m1 = box_members(line);
    REQUIRE(m1.size() == 3);
    CHECK(m1[0] == std::vector<int>{0});
    CHECK(m1[2] == std::vector<int>{2});
    CHECK(box_size(line) == 3);

    FolnerBox square{2, 2};
    CHECK(box_members(square).size() == 4);
    CHECK(box_size(square) == 4);

    // the trivial group has exactly one translate: the empty word
    FolnerBox point{0, 7};
    auto m0 = box_members(point);
    REQUIRE(m0.size() == 1);
    CHECK(m0[0].empty());
    CHECK(box_size(point) == 1);
}

TEST_CASE("orbit joins accumulate translates of a cover") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    GroupAction a = GroupAction::cyclic(3);
    Cover alpha = make_cover(host, {el(g, {"a", "b"}), el(g, {"b", "c"})});

    // a singleton translate set leaves the cover alone
    std::vector<std::vector<int>> id_only{{0}};
    CHECK(orbit_join(a, alpha, id_only) == alpha);

    Cover joined = orbit_join(a, alpha, FolnerBox{1, 2});
    // alpha v sigma.alpha = {a, b, c, ab} after pairwise meets
    std::set<Elem> got(joined.members().begin(), joined.members().end());
    std::set<Elem> want{Elem{0b001}, Elem{0b010}, Elem{0b100}, Elem{0b011}};
    CHECK(got == want);

    std::vector<std::vector<int>> none;
    CHECK_THROWS_AS((void)orbit_join(a, alpha, none), PreconditionError);
}

TEST_CASE("invariant closure adds orbit images of the generators") {
    GroundSet g2({"a", "b"});
    Lattice host = Lattice::powerset(g2);
    GroupAction sw = GroupAction::cyclic(2);
    std::vector<Elem> gen{Elem{0b01}};
    Lattice inv = generate_invariant_sublattice(sw, host, gen, false);
    CHECK(inv.size() == 4); // orbit {a},{b} plus bounds

    // boolean closure on a trivial action adjoins complements
    GroundSet g = g3();
    Lattice host3 = Lattice::powerset(g);
    std::vector<Elem> gen3{el(g, {"a", "b"})};
    Lattice alg = generate_invariant_sublattice(GroupAction::trivial(3), host3,
                                                gen3, true);
    std::set<Elem> got(alg.elems().begin(), alg.elems().end());
    std::set<Elem> want{Elem{0}, Elem{0b011}, Elem{0b100}, Elem{0b111}};
    CHECK(got == want);
    CHECK(alg.complement_closed());

    Lattice mono = generate_invariant_sublattice(GroupAction::trivial(3), host3,
                                                 gen3, false);
    CHECK(mono.size() == 3); // bounds plus the generator
}

TEST_CASE("invariant localization rules close covers under the action") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    GroupAction a = GroupAction::cyclic(3);
    Localization omega = invariant_generated_topology(a, host);
    Cover alpha = make_cover(host, {el(g, {"a", "b"}), el(g, {"b", "c"})});
    // the orbit of {a,b} meets its rotations in singletons; closure is full
    CHECK(omega(alpha).size() == 8);

    Localization sigma = invariant_generated_subalgebra(a, host);
    CHECK(sigma(alpha).complement_closed());
}

TEST_CASE("dynamical lattice validation ties the pieces together") {
    GroundSet g2({"a", "b"});
    Lattice host = Lattice::powerset(g2);
    Measurement m = Measurement::from_point_weights(host, std::vector<double>{0.5, 0.5});
    GroupAction sw = GroupAction::cyclic(2);
    DynLattice d{{host, m, invariant_generated_subalgebra(sw, host)}, sw, true};
    validate_dyn(d);

    Measurement uneven =
        Measurement::from_point_weights(host, std::vector<double>{0.3, 0.7});
    DynLattice bad{{host, uneven, invariant_generated_subalgebra(sw, host)}, sw, true};
    CHECK_THROWS_AS(validate_dyn(bad), StructuralError);
}
