#include <doctest.h>

#include <algorithm>
#include <set>

#include "mdl/errors.hpp"
#include "mdl/lattice.hpp"
#include "mdl/measured.hpp"

using namespace mdl;

namespace {

GroundSet g2() { return GroundSet({"a", "b"}); }
GroundSet g3() { return GroundSet({"a", "b", "c"}); }

Elem el(const GroundSet& g, std::initializer_list<std::string> labels) {
    std::vector<std::string> v(labels);
    return g.element(v);
}

} // namespace

TEST_CASE("ground set indexes labels and encodes elements") {
    GroundSet g = g3();
    CHECK(g.size() == 3);
    CHECK(g.index("a") == 0);
    CHECK(g.index("c") == 2);
    CHECK(g.has("b"));
    CHECK_FALSE(g.has("z"));
    CHECK_THROWS_AS((void)g.index("z"), StructuralError);

    Elem ab = el(g, {"a", "b"});
    CHECK(ab.bits == 0b011);
    CHECK(g.full().bits == 0b111);
    CHECK(g.labels_of(ab) == std::vector<std::string>{"a", "b"});
    CHECK(g.labels_of(bottom_elem()).empty());

    // unknown label inside an element spec
    std::vector<std::string> bad{"a", "z"};
    CHECK_THROWS_AS((void)g.element(bad), StructuralError);
}

TEST_CASE("ground set rejects duplicates, empties, and oversize") {
    CHECK_THROWS_AS(GroundSet({"a", "a"}), StructuralError);
    CHECK_THROWS_AS(GroundSet({}), StructuralError);
    CHECK_THROWS_AS(GroundSet({""}), StructuralError);
    std::vector<std::string> many;
    for (int i = 0; i < 65; ++i) many.push_back("p" + std::to_string(i));
    CHECK_THROWS_AS(GroundSet(std::move(many)), StructuralError);
}

TEST_CASE("element order and algebra are bitwise") {
    Elem a{0b001}, b{0b010}, ab{0b011};
    CHECK(meet(a, b) == bottom_elem());
    CHECK(join(a, b) == ab);
    CHECK(leq(a, ab));
    CHECK_FALSE(leq(ab, a));
    CHECK(popcount(ab) == 2);
    CHECK(is_bottom(meet(a, b)));
}

TEST_CASE("powerset lattice contains every index set") {
    Lattice p = Lattice::powerset(g3());
    CHECK(p.size() == 8);
    CHECK(p.contains(Elem{0b101}));
    CHECK(p.complement_closed());
    CHECK(p.complement(Elem{0b001}) == Elem{0b110});
    CHECK(p.meet_of(Elem{0b011}, Elem{0b110}) == Elem{0b010});
    CHECK(p.join_of(Elem{0b011}, Elem{0b110}) == p.top());
}

TEST_CASE("lattice validation requires bounds and closure") {
    GroundSet g = g3();
    // top missing
    CHECK_THROWS_AS(Lattice(g, {Elem{0}, Elem{0b001}}), StructuralError);
    // bottom missing
    CHECK_THROWS_AS(Lattice(g, {Elem{0b001}, Elem{0b111}}), StructuralError);
    // meet of {a,b} and {b,c} escapes the set
    CHECK_THROWS_AS(Lattice(g, {Elem{0}, Elem{0b011}, Elem{0b110}, Elem{0b111}}),
                    StructuralError);
    // element off the ground set
    CHECK_THROWS_AS(Lattice(g2(), {Elem{0}, Elem{0b100}, Elem{0b011}}),
                    StructuralError);
    // the same member set, completed, is fine
    Lattice w(g, {Elem{0}, Elem{0b010}, Elem{0b011}, Elem{0b110}, Elem{0b111}});
    CHECK(w.size() == 5);
    CHECK(w.is_sublattice_of(Lattice::powerset(g)));
    CHECK_FALSE(w.complement_closed());
}

TEST_CASE("bounds_only is the two-element lattice") {
    Lattice b = Lattice::bounds_only(g3());
    CHECK(b.size() == 2);
    CHECK(b.contains(b.top()));
    CHECK(b.contains(b.bottom()));
}

TEST_CASE("generated sublattice closes under meet and join") {
    Lattice host = Lattice::powerset(g3());
    GroundSet g = host.ground();

    // two singletons: bounds get adjoined, meet is bottom, join is {a,b}
    std::vector<Elem> gen{el(g, {"a"}), el(g, {"b"})};
    Lattice s = generate_sublattice(host, gen);
    std::set<Elem> got(s.elems().begin(), s.elems().end());
    std::set<Elem> want{Elem{0}, Elem{0b001}, Elem{0b010}, Elem{0b011}, Elem{0b111}};
    CHECK(got == want);

    // the witness pair {a,b}, {b,c} generates the five-element sublattice
    std::vector<Elem> gen2{el(g, {"a", "b"}), el(g, {"b", "c"})};
    Lattice w = generate_sublattice(host, gen2);
    std::set<Elem> got2(w.elems().begin(), w.elems().end());
    std::set<Elem> want2{Elem{0}, Elem{0b010}, Elem{0b011}, Elem{0b110}, Elem{0b111}};
    CHECK(got2 == want2);
}

TEST_CASE("lattice intersection keeps common elements") {
    GroundSet g = g2();
    Lattice ps = Lattice::powerset(g);
    Lattice bo = Lattice::bounds_only(g);
    std::vector<Lattice> both{ps, bo};
    Lattice inter = intersect_lattices(both);
    CHECK(inter.size() == 2);
    CHECK(inter == bo);
}

TEST_CASE("covers normalize to sorted unique members") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Elem ab = el(g, {"a", "b"}), bc = el(g, {"b", "c"});
    Cover c = make_cover(host, {bc, ab, bc});
    CHECK(c.size() == 2);
    CHECK(c.members()[0] == ab);
    CHECK(c.members()[1] == bc);
    CHECK(c.sup() == host.top());
    CHECK(c.has(ab));

    // not a cover: join below top
    CHECK_THROWS_AS(make_cover(host, {ab}), StructuralError);
    CHECK_FALSE(is_cover(host, std::vector<Elem>{ab}));
    // member outside the host
    Lattice w(g, {Elem{0}, Elem{0b010}, Elem{0b011}, Elem{0b110}, Elem{0b111}});
    CHECK_THROWS_AS(make_cover(w, {el(g, {"a"}), bc}), StructuralError);
    // empty member list
    CHECK_THROWS_AS(make_cover(host, {}), StructuralError);
}

TEST_CASE("cover join is the pairwise meet family") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Cover alpha = make_cover(host, {el(g, {"a", "b"}), el(g, {"b", "c"})});

    Cover jj = cover_join(alpha, alpha);
    // {ab^ab, ab^bc, bc^bc} = {ab, b, bc}
    CHECK(jj.size() == 3);
    CHECK(jj.has(el(g, {"b"})));
    CHECK(jj.has(el(g, {"a", "b"})));
    CHECK(jj.has(el(g, {"b", "c"})));

    // joining with the trivial cover changes nothing
    Cover top_only = make_cover(host, {host.top()});
    CHECK(cover_join(alpha, top_only) == alpha);

    // bottom elements drop out as long as something remains
    Cover disj = make_cover(host, {el(g, {"a"}), el(g, {"b", "c"})});
    Cover dj = cover_join(disj, disj);
    CHECK(dj == disj);
}

TEST_CASE("refinement is a quasiorder, not antisymmetric") {
    GroundSet g = g2();
    Lattice host = Lattice::powerset(g);
    Cover coarse = make_cover(host, {host.top()});
    Cover padded = make_cover(host, {el(g, {"a"}), host.top()});

    CHECK(refines(padded, coarse));
    CHECK(refines(coarse, padded)); // top lies below top
    CHECK(mutually_refine(padded, coarse));
    CHECK_FALSE(padded == coarse);

    Cover parts = make_cover(host, {el(g, {"a"}), el(g, {"b"})});
    CHECK(refines(parts, coarse));
    CHECK_FALSE(refines(coarse, parts));
}

TEST_CASE("partition detection") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    CHECK(is_partition(make_cover(host, {el(g, {"a"}), el(g, {"b", "c"})})));
    CHECK_FALSE(is_partition(make_cover(host, {el(g, {"a", "b"}), el(g, {"b", "c"})})));
    CHECK(is_partition(make_cover(host, {host.top()})));
}

TEST_CASE("cover enumeration agrees with the subset oracle") {
    GroundSet g = g3();
    Lattice w(g, {Elem{0}, Elem{0b010}, Elem{0b011}, Elem{0b110}, Elem{0b111}});

    for (int cap = 1; cap <= 4; ++cap) {
        // oracle: nonempty subsets of nonbottom elements, size <= cap, join top
        std::vector<Elem> mids;
        for (Elem e : w.elems())
            if (!is_bottom(e)) mids.push_back(e);
        std::set<std::vector<Elem>> oracle;
        for (unsigned mask = 1; mask < (1u << mids.size()); ++mask) {
            std::vector<Elem> sub;
            Elem acc{0};
            for (std::size_t i = 0; i < mids.size(); ++i)
                if (mask >> i & 1) {
                    sub.push_back(mids[i]);
                    acc = join(acc, mids[i]);
                }
            if (static_cast<int>(sub.size()) <= cap && acc == w.top())
                oracle.insert(sub);
        }

        std::set<std::vector<Elem>> got;
        for (const Cover& c : enumerate_covers(w, cap))
            got.insert({c.members().begin(), c.members().end()});
        CAPTURE(cap);
        CHECK(got == oracle);
    }

    // frozen counts for the five-element witness lattice
    CHECK(enumerate_covers(w, 1).size() == 1);  // {X}
    CHECK(enumerate_covers(w, 2).size() == 5);
    CHECK(enumerate_covers(w, 4).size() == 10);
}

TEST_CASE("cover enumeration respects the early-stop callback") {
    Lattice p = Lattice::powerset(g2());
    int seen = 0;
    for_each_cover(p, 3, [&](const Cover&) { return ++seen < 2; });
    CHECK(seen == 2);
    CHECK_THROWS_AS(enumerate_covers(p, 0), PreconditionError);
}
