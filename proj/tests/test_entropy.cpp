#include <doctest.h>

#include <cmath>

#include "mdl/action.hpp"
#include "mdl/entropy.hpp"
#include "mdl/errors.hpp"
#include "mdl/suites.hpp"

using namespace mdl;

namespace {

GroundSet g3() { return GroundSet({"a", "b", "c"}); }

Elem el(const GroundSet& g, std::initializer_list<std::string> labels) {
    std::vector<std::string> v(labels);
    return g.element(v);
}

EntropyConfig full_pool() {
    EntropyConfig cfg;
    cfg.tolerance = 0.0;
    return cfg;
}

} // namespace

TEST_CASE("mass entropy matches hand-computed values") {
    std::vector<double> two_one{2.0, 1.0};
    CHECK(entropy_of_masses(two_one) ==
          doctest::Approx(0.6365141682948128).epsilon(1e-14));

    std::vector<double> biased{0.3, 0.7};
    CHECK(entropy_of_masses(biased) ==
          doctest::Approx(0.6108643020548935).epsilon(1e-14));

    // zero masses contribute nothing
    std::vector<double> padded{0.0, 0.3, 0.7, 0.0};
    CHECK(entropy_of_masses(padded) == entropy_of_masses(biased));

    std::vector<double> point{5.0};
    CHECK(entropy_of_masses(point) == 0.0);

    std::vector<double> uniform4{1.0, 1.0, 1.0, 1.0};
    CHECK(entropy_of_masses(uniform4) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));

    std::vector<double> dead{0.0, 0.0};
    CHECK_THROWS_AS((void)entropy_of_masses(dead), InvariantError);
}

TEST_CASE("static cover entropy normalizes by total mass") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Measurement m =
        Measurement::from_point_weights(host, std::vector<double>{0.25, 0.5, 0.25});
    Cover alpha = make_cover(host, {el(g, {"a", "b"}), el(g, {"b", "c"})});
    CHECK(total_mass(alpha, m) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(n_nonzero(alpha, m) == 2);
    std::vector<double> masses{0.75, 0.75};
    CHECK(h_star(alpha, m) == entropy_of_masses(masses));
    CHECK(h_star(alpha, m) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("certificate ranking keeps the weaker tag") {
    CHECK(weakest(Certificate::ExactByTheory, Certificate::Exhaustive) ==
          Certificate::Exhaustive);
    CHECK(weakest(Certificate::UpperBound, Certificate::Exhaustive) ==
          Certificate::UpperBound);
    CHECK(weakest(Certificate::LowerBound, Certificate::UpperBound) ==
          Certificate::LowerBound);
    CHECK(to_string(Certificate::ExactByTheory) == "exact-by-theory");
}

TEST_CASE("config validation pins the knobs") {
    EntropyConfig cfg;
    cfg.validate();
    CHECK(cfg.report_scale() == 1.0);
    cfg.log_base = LogBase::Two;
    CHECK(cfg.report_scale() == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-15));

    EntropyConfig bad = cfg;
    bad.folner_max_n = 0;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    bad = cfg;
    bad.decomposition_max_len = 0;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    bad = cfg;
    bad.tolerance = -1e-9;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    bad = cfg;
    bad.cover_pool_max_size = -1;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("minimal subcovers drive the counting entropy") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Measurement ind = Measurement::indicator(host);

    Cover singles = make_cover(
        host, {el(g, {"a"}), el(g, {"b"}), el(g, {"c"})});
    CHECK(min_subcover_size(singles, ind) == 3);
    std::vector<double> ones3{1.0, 1.0, 1.0};
    CHECK(min_subcover_path(singles, ind) == entropy_of_masses(ones3));

    Cover padded = make_cover(host, {el(g, {"a"}), host.top()});
    CHECK(min_subcover_size(padded, ind) == 1);
    CHECK(min_subcover_path(padded, ind) == 0.0);

    // the route is reserved for nonemptiness indicators
    Measurement skewed =
        Measurement::from_point_weights(host, std::vector<double>{0.2, 0.3, 0.5});
    CHECK_THROWS_AS((void)min_subcover_size(singles, skewed), PreconditionError);
}

TEST_CASE("dominated-refinement entropy is exact on the witness pair") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Lattice w(g, {Elem{0}, Elem{0b010}, Elem{0b011}, Elem{0b110}, Elem{0b111}});
    Measurement m =
        Measurement::from_point_weights(host, std::vector<double>{0.01, 0.98, 0.01});
    Cover alpha = make_cover(w, {Elem{0b011}, Elem{0b110}});

    // inside the five-element lattice only the pair itself joins to top
    Bound hb = h_hat(alpha, w, m, full_pool());
    CHECK(hb.exact);
    std::vector<double> pair_masses{0.99, 0.99};
    CHECK(hb.value == entropy_of_masses(pair_masses));
    CHECK(hb.value == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    ValueCert vc = h_w(alpha, w, m, full_pool());
    CHECK(vc.value == doctest::Approx(std::log(2.0)).epsilon(1e-15));

    // the ambient powerset admits the cheap refinement {ab, c}
    ValueCert amb = h_w(alpha, host, m, full_pool());
    CHECK(amb.value == doctest::Approx(0.056001534354847345).epsilon(1e-12));
    CHECK(amb.value < vc.value);
}

TEST_CASE("indicator covers reduce to minimal subcover counting") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Measurement ind = Measurement::indicator(host);
    Cover singles = make_cover(
        host, {el(g, {"a"}), el(g, {"b"}), el(g, {"c"})});

    ValueCert vc = h_w(singles, host, ind, full_pool());
    CHECK(vc.cert == Certificate::ExactByTheory);
    CHECK(vc.value == min_subcover_path(singles, ind));
    CHECK(vc.value == doctest::Approx(std::log(3.0)).epsilon(1e-14));

    // the generic searcher lands on the same double
    ValueCert gen = h_w_generic(singles, host, ind, full_pool());
    CHECK(gen.value == vc.value);
}

TEST_CASE("partitions in additive boolean hosts reduce to static entropy") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Measurement m =
        Measurement::from_point_weights(host, std::vector<double>{0.25, 0.25, 0.5});
    Cover part = make_cover(host, {el(g, {"a"}), el(g, {"b", "c"})});

    ValueCert vc = h_w(part, host, m, full_pool());
    CHECK(vc.cert == Certificate::ExactByTheory);
    CHECK(vc.value == h_star(part, m));
    CHECK(vc.value == partition_path(part, host, m));

    // dyadic masses keep even the generic route on the same double
    ValueCert gen = h_w_generic(part, host, m, full_pool());
    CHECK(gen.value == vc.value);
}

TEST_CASE("disjointification never undercuts the searched value") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Measurement m =
        Measurement::from_point_weights(host, std::vector<double>{0.2, 0.3, 0.5});
    Cover overlap = make_cover(host, {el(g, {"a", "b"}), el(g, {"b", "c"})});
    ValueCert gen = h_w_generic(overlap, host, m, full_pool());
    CHECK(partition_path(overlap, host, m) >= gen.value - 1e-12);
}

TEST_CASE("entropy bounds chain across every small cover") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Measurement m =
        Measurement::from_point_weights(host, std::vector<double>{0.2, 0.3, 0.5});
    EntropyConfig cfg = full_pool();
    int covers = 0;
    for_each_cover(host, 3, [&](const Cover& alpha) {
        ValueCert vc = h_w(alpha, host, m, cfg);
        Bound hb = h_hat(alpha, host, m, cfg);
        CHECK(vc.value >= -1e-12);
        CHECK(vc.value <= hb.value + 1e-12);
        CHECK(hb.value <=
              std::log(static_cast<double>(n_nonzero(alpha, m))) + 1e-12);
        ++covers;
        return true;
    });
    CHECK(covers > 20);
}

TEST_CASE("witness lattice reproduces the anomaly and its repair") {
    CounterexampleReport r = run_counterexample(0.01);
    CHECK(r.palm_w == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(r.palm_v == doctest::Approx(0.11190205689093088).epsilon(1e-12));
    CHECK(r.localized == doctest::Approx(0.056001534354847345).epsilon(1e-12));
    CHECK(r.anomaly);

    // heavier end points reverse the comparison
    CounterexampleReport flat = run_counterexample(0.25);
    CHECK(flat.palm_w == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(flat.palm_v == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
    CHECK_FALSE(flat.anomaly);

    CHECK_THROWS_AS((void)run_counterexample(0.5), PreconditionError);
    CHECK_THROWS_AS((void)run_counterexample(0.0), PreconditionError);
}

TEST_CASE("box averages of a static system decay as one over n") {
    GroundSet g2({"a", "b"});
    Lattice host = Lattice::powerset(g2);
    Measurement m =
        Measurement::from_point_weights(host, std::vector<double>{0.5, 0.5});
    GroupAction sw = GroupAction::cyclic(2);
    Cover alpha = make_cover(host, {Elem{0b01}, Elem{0b10}});

    EntropyConfig cfg = full_pool();
    cfg.folner_max_n = 4;
    ConvergenceTable t = palm_global_entropy(host, m, sw, alpha, cfg);
    REQUIRE(t.rows.size() == 4);
    for (const TableRow& row : t.rows) {
        CHECK(row.box_size == row.n);
        // the swapped cover rejoins to itself, so h stays log 2
        CHECK(row.h_w == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(row.ratio ==
              doctest::Approx(std::log(2.0) / row.n).epsilon(1e-12));
    }
    CHECK(t.final_ratio == t.rows.back().ratio);
}

TEST_CASE("localized box averages respect the invariant sublattice") {
    GroundSet g = g3();
    Lattice host = Lattice::powerset(g);
    Measurement m = Measurement::from_point_weights(
        host, std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
    GroupAction a = GroupAction::cyclic(3);
    Cover singles = make_cover(
        host, {el(g, {"a"}), el(g, {"b"}), el(g, {"c"})});

    EntropyConfig cfg = full_pool();
    cfg.folner_max_n = 3;
    ConvergenceTable t = folner_entropy(a, singles, host, m, cfg);
    REQUIRE(t.rows.size() == 3);
    for (const TableRow& row : t.rows)
        CHECK(row.h_w == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("whole-lattice palm entropy takes the cover supremum") {
    Counterexample cx = make_counterexample(0.01);
    EntropyConfig cfg = full_pool();
    cfg.folner_max_n = 1;
    GroupAction still = GroupAction::trivial(3);
    ValueCert w = palm_entropy_of_lattice(cx.w_object.lattice, cx.w_object.m,
                                          still, cfg);
    CHECK(w.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    ValueCert v = palm_entropy_of_lattice(cx.v_object.lattice, cx.v_object.m,
                                          still, cfg);
    CHECK(v.value == doctest::Approx(0.11190205689093088).epsilon(1e-12));
}
