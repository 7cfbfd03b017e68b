#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdl/lattice.hpp"

namespace mdl {

// Tolerance used everywhere two measurement values are compared.
inline constexpr double kMeasureTol = 1e-9;

// Nonnegative set function tabulated on lattice elements.
class Measurement {
public:
    explicit Measurement(std::vector<std::pair<Elem, double>> entries);

    static Measurement from_point_weights(const Lattice& host,
                                          std::span<const double> weights);
    static Measurement indicator(const Lattice& host); // 1 on nonempty, 0 on bottom

    double operator()(Elem e) const; // throws StructuralError when undefined
    bool defined_on(const Lattice& host) const;
    std::span<const std::pair<Elem, double>> entries() const { return table_; }

private:
    std::vector<std::pair<Elem, double>> table_; // sorted by element
};

struct AxiomViolation {
    std::string axiom; // "a" or "b"
    std::string detail;
};

// Axiom (a): m(bottom)=0 and m(top)!=0.  Axiom (b): m(a)=0 implies
// m(a v b) = m(b) for every b.  Returns all violations found.
std::vector<AxiomViolation> check_measurement_axioms(const Lattice& host,
                                                     const Measurement& m);

// m(a v b) = m(a) + m(b) whenever a ^ b = bottom and the join is in the lattice.
bool additive_on_disjoint(const Lattice& host, const Measurement& m);

bool is_indicator(const Lattice& host, const Measurement& m);

// Localization rule: assigns to each cover a sublattice of the host that
// contains the cover.  Carried as a named closure so functor-built objects
// can bind group actions without this module knowing about them.
class Localization {
public:
    using Rule = std::function<Lattice(const Cover&)>;

    Localization(std::string name, Rule rule)
        : name_(std::move(name)), rule_(std::move(rule)) {}

    static Localization generated_topology(Lattice host);   // meet/join closure
    static Localization generated_subalgebra(Lattice host); // + complements
    static Localization tabulated(std::vector<std::pair<Cover, Lattice>> table);

    Lattice operator()(const Cover& alpha) const;
    const std::string& name() const { return name_; }

private:
    std::string name_;
    Rule rule_;
};

struct MeasuredLattice {
    Lattice lattice;
    Measurement m;
    Localization omega;
};

// Every cover of W (up to max_cover_size members, 0 = all) localizes inside W.
bool is_local_sublattice(const MeasuredLattice& host, const Lattice& W,
                         int max_cover_size = 0);

// Morphism in the opposite-embedding presentation: an injective bounded
// lattice embedding of the target into the source that carries measurement
// and localization along.
struct Morphism {
    MeasuredLattice source;
    MeasuredLattice target;
    std::vector<Elem> embed; // aligned with target.lattice.elems()

    Elem apply(Elem target_elem) const;
    Cover apply_cover(const Cover& alpha) const;
};

// Returns human-readable violation strings; empty means the morphism checks
// out.  Localization preservation is verified on every cover of the target
// with at most cover_budget members (0 = all covers).
std::vector<std::string> check_morphism(const Morphism& phi, int cover_budget = 0);

Morphism compose(const Morphism& outer, const Morphism& inner);

// All covers with members drawn from host (bottom excluded, per the cover
// constructor's set semantics) of at most max_size members, emitted in a
// deterministic prefix-DFS order over the sorted element list.
std::vector<Cover> enumerate_covers(const Lattice& host, int max_size);

// Streaming form; callback returning false stops the walk early.
void for_each_cover(const Lattice& host, int max_size,
                    const std::function<bool(const Cover&)>& fn);

} // namespace mdl
