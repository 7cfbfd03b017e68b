#pragma once

#include <optional>

#include "mdl/action.hpp"

namespace mdl {

// Finite topological system: lattice of open sets plus a commuting action.
// Opens must contain the empty and the full set.
struct TopSystem {
    Lattice opens;
    GroupAction action;
};
void validate_top(const TopSystem& sys);

// Finite probability system: boolean algebra of events over weighted points.
struct ProbSystem {
    Lattice algebra;
    std::vector<double> mu; // one weight per ground point, sums to 1
    GroupAction action;
};
void validate_psp(const ProbSystem& sys);
Measurement psp_measurement(const ProbSystem& sys);

// Images of the entropy-structure functors.  Opens carry the nonemptiness
// indicator and localize by generated invariant topologies; algebras carry
// the measure and localize by generated invariant subalgebras.
DynLattice m_top(const TopSystem& sys);
DynLattice m_psp(const ProbSystem& sys);
// Terminal image: two-element lattice over a single point, identity action
// of the requested dimension.
DynLattice m_trivial(int dimension);

// Point map X -> Y by target index per source point.
struct FactorMap {
    std::vector<int> point_map;
};
Elem preimage_of(const FactorMap& fm, int source_points, Elem target_elem);

void validate_factor_top(const TopSystem& src, const TopSystem& dst, const FactorMap& fm);
void validate_factor_psp(const ProbSystem& src, const ProbSystem& dst, const FactorMap& fm);

// Image morphism M(X) -> M(Y): the target structure embeds by preimages.
Morphism apply_functor_top(const TopSystem& src, const TopSystem& dst, const FactorMap& fm);
Morphism apply_functor_psp(const ProbSystem& src, const ProbSystem& dst, const FactorMap& fm);
// Unique arrow M(X) -> M0 of matching dimension.
Morphism terminal_arrow(const DynLattice& image);

// All sublattices of opens containing bottom and top, closed under the
// action's preimages.  Guarded: at most 18 middle elements.
std::vector<std::vector<Elem>> invariant_subtopologies(const Lattice& opens,
                                                       const GroupAction& action);
// All action-compatible subalgebras, one per block partition of the atoms.
// Guarded: at most 6 atoms.
std::vector<std::vector<Elem>> invariant_subalgebras(const Lattice& algebra,
                                                     const GroupAction& action);
std::vector<Elem> atoms_of(const Lattice& algebra);

// Quotient system realizing an invariant family as the preimage of a factor.
struct TopQuotient { TopSystem system; FactorMap map; };
struct PspQuotient { ProbSystem system; FactorMap map; };
TopQuotient quotient_top(const TopSystem& src, const std::vector<Elem>& family);
PspQuotient quotient_psp(const ProbSystem& src, const std::vector<Elem>& family);

// Invariant families, each verified to arise as the preimage of an honest
// quotient factor.  Precompute these when checking many covers of one system.
std::vector<std::vector<Elem>> realized_families_top(const TopSystem& sys);
std::vector<std::vector<Elem>> realized_families_psp(const ProbSystem& sys);

// Does the localization rule return the smallest invariant family that both
// contains the cover and arises as a factor preimage?
struct MinimalityReport {
    bool equal = false;
    std::size_t families_total = 0;
    std::size_t families_containing = 0;
    std::string detail;
};
MinimalityReport check_localization_minimality_top(const TopSystem& sys, const Cover& alpha);
MinimalityReport check_localization_minimality_psp(const ProbSystem& sys, const Cover& alpha);
MinimalityReport check_localization_minimality_top(const TopSystem& sys, const Cover& alpha,
                                                   const std::vector<std::vector<Elem>>& realized);
MinimalityReport check_localization_minimality_psp(const ProbSystem& sys, const Cover& alpha,
                                                   const std::vector<std::vector<Elem>>& realized);

// Either flavor of finite system, for mixed corpora and file loading.
struct SystemVariant {
    std::optional<TopSystem> top;
    std::optional<ProbSystem> psp;
    bool is_top() const { return top.has_value(); }
};
struct FactorPair {
    SystemVariant source;
    SystemVariant target;
    FactorMap map;
};

} // namespace mdl
