#pragma once

#include <optional>

#include "mdl/functors.hpp"
#include "mdl/shift.hpp"

namespace mdl {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    bool passed() const;
    std::size_t failed_count() const;
};

// Deterministic built-in corpus used by the suites and the acceptance run.
std::vector<ProbSystem> builtin_psp_systems();
std::vector<TopSystem> builtin_top_systems();
// Quotient factor pairs generated from the invariant families of the corpus,
// plus one windowed-shift-to-point pair.
std::vector<FactorPair> builtin_factor_pairs();

// Three-point lattice whose generated-topology sub-object carries more palm
// entropy than the ambient algebra once the end weights get small.
struct Counterexample {
    double eps = 0.0;
    MeasuredLattice v_object;
    MeasuredLattice w_object; // generated topology of alpha inside V
    Cover alpha_v;
    Cover alpha_w;
};
Counterexample make_counterexample(double eps);

struct CounterexampleReport {
    double eps = 0.0;
    double palm_w = 0.0;     // nats
    double palm_v = 0.0;     // nats
    double localized = 0.0;  // nats, h at the generated localization of alpha
    bool anomaly = false;    // palm_w strictly above palm_v
};
CounterexampleReport run_counterexample(double eps);

struct SuiteInputs {
    std::optional<MeasuredLattice> lattice; // external axiom check target
    std::vector<FactorPair> pairs;          // extra monotonicity pairs
};

SuiteReport run_axioms_suite(const SuiteInputs& in = {});
SuiteReport run_ow_suite();
SuiteReport run_monotonicity_suite(const SuiteInputs& in = {});
SuiteReport run_functor_laws_suite();
SuiteReport run_minimality_suite();
SuiteReport run_oracle_suite();

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const SuiteInputs& in = {});

} // namespace mdl
