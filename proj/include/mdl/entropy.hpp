#pragma once

#include <optional>
#include <string_view>

#include "mdl/action.hpp"

namespace mdl {

enum class LogBase { E, Two };

struct EntropyConfig {
    LogBase log_base = LogBase::E;
    int decomposition_max_len = 3;
    // 0 = automatic: |alpha|+2 for the decomposition cover pool; the same knob
    // bounds member counts wherever covers are enumerated.
    int cover_pool_max_size = 0;
    int folner_max_n = 12;
    // Convergence tolerance for ratio tables; 0 disables early stopping.
    double tolerance = 1e-6;

    void validate() const;
    double report_scale() const; // 1 for nats, 1/ln 2 for bits
};

enum class Certificate {
    ExactByTheory, // a fast path whose value is the true quantity
    Exhaustive,    // the advertised bounded search space was fully enumerated
    UpperBound,    // search was truncated; true infimum may be lower
    LowerBound,    // sup-side truncation; true supremum may be higher
};

std::string_view to_string(Certificate c);
Certificate weakest(Certificate a, Certificate b);

struct ValueCert {
    double value = 0.0; // always in nats
    Certificate cert = Certificate::UpperBound;
};

// Shared entropy primitive; all routes funnel through this so equal optima
// produce bit-identical doubles.  Skips zero masses (0 log 0 = 0).
double entropy_of_masses(std::span<const double> masses);

double total_mass(const Cover& alpha, const Measurement& m); // throws when 0
double h_star(const Cover& alpha, const Measurement& m);     // nats
int n_nonzero(const Cover& alpha, const Measurement& m);

struct Bound {
    double value = 0.0;
    bool exact = false;
};

// sup{ h*(beta) : beta in Sigma_W, beta refines alpha, N(beta) <= N(alpha) }.
// Exact when the config pool cap does not truncate the member budget.
Bound h_hat(const Cover& alpha, const Lattice& W, const Measurement& m,
            const EntropyConfig& cfg);

// inf over decompositions beta_1..beta_n (n <= decomposition_max_len, members
// from the bounded cover pool of W) with join refining alpha, of sum h_hat.
// Fast paths: nonemptiness indicator -> log of minimal subcover size;
// complement-closed additive host with alpha a partition -> h*(alpha).
ValueCert h_w(const Cover& alpha, const Lattice& W, const Measurement& m,
              const EntropyConfig& cfg);

// The bounded search without fast-path dispatch (oracle side of the
// equivalence checks).
ValueCert h_w_generic(const Cover& alpha, const Lattice& W, const Measurement& m,
                      const EntropyConfig& cfg);

// Canonical ordered disjointification of alpha inside a complement-closed
// additive W, evaluated with h*.  Equals h_w on partitions; an upper bound
// otherwise.
double partition_path(const Cover& alpha, const Lattice& W, const Measurement& m);

// Minimal-cardinality subcover via branch and bound; value is h* of the
// first minimal subcover found (equal to log of its size).
int min_subcover_size(const Cover& alpha, const Measurement& m);
double min_subcover_path(const Cover& alpha, const Measurement& m);

struct TableRow {
    int n = 0;
    long long box_size = 0;
    double h_w = 0.0;  // nats
    double ratio = 0.0; // nats
    Certificate cert = Certificate::UpperBound;
};

struct ConvergenceTable {
    std::vector<TableRow> rows;
    bool converged = false;
    double final_ratio = 0.0; // nats
    Certificate final_cert = Certificate::UpperBound;
    LogBase report_base = LogBase::E; // serialization scales by this
};

// h_W(alpha^{F_n}) / |F_n| along Folner boxes of the action's dimension.
// W must be action-invariant and contain alpha.
ConvergenceTable folner_entropy(const GroupAction& act, const Cover& alpha,
                                const Lattice& W, const Measurement& m,
                                const EntropyConfig& cfg);

// Folner limit with W := the ambient lattice (no localization).
ConvergenceTable palm_global_entropy(const Lattice& V, const Measurement& m,
                                     const GroupAction& act, const Cover& alpha,
                                     const EntropyConfig& cfg);

// sup of palm_global_entropy final ratios over all covers of V.  Uses the
// refinement-maximal reduction: the computed h is monotone under refinement
// at a fixed pool, so only refinement-maximal covers are evaluated.
ValueCert palm_entropy_of_lattice(const Lattice& V, const Measurement& m,
                                  const GroupAction& act, const EntropyConfig& cfg);

// sup over enumerated covers alpha of the localized Folner limit at
// W = omega(alpha).  Certificate is Exhaustive only when the cover pool was
// complete and no inner search was truncated.
ValueCert h_mdl(const DynLattice& dyn, const EntropyConfig& cfg);

} // namespace mdl
