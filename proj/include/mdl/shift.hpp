#pragma once

#include <cstdint>
#include <optional>

#include "mdl/entropy.hpp"

namespace mdl {

enum class ShiftKind { Bernoulli, Markov, Sft };

// One-dimensional symbolic system over a finite alphabet.  Bernoulli and
// Markov carry a measure; subshifts of finite type are topological.
struct ShiftSystem {
    std::vector<std::string> alphabet;
    ShiftKind kind = ShiftKind::Bernoulli;
    std::vector<double> weights;                  // bernoulli
    std::vector<std::vector<double>> transition;  // markov
    std::vector<double> stationary;               // markov, solved from transition
    std::vector<std::vector<int>> forbidden;      // sft, symbol index sequences

    static ShiftSystem bernoulli(std::vector<std::string> alphabet,
                                 std::vector<double> weights);
    static ShiftSystem markov(std::vector<std::string> alphabet,
                              std::vector<std::vector<double>> transition);
    static ShiftSystem sft(std::vector<std::string> alphabet,
                           std::vector<std::string> forbidden_words);

    bool measured() const { return kind != ShiftKind::Sft; }
    void validate() const;
};

// Admissible words of length n; masses empty for topological systems.
struct WordList {
    std::vector<std::string> words;
    std::vector<double> masses;
};
WordList admissible_words(const ShiftSystem& sys, int n, bool with_masses);
std::uint64_t admissible_word_count(const ShiftSystem& sys, int n);

// Window of length n seen as a measured lattice: ground points are the
// admissible words, the lattice is the powerset over them (what the window
// cover generates), and the base cover is the translated time-0 partition,
// i.e. the partition into word atoms.  Materialized only when the atom count
// is small enough to hold the full powerset.
struct WindowedLattice {
    int window_len = 0;
    std::vector<std::string> words;
    std::vector<double> atom_mass; // empty in topological mode
    bool topological = false;
    std::optional<Lattice> lattice;
    std::optional<Measurement> m;
    std::optional<Cover> base_cover;
};
WindowedLattice window(const ShiftSystem& sys, int n, bool topological_mode,
                       int materialize_limit = 12);

// Ratio table h(window n)/n for n = 1..folner_max_n; measure kinds use the
// partition fast path on word masses, topological kinds the subcover count.
ConvergenceTable shift_entropy_table(const ShiftSystem& sys, bool topological_mode,
                                     const EntropyConfig& cfg);

double classical_ks_entropy(const ShiftSystem& sys);  // nats
double classical_top_entropy(const ShiftSystem& sys); // nats

// Terminal table ratio with a certificate: exact for Bernoulli measure mode
// (the generating-partition fast path, ratios are n-independent), a lower
// bound with respect to the cover sup otherwise.
ValueCert shift_h_mdl(const ShiftSystem& sys, bool topological_mode,
                      const EntropyConfig& cfg);

std::vector<double> stationary_of(const std::vector<std::vector<double>>& transition);

// Perron root of a nonnegative matrix by power iteration on A + I.
double spectral_radius(const std::vector<std::vector<double>>& a, double tol = 1e-10);

// De Bruijn-style transfer matrix of an SFT; states are the admissible words
// of length max(2, longest forbidden) - 1.
std::vector<std::vector<double>> transfer_matrix(const ShiftSystem& sys);

} // namespace mdl
