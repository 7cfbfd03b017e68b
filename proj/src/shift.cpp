#include "mdl/shift.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mdl/errors.hpp"

namespace mdl {

namespace {

constexpr std::uint64_t kMaxWords = 4u * 1000u * 1000u;

void require_alphabet(const std::vector<std::string>& alphabet) {
    if (alphabet.size() < 2)
        throw StructuralError("shift alphabet needs at least 2 symbols");
    std::set<std::string> seen;
    for (const auto& s : alphabet) {
        if (s.empty()) throw StructuralError("empty alphabet symbol");
        if (!seen.insert(s).second)
            throw StructuralError("duplicate alphabet symbol: " + s);
    }
}

// Symbols of multi-character alphabets are joined with '.' so word labels
// stay unambiguous.
std::string join_word(const std::vector<std::string>& alphabet,
                      const std::vector<int>& word) {
    bool single = true;
    for (const auto& s : alphabet)
        if (s.size() != 1) { single = false; break; }
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!single && i > 0) out += '.';
        out += alphabet[static_cast<std::size_t>(word[i])];
    }
    return out;
}

// True when appending the last symbol created a forbidden suffix.
bool suffix_forbidden(const std::vector<int>& word,
                      const std::vector<std::vector<int>>& forbidden) {
    for (const auto& f : forbidden) {
        if (f.size() > word.size()) continue;
        bool hit = true;
        const std::size_t off = word.size() - f.size();
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (word[off + i] != f[i]) { hit = false; break; }
        }
        if (hit) return true;
    }
    return false;
}

double word_mass(const ShiftSystem& sys, const std::vector<int>& word) {
    if (sys.kind == ShiftKind::Bernoulli) {
        double p = 1.0;
        for (int s : word) p *= sys.weights[static_cast<std::size_t>(s)];
        return p;
    }
    // markov: stationary start, chain of transitions
    double p = sys.stationary[static_cast<std::size_t>(word.front())];
    for (std::size_t i = 0; i + 1 < word.size(); ++i)
        p *= sys.transition[static_cast<std::size_t>(word[i])]
                           [static_cast<std::size_t>(word[i + 1])];
    return p;
}

template <typename Fn>
void walk_words(const ShiftSystem& sys, int n, Fn&& visit) {
    const int k = static_cast<int>(sys.alphabet.size());
    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(word.size()) == n) {
            visit(word);
            return;
        }
        for (int s = 0; s < k; ++s) {
            word.push_back(s);
            if (sys.kind != ShiftKind::Sft || !suffix_forbidden(word, sys.forbidden))
                self(self);
            word.pop_back();
        }
    };
    rec(rec);
}

} // namespace

ShiftSystem ShiftSystem::bernoulli(std::vector<std::string> alphabet,
                                   std::vector<double> weights) {
    ShiftSystem sys;
    sys.alphabet = std::move(alphabet);
    sys.kind = ShiftKind::Bernoulli;
    sys.weights = std::move(weights);
    sys.validate();
    return sys;
}

ShiftSystem ShiftSystem::markov(std::vector<std::string> alphabet,
                                std::vector<std::vector<double>> transition) {
    ShiftSystem sys;
    sys.alphabet = std::move(alphabet);
    sys.kind = ShiftKind::Markov;
    sys.transition = std::move(transition);
    sys.stationary = stationary_of(sys.transition);
    sys.validate();
    return sys;
}

ShiftSystem ShiftSystem::sft(std::vector<std::string> alphabet,
                             std::vector<std::string> forbidden_words) {
    ShiftSystem sys;
    sys.kind = ShiftKind::Sft;
    require_alphabet(alphabet);
    // map forbidden words to symbol index sequences; multi-char symbols use
    // '.'-separated words
    bool single = true;
    for (const auto& s : alphabet)
        if (s.size() != 1) { single = false; break; }
    for (const auto& w : forbidden_words) {
        std::vector<int> seq;
        std::vector<std::string> parts;
        if (single) {
            for (char c : w) parts.push_back(std::string(1, c));
        } else {
            std::string cur;
            for (char c : w) {
                if (c == '.') { parts.push_back(cur); cur.clear(); }
                else cur += c;
            }
            parts.push_back(cur);
        }
        for (const auto& p : parts) {
            auto it = std::find(alphabet.begin(), alphabet.end(), p);
            if (it == alphabet.end())
                throw ParseError("forbidden word uses unknown symbol: " + p);
            seq.push_back(static_cast<int>(it - alphabet.begin()));
        }
        if (seq.empty()) throw ParseError("empty forbidden word");
        sys.forbidden.push_back(std::move(seq));
    }
    sys.alphabet = std::move(alphabet);
    sys.validate();
    return sys;
}

void ShiftSystem::validate() const {
    require_alphabet(alphabet);
    const std::size_t k = alphabet.size();
    if (kind == ShiftKind::Bernoulli) {
        if (weights.size() != k)
            throw StructuralError("bernoulli weight count does not match alphabet");
        double sum = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw StructuralError("negative bernoulli weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw StructuralError("bernoulli weights do not sum to 1");
    } else if (kind == ShiftKind::Markov) {
        if (transition.size() != k)
            throw StructuralError("markov transition row count does not match alphabet");
        for (const auto& row : transition) {
            if (row.size() != k)
                throw StructuralError("markov transition matrix is not square");
            double sum = 0.0;
            for (double p : row) {
                if (p < 0.0) throw StructuralError("negative markov transition entry");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw StructuralError("markov transition row does not sum to 1");
        }
        if (stationary.size() != k)
            throw StructuralError("markov stationary vector missing");
        // stationarity is re-checked here so externally poked systems fail fast
        for (std::size_t j = 0; j < k; ++j) {
            double pj = 0.0;
            for (std::size_t i = 0; i < k; ++i)
                pj += stationary[i] * transition[i][j];
            if (std::abs(pj - stationary[j]) > 1e-9)
                throw StructuralError("markov stationary vector is not stationary");
        }
    } else {
        for (const auto& f : forbidden) {
            if (f.empty()) throw StructuralError("empty forbidden word");
            for (int s : f)
                if (s < 0 || s >= static_cast<int>(k))
                    throw StructuralError("forbidden word symbol out of range");
        }
    }
}

std::uint64_t admissible_word_count(const ShiftSystem& sys, int n) {
    if (n < 1) throw PreconditionError("window length must be at least 1");
    std::uint64_t count = 0;
    walk_words(sys, n, [&](const std::vector<int>&) {
        if (++count > kMaxWords)
            throw PreconditionError("window has too many admissible words");
    });
    return count;
}

WordList admissible_words(const ShiftSystem& sys, int n, bool with_masses) {
    if (n < 1) throw PreconditionError("window length must be at least 1");
    if (with_masses && !sys.measured())
        throw PreconditionError("topological shift has no word masses");
    WordList out;
    walk_words(sys, n, [&](const std::vector<int>& word) {
        if (out.words.size() >= kMaxWords)
            throw PreconditionError("window has too many admissible words");
        out.words.push_back(join_word(sys.alphabet, word));
        if (with_masses) out.masses.push_back(word_mass(sys, word));
    });
    if (out.words.empty()) {
        // report the shortest window whose language is already empty
        for (int m = 1; m < n; ++m)
            if (admissible_word_count(sys, m) == 0) { n = m; break; }
        throw StructuralError("shift language is empty at window length " +
                              std::to_string(n));
    }
    if (with_masses) {
        double sum = 0.0;
        for (double p : out.masses) sum += p;
        if (std::abs(sum - 1.0) > 1e-9)
            throw InvariantError("window masses do not sum to 1");
    }
    return out;
}

WindowedLattice window(const ShiftSystem& sys, int n, bool topological_mode,
                       int materialize_limit) {
    if (!topological_mode && !sys.measured())
        throw PreconditionError("measure window requested on a topological shift");
    WindowedLattice out;
    out.window_len = n;
    out.topological = topological_mode;
    WordList wl = admissible_words(sys, n, !topological_mode);
    out.words = wl.words;
    out.atom_mass = wl.masses;
    if (static_cast<int>(out.words.size()) > materialize_limit) return out;

    GroundSet ground(out.words);
    out.lattice = Lattice::powerset(ground);
    if (topological_mode) {
        out.m = Measurement::indicator(*out.lattice);
    } else {
        out.m = Measurement::from_point_weights(*out.lattice, out.atom_mass);
    }
    std::vector<Elem> atoms;
    for (std::size_t i = 0; i < out.words.size(); ++i)
        atoms.push_back(Elem{std::uint64_t{1} << i});
    out.base_cover = make_cover(*out.lattice, atoms);
    return out;
}

ConvergenceTable shift_entropy_table(const ShiftSystem& sys, bool topological_mode,
                                     const EntropyConfig& cfg) {
    cfg.validate();
    sys.validate();
    if (!topological_mode && !sys.measured())
        throw PreconditionError("measure entropy requested on a topological shift");
    ConvergenceTable table;
    table.report_base = cfg.log_base;
    for (int n = 1; n <= cfg.folner_max_n; ++n) {
        TableRow row;
        row.n = n;
        row.box_size = n;
        if (topological_mode) {
            const std::uint64_t count = admissible_word_count(sys, n);
            if (count == 0)
                throw StructuralError("shift language is empty at window length " +
                                      std::to_string(n));
            // same primitive as the lattice engine's subcover path, so the
            // materialized-window cross-checks compare like with like
            row.h_w = entropy_of_masses(std::vector<double>(count, 1.0));
        } else {
            WordList wl = admissible_words(sys, n, true);
            row.h_w = entropy_of_masses(wl.masses);
        }
        row.ratio = row.h_w / static_cast<double>(n);
        row.cert = Certificate::ExactByTheory;
        table.rows.push_back(row);
        if (cfg.tolerance > 0.0 && table.rows.size() >= 3) {
            const std::size_t r = table.rows.size();
            double lo = table.rows[r - 3].ratio, hi = lo;
            for (std::size_t i = r - 2; i < r; ++i) {
                lo = std::min(lo, table.rows[i].ratio);
                hi = std::max(hi, table.rows[i].ratio);
            }
            if (hi - lo < cfg.tolerance) { table.converged = true; break; }
        }
    }
    table.final_ratio = table.rows.back().ratio;
    table.final_cert = Certificate::ExactByTheory;
    return table;
}

double classical_ks_entropy(const ShiftSystem& sys) {
    sys.validate();
    if (sys.kind == ShiftKind::Bernoulli) return entropy_of_masses(sys.weights);
    if (sys.kind == ShiftKind::Markov) {
        const std::size_t k = sys.alphabet.size();
        double h = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                const double p = sys.transition[i][j];
                if (p > 0.0) h -= sys.stationary[i] * p * std::log(p);
            }
        return h;
    }
    throw PreconditionError("topological shift has no measure entropy");
}

std::vector<std::vector<double>> transfer_matrix(const ShiftSystem& sys) {
    if (sys.kind != ShiftKind::Sft)
        throw PreconditionError("transfer matrix only defined for subshifts of finite type");
    int longest = 2;
    for (const auto& f : sys.forbidden)
        longest = std::max(longest, static_cast<int>(f.size()));
    const int state_len = longest - 1;
    std::vector<std::vector<int>> state_seqs;
    walk_words(sys, state_len, [&](const std::vector<int>& w) {
        state_seqs.push_back(w);
    });
    if (state_seqs.empty())
        throw StructuralError("shift language is empty at window length " +
                              std::to_string(state_len));
    const std::size_t s = state_seqs.size();
    std::vector<std::vector<double>> a(s, std::vector<double>(s, 0.0));
    const int k = static_cast<int>(sys.alphabet.size());
    for (std::size_t i = 0; i < s; ++i) {
        for (int sym = 0; sym < k; ++sym) {
            std::vector<int> extended = state_seqs[i];
            extended.push_back(sym);
            if (suffix_forbidden(extended, sys.forbidden)) continue;
            std::vector<int> next(extended.begin() + 1, extended.end());
            auto it = std::find(state_seqs.begin(), state_seqs.end(), next);
            if (it == state_seqs.end())
                throw InvariantError("transfer successor state missing");
            a[i][static_cast<std::size_t>(it - state_seqs.begin())] = 1.0;
        }
    }
    return a;
}

double spectral_radius(const std::vector<std::vector<double>>& a, double tol) {
    const std::size_t n = a.size();
    if (n == 0) throw PreconditionError("spectral radius of an empty matrix");
    for (const auto& row : a) {
        if (row.size() != n) throw PreconditionError("matrix is not square");
        for (double x : row)
            if (x < 0.0) throw PreconditionError("matrix has negative entries");
    }
    // iterate on a + I: shifts every eigenvalue by 1, which kills the
    // oscillation of periodic nonnegative matrices without moving the root
    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    double lambda = 0.0;
    for (int iter = 0; iter < 200000; ++iter) {
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = v[i];
            for (std::size_t j = 0; j < n; ++j) acc += a[i][j] * v[j];
            w[i] = acc;
        }
        double norm = 0.0;
        for (double x : w) norm += std::abs(x);
        if (norm == 0.0) return 0.0;
        for (double& x : w) x /= norm;
        const double next = norm; // since |v|_1 = 1
        v = std::move(w);
        if (iter > 0 && std::abs(next - lambda) < tol) return next - 1.0;
        lambda = next;
    }
    throw InvariantError("power iteration did not converge");
}

double classical_top_entropy(const ShiftSystem& sys) {
    sys.validate();
    if (sys.kind != ShiftKind::Sft)
        return std::log(static_cast<double>(sys.alphabet.size()));
    if (sys.forbidden.empty())
        return std::log(static_cast<double>(sys.alphabet.size()));
    const double rho = spectral_radius(transfer_matrix(sys));
    if (rho <= 0.0) throw StructuralError("shift language dies out");
    return std::log(rho);
}

ValueCert shift_h_mdl(const ShiftSystem& sys, bool topological_mode,
                      const EntropyConfig& cfg) {
    ConvergenceTable table = shift_entropy_table(sys, topological_mode, cfg);
    // the word partition generates, so Bernoulli ratios are n-independent
    // and already the limit; elsewhere the table value is a one-cover bound
    const bool exact = (sys.kind == ShiftKind::Bernoulli) && !topological_mode;
    return {table.final_ratio,
            exact ? Certificate::ExactByTheory : Certificate::LowerBound};
}

std::vector<double> stationary_of(const std::vector<std::vector<double>>& transition) {
    const std::size_t k = transition.size();
    if (k == 0 || k > 32)
        throw PreconditionError("markov chain must have between 1 and 32 states");
    for (const auto& row : transition)
        if (row.size() != k)
            throw StructuralError("markov transition matrix is not square");
    // solve pi (P - I) = 0 with sum(pi) = 1: transpose, replace the last
    // equation by the normalization row
    std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            a[i][j] = transition[j][i] - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < k; ++j) a[k - 1][j] = 1.0;
    a[k - 1][k] = 1.0;

    // gaussian elimination with partial pivoting
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-14)
            throw StructuralError("markov chain has no unique stationary vector");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> pi(k);
    for (std::size_t i = 0; i < k; ++i) pi[i] = a[i][k] / a[i][i];
    double sum = 0.0;
    for (double& p : pi) {
        if (p < -1e-9) throw StructuralError("stationary vector has a negative entry");
        if (p < 0.0) p = 0.0;
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw StructuralError("stationary vector does not normalize");
    for (std::size_t j = 0; j < k; ++j) {
        double pj = 0.0;
        for (std::size_t i = 0; i < k; ++i) pj += pi[i] * transition[i][j];
        if (std::abs(pj - pi[j]) > 1e-9)
            throw StructuralError("solved vector is not stationary");
    }
    return pi;
}

} // namespace mdl
