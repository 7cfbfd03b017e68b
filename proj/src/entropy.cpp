#include "mdl/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace mdl {

void EntropyConfig::validate() const {
    if (decomposition_max_len < 1)
        throw PreconditionError("decomposition_max_len must be >= 1");
    if (cover_pool_max_size < 0)
        throw PreconditionError("cover_pool_max_size must be >= 0");
    if (folner_max_n < 1) throw PreconditionError("folner_max_n must be >= 1");
    if (!(tolerance >= 0.0)) throw PreconditionError("tolerance must be >= 0");
}

double EntropyConfig::report_scale() const {
    return log_base == LogBase::Two ? 1.0 / std::log(2.0) : 1.0;
}

std::string_view to_string(Certificate c) {
    switch (c) {
        case Certificate::ExactByTheory: return "exact-by-theory";
        case Certificate::Exhaustive: return "exhaustive";
        case Certificate::UpperBound: return "upper-bound";
        case Certificate::LowerBound: return "lower-bound";
    }
    return "?";
}

Certificate weakest(Certificate a, Certificate b) {
    auto rank = [](Certificate c) {
        switch (c) {
            case Certificate::ExactByTheory: return 0;
            case Certificate::Exhaustive: return 1;
            case Certificate::UpperBound: return 2;
            case Certificate::LowerBound: return 3;
        }
        return 3;
    };
    return rank(a) >= rank(b) ? a : b;
}

double entropy_of_masses(std::span<const double> masses) {
    double s = 0.0;
    for (double v : masses) s += v;
    if (!(s > 0.0)) throw InvariantError("total mass of a cover must be positive");
    double acc = 0.0;
    for (double v : masses) {
        if (v <= 0.0) continue;
        const double p = v / s;
        acc -= p * std::log(p);
    }
    return acc;
}

namespace {

std::vector<double> member_masses(const Cover& alpha, const Measurement& m) {
    std::vector<double> out;
    out.reserve(alpha.members().size());
    for (Elem e : alpha.members()) out.push_back(m(e));
    return out;
}

} // namespace

double total_mass(const Cover& alpha, const Measurement& m) {
    double s = 0.0;
    for (Elem e : alpha.members()) s += m(e);
    if (!(s > 0.0)) throw InvariantError("total mass of a cover must be positive");
    return s;
}

double h_star(const Cover& alpha, const Measurement& m) {
    return entropy_of_masses(member_masses(alpha, m));
}

int n_nonzero(const Cover& alpha, const Measurement& m) {
    int n = 0;
    for (Elem e : alpha.members())
        if (m(e) > 0.0) ++n;
    return n;
}

namespace {

void require_in_sigma_w(const Cover& alpha, const Lattice& W) {
    for (Elem e : alpha.members())
        if (!W.contains(e))
            throw PreconditionError("cover member is not an element of W");
    if (alpha.sup() != W.top())
        throw PreconditionError("cover does not join to the top of W");
}

} // namespace

Bound h_hat(const Cover& alpha, const Lattice& W, const Measurement& m,
            const EntropyConfig& cfg) {
    cfg.validate();
    require_in_sigma_w(alpha, W);
    const int N = n_nonzero(alpha, m);
    if (N == 0) throw InvariantError("cover with no positive-mass member");
    const int z_cap =
        cfg.cover_pool_max_size > 0 ? std::min(N, cfg.cover_pool_max_size) : N;

    // Candidates split into positive-mass elements dominated by alpha and the
    // join of the mass-zero dominated ones; zero-mass members never change h*
    // but can contribute coverage, so they are absorbed wholesale.
    std::vector<Elem> positive;
    Elem zero_join{0};
    for (Elem w : W.elems()) {
        if (is_bottom(w)) continue;
        bool dominated = false;
        for (Elem a : alpha.members())
            if (leq(w, a)) {
                dominated = true;
                break;
            }
        if (!dominated) continue;
        if (m(w) > 0.0)
            positive.push_back(w);
        else
            zero_join = join(zero_join, w);
    }
    const int P = static_cast<int>(positive.size());
    if (P > 26)
        throw PreconditionError("h_hat candidate family too large for exhaustive sup");

    const Elem top = W.top();
    double best = -1.0;
    std::vector<double> masses;
    std::vector<int> idx;
    auto rec = [&](auto&& self, int start, Elem acc) -> void {
        if (!idx.empty() && join(acc, zero_join) == top) {
            const double v = entropy_of_masses(masses);
            if (v > best) best = v;
        }
        if (static_cast<int>(idx.size()) == z_cap) return;
        for (int i = start; i < P; ++i) {
            idx.push_back(i);
            masses.push_back(m(positive[i]));
            self(self, i + 1, join(acc, positive[i]));
            masses.pop_back();
            idx.pop_back();
        }
    };
    rec(rec, 0, Elem{0});

    const bool exact = z_cap == N;
    if (best < 0.0) {
        // Budget left no feasible candidate; alpha itself still witnesses a
        // lower bound for the true sup.
        return {h_star(alpha, m), false};
    }
    return {best, exact};
}

int min_subcover_size(const Cover& alpha, const Measurement& m) {
    for (Elem e : alpha.members())
        if (m(e) != (is_bottom(e) ? 0.0 : 1.0))
            throw PreconditionError("minimal-subcover path needs the nonemptiness "
                                    "indicator measurement");
    const Elem top = alpha.sup();
    auto ms = alpha.members();
    const int n = static_cast<int>(ms.size());
    int best = 0;
    for (Elem e : ms)
        if (!is_bottom(e)) ++best; // all nonbottom members is always a subcover
    std::vector<int> chosen;
    auto rec = [&](auto&& self, Elem acc) -> void {
        if (acc == top) {
            best = std::min(best, static_cast<int>(chosen.size()));
            return;
        }
        if (static_cast<int>(chosen.size()) + 1 >= best) return;
        // Branch on the uncovered point with the fewest candidate members.
        int pick = -1, fewest = n + 1;
        for (int b = 0; b < 64; ++b) {
            if (!(top.bits >> b & 1) || (acc.bits >> b & 1)) continue;
            int cnt = 0;
            for (Elem e : ms)
                if (e.bits >> b & 1) ++cnt;
            if (cnt < fewest) {
                fewest = cnt;
                pick = b;
            }
        }
        if (pick < 0) return;
        for (int i = 0; i < n; ++i) {
            if (!(ms[i].bits >> pick & 1)) continue;
            chosen.push_back(i);
            self(self, join(acc, ms[i]));
            chosen.pop_back();
        }
    };
    rec(rec, Elem{0});
    return best;
}

double min_subcover_path(const Cover& alpha, const Measurement& m) {
    const int k = min_subcover_size(alpha, m);
    // h* of any k nonbottom members is log k; reuse the shared primitive so
    // the value is bit-identical with the generic search's optimum.
    std::vector<double> ones(static_cast<size_t>(k), 1.0);
    return entropy_of_masses(ones);
}

double partition_path(const Cover& alpha, const Lattice& W, const Measurement& m) {
    require_in_sigma_w(alpha, W);
    if (!W.complement_closed())
        throw PreconditionError("partition path needs a complement-closed W");
    if (!additive_on_disjoint(W, m))
        throw PreconditionError("partition path needs m additive on disjoint joins");
    std::vector<Elem> parts;
    Elem prior{0};
    for (Elem a : alpha.members()) {
        const Elem d = meet(a, W.complement({W.top().bits & prior.bits}));
        prior = join(prior, a);
        if (!is_bottom(d)) parts.push_back(d);
    }
    return h_star(Cover(std::move(parts)), m);
}

namespace {

struct PoolItem {
    Cover beta;
    double hhat;
};

ValueCert bounded_decomposition_search(const Cover& alpha, const Lattice& W,
                                       const Measurement& m, const EntropyConfig& cfg) {
    const int requested_cap = cfg.cover_pool_max_size > 0 ? cfg.cover_pool_max_size
                                                          : alpha.size() + 2;
    int cap = std::min(requested_cap, W.size() - 1);
    if (cap < 1) cap = 1;

    std::vector<Cover> pool = enumerate_covers(W, cap);
    bool alpha_in_pool = false;
    for (const Cover& c : pool)
        if (c == alpha) {
            alpha_in_pool = true;
            break;
        }
    if (!alpha_in_pool) pool.push_back(alpha); // cap may be below |alpha|

    // Config with the pool knob pinned so h_hat stays exact for pool members
    // (their member counts never exceed the cap we enumerated with).
    EntropyConfig inner = cfg;
    inner.cover_pool_max_size = 0;

    std::vector<PoolItem> items;
    items.reserve(pool.size());
    for (Cover& c : pool) {
        const double h = h_hat(c, W, m, inner).value;
        items.push_back({std::move(c), h});
    }
    std::stable_sort(items.begin(), items.end(),
                     [](const PoolItem& a, const PoolItem& b) { return a.hhat < b.hhat; });

    double best = h_hat(alpha, W, m, inner).value; // singleton decomposition {alpha}
    const int L = cfg.decomposition_max_len;
    const Cover neutral({W.top()});

    auto rec = [&](auto&& self, size_t start, int depth, double sum,
                   const Cover& joined) -> void {
        if (depth == L) return;
        for (size_t i = start; i < items.size(); ++i) {
            const double nsum = sum + items[i].hhat;
            if (nsum >= best) break; // ascending h_hat: nothing further helps
            const Cover njoin = cover_join(joined, items[i].beta);
            if (refines(njoin, alpha)) {
                best = nsum; // strictly better by the break above
            }
            self(self, i, depth + 1, nsum, njoin);
        }
    };
    rec(rec, 0, 0, 0.0, neutral);

    const bool complete_pool = requested_cap >= W.size() - 1;
    return {best, complete_pool ? Certificate::Exhaustive : Certificate::UpperBound};
}

} // namespace

ValueCert h_w_generic(const Cover& alpha, const Lattice& W, const Measurement& m,
                      const EntropyConfig& cfg) {
    cfg.validate();
    require_in_sigma_w(alpha, W);
    return bounded_decomposition_search(alpha, W, m, cfg);
}

ValueCert h_w(const Cover& alpha, const Lattice& W, const Measurement& m,
              const EntropyConfig& cfg) {
    cfg.validate();
    require_in_sigma_w(alpha, W);
    if (is_indicator(W, m))
        return {min_subcover_path(alpha, m), Certificate::ExactByTheory};
    if (W.complement_closed() && is_partition(alpha) && additive_on_disjoint(W, m))
        return {h_star(alpha, m), Certificate::ExactByTheory};
    return bounded_decomposition_search(alpha, W, m, cfg);
}

ConvergenceTable folner_entropy(const GroupAction& act, const Cover& alpha,
                                const Lattice& W, const Measurement& m,
                                const EntropyConfig& cfg) {
    cfg.validate();
    require_in_sigma_w(alpha, W);
    ConvergenceTable table;
    table.report_base = cfg.log_base;
    table.final_cert = Certificate::ExactByTheory;
    std::map<std::vector<Elem>, ValueCert> cache;
    for (int n = 1; n <= cfg.folner_max_n; ++n) {
        const FolnerBox box{act.dimension, n};
        const Cover aF = orbit_join(act, alpha, box);
        for (Elem e : aF.members())
            if (!W.contains(e))
                throw StructuralError("W is not invariant: orbit join left the lattice");
        std::vector<Elem> key(aF.members().begin(), aF.members().end());
        auto it = cache.find(key);
        ValueCert vc;
        if (it != cache.end()) {
            vc = it->second;
        } else {
            vc = h_w(aF, W, m, cfg);
            cache.emplace(std::move(key), vc);
        }
        const long long size = box_size(box);
        table.rows.push_back(
            {n, size, vc.value, vc.value / static_cast<double>(size), vc.cert});
        table.final_cert = weakest(table.final_cert, vc.cert);
        const size_t r = table.rows.size();
        if (cfg.tolerance > 0.0 && r >= 3) {
            const double a = table.rows[r - 3].ratio;
            const double b = table.rows[r - 2].ratio;
            const double c = table.rows[r - 1].ratio;
            const double lo = std::min({a, b, c});
            const double hi = std::max({a, b, c});
            if (hi - lo < cfg.tolerance) {
                table.converged = true;
                break;
            }
        }
    }
    table.final_ratio = table.rows.back().ratio;
    return table;
}

ConvergenceTable palm_global_entropy(const Lattice& V, const Measurement& m,
                                     const GroupAction& act, const Cover& alpha,
                                     const EntropyConfig& cfg) {
    return folner_entropy(act, alpha, V, m, cfg);
}

ValueCert palm_entropy_of_lattice(const Lattice& V, const Measurement& m,
                                  const GroupAction& act, const EntropyConfig& cfg) {
    cfg.validate();
    if (V.size() > 16)
        throw PreconditionError("palm entropy sup is restricted to lattices with at "
                                "most 16 elements");
    const std::vector<Cover> covers = enumerate_covers(V, V.size() - 1);

    // h at a fixed complete pool is monotone under refinement, so the sup is
    // attained on refinement-maximal covers; evaluate one per mutual class.
    std::vector<const Cover*> reps;
    for (const Cover& c : covers) {
        bool maximal = true;
        for (const Cover& d : covers)
            if (refines(d, c) && !refines(c, d)) {
                maximal = false;
                break;
            }
        if (!maximal) continue;
        bool seen = false;
        for (const Cover* r : reps)
            if (mutually_refine(*r, c)) {
                seen = true;
                break;
            }
        if (!seen) reps.push_back(&c);
    }

    EntropyConfig full = cfg;
    full.cover_pool_max_size = V.size(); // complete pool for every evaluation
    ValueCert out{-std::numeric_limits<double>::infinity(), Certificate::Exhaustive};
    for (const Cover* r : reps) {
        const ConvergenceTable t = palm_global_entropy(V, m, act, *r, full);
        if (t.final_ratio > out.value) out.value = t.final_ratio;
        out.cert = weakest(out.cert, t.final_cert);
    }
    if (out.cert == Certificate::ExactByTheory) out.cert = Certificate::Exhaustive;
    return out;
}

ValueCert h_mdl(const DynLattice& dyn, const EntropyConfig& cfg) {
    cfg.validate();
    const Lattice& V = dyn.object.lattice;
    const int cap = cfg.cover_pool_max_size > 0
                        ? std::min(cfg.cover_pool_max_size, V.size() - 1)
                        : std::min(V.size() - 1, 4);
    const std::vector<Cover> covers = enumerate_covers(V, cap);
    ValueCert out{0.0, cap >= V.size() - 1 ? Certificate::Exhaustive
                                           : Certificate::LowerBound};
    bool first = true;
    for (const Cover& alpha : covers) {
        const Lattice W = dyn.object.omega(alpha);
        const ConvergenceTable t =
            folner_entropy(dyn.action, alpha, W, dyn.object.m, cfg);
        if (first || t.final_ratio > out.value) out.value = t.final_ratio;
        first = false;
        if (t.final_cert == Certificate::UpperBound)
            out.cert = weakest(out.cert, Certificate::LowerBound);
    }
    if (first) throw InvariantError("no covers enumerated for h_mdl");
    return out;
}

} // namespace mdl
