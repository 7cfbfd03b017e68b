#include "mdl/measured.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace mdl {

namespace {

std::string show(const GroundSet& g, Elem e) {
    std::string out = "[";
    bool first = true;
    for (const auto& l : g.labels_of(e)) {
        if (!first) out += ",";
        out += l;
        first = false;
    }
    return out + "]";
}

std::string show_cover(const GroundSet& g, const Cover& c) {
    std::string out = "{";
    bool first = true;
    for (Elem e : c.members()) {
        if (!first) out += ",";
        out += show(g, e);
        first = false;
    }
    return out + "}";
}

} // namespace

Measurement::Measurement(std::vector<std::pair<Elem, double>> entries)
    : table_(std::move(entries)) {
    std::sort(table_.begin(), table_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < table_.size(); ++i) {
        if (i > 0 && table_[i].first == table_[i - 1].first)
            throw StructuralError("duplicate element in measurement table");
        if (!(table_[i].second >= 0.0))
            throw StructuralError("measurement values must be nonnegative");
    }
}

Measurement Measurement::from_point_weights(const Lattice& host,
                                            std::span<const double> weights) {
    if (static_cast<int>(weights.size()) != host.ground().size())
        throw StructuralError("point weight count does not match the ground set");
    std::vector<std::pair<Elem, double>> entries;
    entries.reserve(host.elems().size());
    for (Elem e : host.elems()) {
        double s = 0.0;
        for (int i = 0; i < host.ground().size(); ++i)
            if (e.bits >> i & 1) s += weights[i];
        entries.emplace_back(e, s);
    }
    return Measurement(std::move(entries));
}

Measurement Measurement::indicator(const Lattice& host) {
    std::vector<std::pair<Elem, double>> entries;
    entries.reserve(host.elems().size());
    for (Elem e : host.elems()) entries.emplace_back(e, is_bottom(e) ? 0.0 : 1.0);
    return Measurement(std::move(entries));
}

double Measurement::operator()(Elem e) const {
    auto it = std::lower_bound(table_.begin(), table_.end(), e,
                               [](const auto& p, Elem x) { return p.first < x; });
    if (it == table_.end() || it->first != e)
        throw StructuralError("measurement undefined on element");
    return it->second;
}

bool Measurement::defined_on(const Lattice& host) const {
    for (Elem e : host.elems()) {
        auto it = std::lower_bound(table_.begin(), table_.end(), e,
                                   [](const auto& p, Elem x) { return p.first < x; });
        if (it == table_.end() || it->first != e) return false;
    }
    return true;
}

std::vector<AxiomViolation> check_measurement_axioms(const Lattice& host,
                                                     const Measurement& m) {
    std::vector<AxiomViolation> out;
    const GroundSet& g = host.ground();
    if (std::abs(m(host.bottom())) > kMeasureTol)
        out.push_back({"a", "m(bottom) must be 0, got " + std::to_string(m(host.bottom()))});
    if (std::abs(m(host.top())) <= kMeasureTol)
        out.push_back({"a", "m(top) must be nonzero"});
    for (Elem a : host.elems()) {
        if (std::abs(m(a)) > kMeasureTol) continue;
        for (Elem b : host.elems()) {
            const Elem ab = join(a, b);
            if (!host.contains(ab)) continue; // host is closed, defensive
            if (std::abs(m(ab) - m(b)) > kMeasureTol) {
                std::ostringstream os;
                os << "m(" << show(g, a) << ")=0 but m(" << show(g, a) << " v "
                   << show(g, b) << ")=" << m(ab) << " != m(" << show(g, b)
                   << ")=" << m(b);
                out.push_back({"b", os.str()});
            }
        }
    }
    return out;
}

bool additive_on_disjoint(const Lattice& host, const Measurement& m) {
    for (Elem a : host.elems())
        for (Elem b : host.elems()) {
            if (!is_bottom(meet(a, b))) continue;
            const Elem ab = join(a, b);
            if (!host.contains(ab)) continue;
            if (std::abs(m(ab) - m(a) - m(b)) > kMeasureTol) return false;
        }
    return true;
}

bool is_indicator(const Lattice& host, const Measurement& m) {
    for (Elem e : host.elems()) {
        const double want = is_bottom(e) ? 0.0 : 1.0;
        if (m(e) != want) return false;
    }
    return true;
}

Localization Localization::generated_topology(Lattice host) {
    return Localization("generated-topology", [host = std::move(host)](const Cover& a) {
        return generate_sublattice(host, a.members());
    });
}

Localization Localization::generated_subalgebra(Lattice host) {
    if (!host.complement_closed())
        throw PreconditionError("generated-subalgebra localization needs a "
                                "complement-closed host");
    return Localization("generated-subalgebra", [host = std::move(host)](const Cover& a) {
        std::set<Elem> closure{host.bottom(), host.top()};
        for (Elem g : a.members()) {
            if (!host.contains(g))
                throw StructuralError("cover member is not in the localization host");
            closure.insert(g);
        }
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<Elem> snap(closure.begin(), closure.end());
            for (size_t i = 0; i < snap.size(); ++i) {
                grew |= closure.insert(host.complement(snap[i])).second;
                for (size_t j = i + 1; j < snap.size(); ++j) {
                    grew |= closure.insert(meet(snap[i], snap[j])).second;
                    grew |= closure.insert(join(snap[i], snap[j])).second;
                }
            }
        }
        return make_lattice_unchecked(host.ground(),
                                      std::vector<Elem>(closure.begin(), closure.end()));
    });
}

Localization Localization::tabulated(std::vector<std::pair<Cover, Lattice>> table) {
    return Localization("tabulated", [table = std::move(table)](const Cover& a) -> Lattice {
        for (const auto& [cover, lat] : table)
            if (cover == a) return lat;
        throw PreconditionError("tabulated localization has no entry for this cover");
    });
}

Lattice Localization::operator()(const Cover& alpha) const {
    Lattice out = rule_(alpha);
    for (Elem e : alpha.members())
        if (!out.contains(e))
            throw InvariantError("localization does not contain its cover");
    return out;
}

bool is_local_sublattice(const MeasuredLattice& host, const Lattice& W,
                         int max_cover_size) {
    if (!W.is_sublattice_of(host.lattice))
        throw StructuralError("candidate is not a sublattice of the host");
    const int cap = max_cover_size > 0 ? max_cover_size : W.size();
    bool local = true;
    for_each_cover(W, cap, [&](const Cover& alpha) {
        const Lattice om = host.omega(alpha);
        for (Elem e : om.elems())
            if (!W.contains(e)) {
                local = false;
                return false;
            }
        return true;
    });
    return local;
}

Elem Morphism::apply(Elem target_elem) const {
    auto es = target.lattice.elems();
    auto it = std::lower_bound(es.begin(), es.end(), target_elem);
    if (it == es.end() || *it != target_elem)
        throw StructuralError("morphism applied to a non-element of its target");
    return embed.at(static_cast<size_t>(it - es.begin()));
}

Cover Morphism::apply_cover(const Cover& alpha) const {
    std::vector<Elem> out;
    out.reserve(alpha.members().size());
    for (Elem e : alpha.members()) out.push_back(apply(e));
    return Cover(std::move(out));
}

std::vector<std::string> check_morphism(const Morphism& phi, int cover_budget) {
    std::vector<std::string> bad;
    const Lattice& W = phi.target.lattice;
    const Lattice& V = phi.source.lattice;
    const GroundSet& g = W.ground();
    if (phi.embed.size() != static_cast<size_t>(W.size())) {
        bad.push_back("embedding table size does not match the target lattice");
        return bad;
    }
    for (Elem e : phi.embed)
        if (!V.contains(e)) {
            bad.push_back("embedding image leaves the source lattice");
            return bad;
        }
    std::set<Elem> image(phi.embed.begin(), phi.embed.end());
    if (image.size() != phi.embed.size())
        bad.push_back("embedding is not injective");
    if (phi.apply(W.bottom()) != V.bottom()) bad.push_back("embedding moves bottom");
    if (phi.apply(W.top()) != V.top()) bad.push_back("embedding moves top");
    for (Elem a : W.elems())
        for (Elem b : W.elems()) {
            if (phi.apply(meet(a, b)) != meet(phi.apply(a), phi.apply(b)))
                bad.push_back("embedding breaks a meet at " + show(g, a) + "," + show(g, b));
            if (phi.apply(join(a, b)) != join(phi.apply(a), phi.apply(b)))
                bad.push_back("embedding breaks a join at " + show(g, a) + "," + show(g, b));
        }
    for (Elem a : W.elems())
        if (std::abs(phi.source.m(phi.apply(a)) - phi.target.m(a)) > kMeasureTol)
            bad.push_back("measurement not preserved at " + show(g, a));
    if (!bad.empty()) return bad; // localization checks assume a sane embedding

    const int cap = cover_budget > 0 ? cover_budget : W.size();
    for_each_cover(W, cap, [&](const Cover& alpha) {
        const Lattice om_t = phi.target.omega(alpha);
        std::vector<Elem> pushed;
        pushed.reserve(om_t.elems().size());
        for (Elem e : om_t.elems()) pushed.push_back(phi.apply(e));
        std::sort(pushed.begin(), pushed.end());
        const Lattice om_s = phi.source.omega(phi.apply_cover(alpha));
        if (!std::equal(pushed.begin(), pushed.end(), om_s.elems().begin(),
                        om_s.elems().end())) {
            bad.push_back("localization not preserved on cover " + show_cover(g, alpha));
            return false;
        }
        return true;
    });
    return bad;
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
    // outer: B -> C embeds C in B; inner: A -> B embeds B in A.
    // The composite embeds C in A.
    if (!(outer.source.lattice == inner.target.lattice))
        throw StructuralError("morphism composition mismatch");
    std::vector<Elem> embed;
    embed.reserve(outer.embed.size());
    for (Elem e : outer.target.lattice.elems()) embed.push_back(inner.apply(outer.apply(e)));
    return Morphism{inner.source, outer.target, std::move(embed)};
}

void for_each_cover(const Lattice& host, int max_size,
                    const std::function<bool(const Cover&)>& fn) {
    if (max_size < 1) throw PreconditionError("cover enumeration needs max_size >= 1");
    std::vector<Elem> cands;
    for (Elem e : host.elems())
        if (!is_bottom(e)) cands.push_back(e);
    const int n = static_cast<int>(cands.size());
    const Elem top = host.top();
    // Suffix joins let us prune branches that can no longer reach top.
    std::vector<Elem> suffix(n + 1, Elem{0});
    for (int i = n - 1; i >= 0; --i) suffix[i] = join(suffix[i + 1], cands[i]);

    std::vector<Elem> chosen;
    bool stop = false;
    auto rec = [&](auto&& self, int start, Elem acc) -> void {
        if (stop) return;
        if (!chosen.empty() && acc == top) {
            if (!fn(Cover(chosen))) {
                stop = true;
                return;
            }
        }
        if (static_cast<int>(chosen.size()) == max_size) return;
        for (int i = start; i < n && !stop; ++i) {
            if (join(acc, suffix[i]) != top) break; // sorted; later suffixes only shrink
            chosen.push_back(cands[i]);
            self(self, i + 1, join(acc, cands[i]));
            chosen.pop_back();
        }
    };
    rec(rec, 0, Elem{0});
}

std::vector<Cover> enumerate_covers(const Lattice& host, int max_size) {
    std::vector<Cover> out;
    for_each_cover(host, max_size, [&](const Cover& c) {
        out.push_back(c);
        if (out.size() > 5'000'000)
            throw PreconditionError("cover enumeration exceeds the 5e6 guard; "
                                    "tighten max_size");
        return true;
    });
    return out;
}

} // namespace mdl
