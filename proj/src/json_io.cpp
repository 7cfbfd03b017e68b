#include "mdl/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mdl/errors.hpp"

namespace mdl {

namespace {

void require_label(const std::string& s) {
    if (s.empty()) throw ParseError("empty point label");
    for (char c : s)
        if (c == ',' || c == '[' || c == ']' || c == '|')
            throw ParseError("label '" + s + "' uses a reserved character");
}

GroundSet ground_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw ParseError("\"ground\" must be a nonempty array of labels");
    std::vector<std::string> labels;
    for (const auto& item : j) {
        if (!item.is_string()) throw ParseError("ground labels must be strings");
        labels.push_back(item.get<std::string>());
        require_label(labels.back());
    }
    return GroundSet(std::move(labels));
}

Elem elem_from_labels(const GroundSet& ground, const json& j) {
    if (!j.is_array()) throw ParseError("an element must be an array of labels");
    std::vector<std::string> labels;
    for (const auto& item : j) {
        if (!item.is_string()) throw ParseError("element labels must be strings");
        labels.push_back(item.get<std::string>());
    }
    return ground.element(labels);
}

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"");
    return *it;
}

double number_field(const json& j) {
    if (!j.is_number()) throw ParseError("expected a number");
    return j.get<double>();
}

std::string g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

std::string elem_key(const GroundSet& ground, Elem e) {
    std::string out = "[";
    bool first = true;
    for (const std::string& label : ground.labels_of(e)) {
        if (!first) out += ',';
        out += label;
        first = false;
    }
    out += ']';
    return out;
}

Elem elem_from_key(const GroundSet& ground, const std::string& key) {
    if (key.size() < 2 || key.front() != '[' || key.back() != ']')
        throw ParseError("element key must look like \"[a,b]\": " + key);
    std::vector<std::string> labels;
    std::string body = key.substr(1, key.size() - 2);
    if (!body.empty()) {
        std::string cur;
        for (char c : body) {
            if (c == ',') { labels.push_back(cur); cur.clear(); }
            else cur += c;
        }
        labels.push_back(cur);
    }
    return ground.element(labels);
}

std::string cover_key(const GroundSet& ground, const Cover& alpha) {
    std::string out;
    bool first = true;
    for (const Elem& e : alpha.members()) {
        if (!first) out += '|';
        out += elem_key(ground, e);
        first = false;
    }
    return out;
}

Lattice lattice_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("lattice must be an object");
    GroundSet ground = ground_from_json(field(j, "ground"));
    const json& elements = field(j, "elements");
    if (!elements.is_array()) throw ParseError("\"elements\" must be an array");
    std::vector<Elem> elems;
    for (const auto& item : elements) elems.push_back(elem_from_labels(ground, item));
    return Lattice(std::move(ground), std::move(elems));
}

json lattice_to_json(const Lattice& lat) {
    json j;
    j["ground"] = lat.ground().labels();
    json elements = json::array();
    for (const Elem& e : lat.elems()) elements.push_back(lat.ground().labels_of(e));
    j["elements"] = std::move(elements);
    return j;
}

MeasuredLattice measured_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("measured lattice must be an object");
    Lattice lat = lattice_from_json(field(j, "lattice"));
    const GroundSet& ground = lat.ground();

    const json& mj = field(j, "m");
    if (!mj.is_object()) throw ParseError("\"m\" must map element keys to numbers");
    std::vector<std::pair<Elem, double>> entries;
    for (auto it = mj.begin(); it != mj.end(); ++it)
        entries.emplace_back(elem_from_key(ground, it.key()), number_field(it.value()));
    Measurement m(std::move(entries));
    if (!m.defined_on(lat))
        throw ParseError("\"m\" must assign a value to every lattice element");

    const json& oj = field(j, "omega");
    if (oj.is_string()) {
        const std::string rule = oj.get<std::string>();
        if (rule == "generated-topology")
            return {lat, std::move(m), Localization::generated_topology(lat)};
        if (rule == "generated-subalgebra")
            return {lat, std::move(m), Localization::generated_subalgebra(lat)};
        throw ParseError("unknown omega rule: " + rule);
    }
    if (oj.is_object() && oj.contains("table")) {
        const json& tj = oj["table"];
        if (!tj.is_object()) throw ParseError("\"table\" must be an object");
        std::vector<std::pair<Cover, Lattice>> table;
        for (auto it = tj.begin(); it != tj.end(); ++it) {
            // keys are '|'-joined element keys
            std::vector<Elem> members;
            std::string cur;
            const std::string key = it.key();
            for (std::size_t i = 0; i <= key.size(); ++i) {
                if (i == key.size() || key[i] == '|') {
                    if (!cur.empty()) members.push_back(elem_from_key(ground, cur));
                    cur.clear();
                } else cur += key[i];
            }
            Cover alpha = make_cover(lat, std::move(members));
            const json& fam = it.value();
            if (!fam.is_array()) throw ParseError("omega table values must be element arrays");
            std::vector<Elem> felems;
            for (const auto& fe : fam) felems.push_back(elem_from_labels(ground, fe));
            table.emplace_back(std::move(alpha), Lattice(ground, std::move(felems)));
        }
        return {lat, std::move(m), Localization::tabulated(std::move(table))};
    }
    throw ParseError("\"omega\" must be a rule name or a {\"table\": ...} object");
}

GroupAction action_from_json(const json& j, const GroundSet& ground) {
    if (!j.is_object()) throw ParseError("action must be an object");
    const int dim = [&] {
        const json& d = field(j, "dimension");
        if (!d.is_number_integer()) throw ParseError("\"dimension\" must be an integer");
        return d.get<int>();
    }();
    if (dim < 1) throw ParseError("action dimension must be at least 1");
    const json& gens = field(j, "generators");
    if (!gens.is_array() || static_cast<int>(gens.size()) != dim)
        throw ParseError("need exactly one generator per dimension");

    GroupAction act;
    act.dimension = dim;
    act.ground_size = ground.size();
    for (const auto& gj : gens) {
        if (!gj.is_object()) throw ParseError("generator must be an object");
        const json& pj = field(gj, "perm");
        if (!pj.is_object()) throw ParseError("\"perm\" must map labels to labels");
        std::vector<int> fwd(static_cast<std::size_t>(ground.size()));
        for (int i = 0; i < ground.size(); ++i) fwd[static_cast<std::size_t>(i)] = i;
        for (auto it = pj.begin(); it != pj.end(); ++it) {
            if (!it.value().is_string())
                throw ParseError("\"perm\" values must be labels");
            fwd[static_cast<std::size_t>(ground.index(it.key()))] =
                ground.index(it.value().get<std::string>());
        }
        act.generators.push_back(PointPerm::from_map(std::move(fwd)));
    }
    return act;
}

SystemVariant system_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("system must be an object");
    const std::string kind = field(j, "kind").get<std::string>();
    GroundSet ground = ground_from_json(field(j, "ground"));
    SystemVariant out;
    if (kind == "top") {
        const json& opens = field(j, "opens");
        if (!opens.is_array()) throw ParseError("\"opens\" must be an array of elements");
        std::vector<Elem> elems;
        for (const auto& item : opens) elems.push_back(elem_from_labels(ground, item));
        TopSystem sys{Lattice(ground, std::move(elems)),
                      action_from_json(field(j, "action"), ground)};
        validate_top(sys);
        out.top = std::move(sys);
        return out;
    }
    if (kind == "psp") {
        const json& muj = field(j, "mu");
        if (!muj.is_object()) throw ParseError("\"mu\" must map labels to weights");
        std::vector<double> mu(static_cast<std::size_t>(ground.size()), 0.0);
        for (auto it = muj.begin(); it != muj.end(); ++it)
            mu[static_cast<std::size_t>(ground.index(it.key()))] = number_field(it.value());
        const json& aj = field(j, "algebra");
        Lattice algebra = [&] {
            if (aj.is_string() && aj.get<std::string>() == "powerset")
                return Lattice::powerset(ground);
            if (!aj.is_array())
                throw ParseError("\"algebra\" must be \"powerset\" or an element array");
            std::vector<Elem> elems;
            for (const auto& item : aj) elems.push_back(elem_from_labels(ground, item));
            return Lattice(ground, std::move(elems));
        }();
        ProbSystem sys{std::move(algebra), std::move(mu),
                       action_from_json(field(j, "action"), ground)};
        validate_psp(sys);
        out.psp = std::move(sys);
        return out;
    }
    throw ParseError("system \"kind\" must be \"psp\" or \"top\"");
}

std::vector<FactorPair> pairs_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("pair file must be an object");
    const json& arr = field(j, "pairs");
    if (!arr.is_array()) throw ParseError("\"pairs\" must be an array");
    std::vector<FactorPair> out;
    for (const auto& pj : arr) {
        FactorPair p;
        p.source = system_from_json(field(pj, "source"));
        p.target = system_from_json(field(pj, "target"));
        const GroundSet& sg = p.source.is_top() ? p.source.top->opens.ground()
                                                : p.source.psp->algebra.ground();
        const GroundSet& tg = p.target.is_top() ? p.target.top->opens.ground()
                                                : p.target.psp->algebra.ground();
        const json& mj = field(pj, "map");
        if (!mj.is_object()) throw ParseError("\"map\" must map source to target labels");
        p.map.point_map.assign(static_cast<std::size_t>(sg.size()), -1);
        for (auto it = mj.begin(); it != mj.end(); ++it) {
            if (!it.value().is_string()) throw ParseError("\"map\" values must be labels");
            p.map.point_map[static_cast<std::size_t>(sg.index(it.key()))] =
                tg.index(it.value().get<std::string>());
        }
        for (int v : p.map.point_map)
            if (v < 0) throw ParseError("\"map\" must cover every source point");
        out.push_back(std::move(p));
    }
    return out;
}

ShiftSystem shift_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("shift system must be an object");
    const std::string kind = field(j, "kind").get<std::string>();
    const json& aj = field(j, "alphabet");
    if (!aj.is_array()) throw ParseError("\"alphabet\" must be an array of symbols");
    std::vector<std::string> alphabet;
    for (const auto& s : aj) {
        if (!s.is_string()) throw ParseError("alphabet symbols must be strings");
        alphabet.push_back(s.get<std::string>());
    }
    try {
        if (kind == "bernoulli") {
            const json& wj = field(j, "weights");
            if (!wj.is_array()) throw ParseError("\"weights\" must be an array");
            std::vector<double> w;
            for (const auto& x : wj) w.push_back(number_field(x));
            return ShiftSystem::bernoulli(std::move(alphabet), std::move(w));
        }
        if (kind == "markov") {
            const json& pj = field(j, "P");
            if (!pj.is_array()) throw ParseError("\"P\" must be a matrix");
            std::vector<std::vector<double>> p;
            for (const auto& row : pj) {
                if (!row.is_array()) throw ParseError("\"P\" must be a matrix");
                std::vector<double> r;
                for (const auto& x : row) r.push_back(number_field(x));
                p.push_back(std::move(r));
            }
            return ShiftSystem::markov(std::move(alphabet), std::move(p));
        }
        if (kind == "sft") {
            std::vector<std::string> forbidden;
            if (j.contains("forbidden")) {
                const json& fj = j["forbidden"];
                if (!fj.is_array()) throw ParseError("\"forbidden\" must be an array");
                for (const auto& w : fj) {
                    if (!w.is_string()) throw ParseError("forbidden words must be strings");
                    forbidden.push_back(w.get<std::string>());
                }
            }
            return ShiftSystem::sft(std::move(alphabet), std::move(forbidden));
        }
    } catch (const StructuralError& e) {
        // malformed input data, not a broken internal structure
        throw ParseError(e.what());
    }
    throw ParseError("shift \"kind\" must be \"bernoulli\", \"markov\" or \"sft\"");
}

std::string table_to_csv(const ConvergenceTable& table) {
    const double scale =
        table.report_base == LogBase::Two ? 1.0 / std::log(2.0) : 1.0;
    std::string out = "n,box_size,h_w,ratio,certificate\n";
    for (const TableRow& r : table.rows) {
        out += std::to_string(r.n) + "," + std::to_string(r.box_size) + "," +
               g12(r.h_w * scale) + "," + g12(r.ratio * scale) + "," +
               std::string(to_string(r.cert)) + "\n";
    }
    return out;
}

json table_to_json(const ConvergenceTable& table) {
    const double scale =
        table.report_base == LogBase::Two ? 1.0 / std::log(2.0) : 1.0;
    json rows = json::array();
    for (const TableRow& r : table.rows) {
        rows.push_back({{"n", r.n},
                        {"box_size", r.box_size},
                        {"h_w", r.h_w * scale},
                        {"ratio", r.ratio * scale},
                        {"certificate", std::string(to_string(r.cert))}});
    }
    return {{"base", table.report_base == LogBase::Two ? "2" : "e"},
            {"rows", std::move(rows)},
            {"converged", table.converged},
            {"final_ratio", table.final_ratio * scale},
            {"final_certificate", std::string(to_string(table.final_cert))}};
}

json report_to_json(const SuiteReport& rep) {
    json checks = json::array();
    for (const Check& c : rep.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"suite", rep.suite},
            {"passed", rep.passed()},
            {"checks", std::move(checks)}};
}

json counterexample_to_json(const CounterexampleReport& rep, LogBase base) {
    const double scale = base == LogBase::Two ? 1.0 / std::log(2.0) : 1.0;
    return {{"epsilon", rep.eps},
            {"base", base == LogBase::Two ? "2" : "e"},
            {"h_palm_sub", rep.palm_w * scale},
            {"h_palm_ambient", rep.palm_v * scale},
            {"h_localized", rep.localized * scale},
            {"anomaly", rep.anomaly}};
}

} // namespace mdl
