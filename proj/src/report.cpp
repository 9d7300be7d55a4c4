#include "charcyc/report.hpp"

#include <algorithm>
#include <cctype>

namespace charcyc {

namespace {

// "S2" < "S10"
bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (std::isdigit((unsigned char)a[i]) && std::isdigit((unsigned char)b[j])) {
            std::size_t i2 = i, j2 = j;
            while (i2 < a.size() && std::isdigit((unsigned char)a[i2])) ++i2;
            while (j2 < b.size() && std::isdigit((unsigned char)b[j2])) ++j2;
            long long x = std::stoll(a.substr(i, i2 - i)), y = std::stoll(b.substr(j, j2 - j));
            if (x != y) return x < y;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

template <class Map>
std::vector<typename Map::key_type> natural_keys(const Map& m) {
    std::vector<typename Map::key_type> keys;
    for (const auto& kv : m) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end(), [](const auto& x, const auto& y) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, LocalSystemId>) {
            if (x.orbit != y.orbit) return natural_less(x.orbit, y.orbit);
            return x.irrep < y.irrep;
        } else {
            return natural_less(x, y);
        }
    });
    return keys;
}

}  // namespace

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
    return s;
}

ojson to_json(const LocalSystemId& ls) { return ojson::array({ls.orbit, ls.irrep}); }

ojson to_json(const AffineInt& a) {
    if (a.is_constant() && is_integer(a.constant())) return a.as_int();
    return a.str();
}

ojson to_json(const std::vector<Violation>& v) {
    ojson out = ojson::array();
    for (const auto& x : v) out.push_back({{"code", x.code}, {"message", x.message}, {"subject", x.subject}});
    return out;
}

ojson to_json(const ConstraintSystem& cs) {
    ojson j;
    ojson unk = ojson::array();
    for (const auto& u : cs.unknowns) unk.push_back(render_unknown(u));
    j["unknowns"] = unk;
    ojson eqs = ojson::array();
    for (const auto& e : cs.equations) eqs.push_back({{"equation", e.text}, {"rule", e.rule}, {"origin", e.origin}});
    j["equations"] = eqs;
    ojson sk = ojson::array();
    for (const auto& s : cs.skipped) sk.push_back({{"rule", s.rule}, {"origin", s.origin}, {"missing", s.missing}});
    j["skipped"] = sk;
    return j;
}

ojson to_json(const CharacteristicCycle& cc, const SolverContext& ctx) {
    ojson m = ojson::object();
    for (const auto& id : ctx.top_down()) {
        auto it = cc.mult.find(id);
        if (it != cc.mult.end()) m[id] = to_json(it->second);
    }
    return {{"source", to_json(cc.source)}, {"mult", m}};
}

ojson to_json(const SolveReport& sr) {
    ojson j;
    ojson cm = ojson::array();
    for (const auto& a : sr.ctx.top_down())
        for (const auto& b : sr.ctx.top_down()) {
            if (!sr.ctx.le(a, b)) continue;
            auto v = sr.cmatrix.at(a, b);
            cm.push_back({{"pair", {a, b}}, {"value", v ? to_json(*v) : ojson("unknown")}});
        }
    j["cmatrix"] = cm;
    j["free_parameters"] = sr.free_parameters;
    ojson bounds = ojson::array();
    for (const auto& b : sr.parameter_bounds.bounds) {
        ojson e{{"parameter", b.parameter}};
        e["lower"] = b.lower ? ojson(b.lower->str()) : ojson(nullptr);
        e["upper"] = b.upper ? ojson(b.upper->str()) : ojson(nullptr);
        bounds.push_back(e);
    }
    j["parameter_bounds"] = bounds;
    j["bounds_unsolved"] = sr.parameter_bounds.unsolved;
    ojson res = ojson::array();
    for (const auto& u : sr.residual_unknowns) res.push_back(render_unknown(u));
    j["residual_unknowns"] = res;
    ojson table = ojson::array();
    for (const auto& cc : sr.cc_table) table.push_back(to_json(cc, sr.ctx));
    j["cc_table"] = table;
    ojson inc = ojson::array();
    for (const auto& i : sr.incomplete) inc.push_back({{"source", to_json(i.source)}, {"unknown_at", i.unknown}});
    j["incomplete"] = inc;
    j["fourier_mismatches"] = sr.fourier_mismatches;
    j["notes"] = sr.cc_notes;
    j["equations"] = sr.equation_count;
    j["skipped_equations"] = sr.skipped_count;
    j["rank"] = sr.rank;
    return j;
}

ojson to_json(const Packet& p) {
    return {{"kind", to_string(p.kind)}, {"anchor", p.anchor}, {"members", p.members}, {"indeterminate", p.indeterminate}};
}

ojson to_json(const WeakUnionReport& r) {
    ojson micro = ojson::array();
    for (const auto& m : r.micro) micro.push_back(to_json(m));
    return {{"outcome", to_string(r.outcome)}, {"weak", to_json(r.weak)}, {"anchors", r.anchors},
            {"micro", micro}, {"union", r.union_members}, {"only_in_weak", r.only_in_weak},
            {"only_in_union", r.only_in_union}, {"indeterminate", r.indeterminate}};
}

ojson to_json(const std::vector<AnchorCheck>& checks) {
    ojson out = ojson::array();
    for (const auto& c : checks)
        out.push_back({{"anchor", c.anchor}, {"dual", c.dual}, {"outcome", to_string(c.outcome)},
                       {"az_image", c.image.members}, {"micro_at_dual", c.target.members},
                       {"symmetric_difference", c.symmetric_difference}});
    return out;
}

ojson to_json(const LocalizationResult& loc) {
    ojson comp = ojson::array();
    for (const auto& g : natural_keys(loc.composition))
        comp.push_back({{"local_system", to_json(g)}, {"multiplicity", to_json(loc.composition.at(g))}});
    ojson terms = ojson::array();
    for (const auto& t : loc.check_terms) terms.push_back({{"gamma", to_json(t.gamma)}, {"cg", t.cg}, {"mg", t.mg}});
    ojson ans = ojson::object();
    for (const auto& o : natural_keys(loc.ansatz.mult)) ans[o] = to_json(loc.ansatz.mult.at(o));
    ojson cc = ojson::object();
    for (const auto& o : natural_keys(loc.cc.mult)) cc[o] = to_json(loc.cc.mult.at(o));
    return {{"target", to_json(loc.cc.source)}, {"ansatz", ans}, {"composition_series", comp},
            {"probe", to_json(loc.probe)}, {"check_terms", terms}, {"check_value", loc.check_value},
            {"series_pairing", to_json(loc.series_check)}, {"symbol", loc.symbol},
            {"symbol_value", to_json(loc.solved_symbol)}, {"cc", cc}};
}

ojson to_json(const std::vector<SimplifiedArthurParameter>& params) {
    ojson out = ojson::array();
    for (const auto& p : params) out.push_back({{"label", p.label}, {"pair", {p.langlands_orbit, p.arthur_orbit}}});
    return out;
}

ojson to_json(const std::vector<UnitarityEntry>& u) {
    ojson out = ojson::array();
    for (const auto& e : u) out.push_back({{"packet", e.packet}, {"non_unitary", e.non_unitary}});
    return out;
}

ojson to_json(const EulerMatrix& em) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < em.rows.size(); ++i) {
        ojson cells = ojson::object();
        for (std::size_t k = 0; k < em.cols.size(); ++k)
            cells[em.cols[k]] = em.cells[i][k] ? ojson(*em.cells[i][k]) : ojson("unknown");
        rows.push_back({{"source", to_json(em.rows[i])}, {"chi_loc", cells}});
    }
    return rows;
}

std::string cc_line(const CharacteristicCycle& cc, const SolverContext& ctx) {
    std::string s = "CC(IC" + cc.source.str() + ") = ";
    bool first = true;
    for (const auto& id : ctx.top_down()) {
        auto it = cc.mult.find(id);
        if (it == cc.mult.end()) continue;
        const AffineInt& m = it->second;
        std::string coef;
        if (m.is_constant()) {
            if (m.constant() != 1) coef = m.str();
        } else if (m.coeffs().size() == 1 && m.constant() == 0 && m.coeffs().begin()->second == 1) {
            coef = m.str();
        } else {
            coef = "(" + m.str() + ")";
        }
        s += (first ? "" : " + ") + coef + "[" + id + "]";
        first = false;
    }
    if (first) s += "0";
    return s;
}

std::string packet_line(const Packet& p) {
    std::string s = packet_label(p) + " = {" + join(p.members) + "}";
    if (!p.indeterminate.empty()) s += "  indeterminate {" + join(p.indeterminate) + "}";
    return s;
}

}  // namespace charcyc
