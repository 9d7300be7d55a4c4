#include "charcyc/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "charcyc/duality.hpp"
#include "charcyc/euler.hpp"

namespace charcyc {

using nlohmann::json;

bool OrbitPoset::has(const OrbitId& id) const {
    return std::any_of(orbits.begin(), orbits.end(), [&](const Orbit& o) { return o.id == id; });
}

std::size_t OrbitPoset::index(const OrbitId& id) const {
    for (std::size_t i = 0; i < orbits.size(); ++i)
        if (orbits[i].id == id) return i;
    throw UnknownIdError("unknown orbit " + id);
}

const Orbit& OrbitPoset::orbit(const OrbitId& id) const { return orbits[index(id)]; }

const Irrep* OrbitPoset::irrep(const LocalSystemId& ls) const {
    if (!has(ls.orbit)) return nullptr;
    for (const auto& ir : orbit(ls.orbit).group.irreps)
        if (ir.label == ls.irrep) return &ir;
    return nullptr;
}

int OrbitPoset::rank(const LocalSystemId& ls) const {
    const Irrep* ir = irrep(ls);
    if (!ir) throw UnknownIdError("unknown local system " + ls.str());
    return ir->dim;
}

std::vector<LocalSystemId> OrbitPoset::local_systems() const {
    std::vector<LocalSystemId> out;
    for (const auto& o : orbits)
        for (const auto& ir : o.group.irreps) out.push_back({o.id, ir.label});
    return out;
}

std::vector<OrbitId> OrbitPoset::top_down() const {
    std::vector<const Orbit*> v;
    for (auto it = orbits.rbegin(); it != orbits.rend(); ++it) v.push_back(&*it);
    std::stable_sort(v.begin(), v.end(), [](const Orbit* a, const Orbit* b) { return a->dim > b->dim; });
    std::vector<OrbitId> out;
    for (auto* o : v) out.push_back(o->id);
    return out;
}

std::vector<std::vector<bool>> closure_matrix(const OrbitPoset& poset) {
    std::size_t n = poset.orbits.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (const auto& [lo, hi] : poset.covers) leq[poset.index(lo)][poset.index(hi)] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[k][j]) leq[i][j] = true;
    return leq;
}

bool closure_leq(const OrbitPoset& poset, const OrbitId& a, const OrbitId& b) {
    std::size_t ia = poset.index(a), ib = poset.index(b);
    return closure_matrix(poset)[ia][ib];
}

const Representation& Dataset::representation(const std::string& id) const {
    for (const auto& r : catalog)
        if (r.id == id) return r;
    throw UnknownIdError("unknown representation " + id);
}

const Representation* Dataset::representation_with_param(const LocalSystemId& ls) const {
    for (const auto& r : catalog)
        if (r.param == ls) return &r;
    return nullptr;
}

// ---- loading ----

namespace {

[[noreturn]] void schema_fail(const std::string& msg) {
    throw DatasetError(DatasetError::Kind::Schema, msg);
}

const json& need(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) schema_fail(where + ": missing field '" + key + "'");
    return j.at(key);
}

template <class T>
T get_as(const json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        schema_fail(where + ": " + e.what());
    }
}

std::string rational_text(const json& j, const std::string& where) {
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_string()) return j.get<std::string>();
    schema_fail(where + ": expected integer or rational string");
}

struct Loader {
    Dataset ds;

    OrbitId orbit_ref(const json& j, const std::string& where) {
        auto id = get_as<std::string>(j, where);
        if (!ds.poset.has(id)) schema_fail(where + ": unknown orbit '" + id + "'");
        return id;
    }

    LocalSystemId ls_ref(const json& j, const std::string& where) {
        if (!j.is_array() || j.size() != 2) schema_fail(where + ": local system must be [orbit, irrep]");
        LocalSystemId ls{orbit_ref(j[0], where), get_as<std::string>(j[1], where)};
        if (!ds.poset.irrep(ls))
            schema_fail(where + ": unknown irrep '" + ls.irrep + "' on " + ls.orbit);
        return ls;
    }

    void orbits(const json& root) {
        const json& arr = need(root, "orbits", "dataset");
        if (!arr.is_array()) schema_fail("orbits: expected a list");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string where = "orbits[" + std::to_string(i) + "]";
            const json& o = arr[i];
            Orbit orb;
            orb.id = get_as<std::string>(need(o, "id", where), where);
            orb.dim = get_as<int>(need(o, "dim", where), where);
            const json& g = need(o, "group", where);
            orb.group.name = g.value("name", "");
            const json& irs = need(g, "irreps", where + ".group");
            if (!irs.is_array() || irs.empty()) schema_fail(where + ".group.irreps: expected a nonempty list");
            for (const auto& ir : irs)
                orb.group.irreps.push_back({get_as<std::string>(need(ir, "label", where), where),
                                            get_as<int>(need(ir, "dim", where), where)});
            ds.poset.orbits.push_back(std::move(orb));
        }
    }

    void covers(const json& root) {
        const json& arr = need(root, "covers", "dataset");
        if (!arr.is_array()) schema_fail("covers: expected a list");
        for (const auto& c : arr) {
            if (!c.is_array() || c.size() != 2) schema_fail("covers: entries must be [lower, upper]");
            ds.poset.covers.emplace_back(orbit_ref(c[0], "covers"), orbit_ref(c[1], "covers"));
        }
    }

    void duality(const json& root) {
        const json& d = need(root, "duality", "dataset");
        ds.duality.order_reversing = d.value("hat_order_reversing", true);
        for (const auto& p : need(d, "hat", "duality")) {
            if (!p.is_array() || p.size() != 2) schema_fail("duality.hat: entries must be [orbit, orbit]");
            ds.duality.hat[orbit_ref(p[0], "duality.hat")] = orbit_ref(p[1], "duality.hat");
        }
        for (const auto& p : need(d, "fourier", "duality")) {
            if (!p.is_array() || p.size() != 2) schema_fail("duality.fourier: entries must be [ls, ls]");
            ds.duality.fourier[ls_ref(p[0], "duality.fourier")] = ls_ref(p[1], "duality.fourier");
        }
    }

    void kl(const json& root) {
        if (!root.contains("kl")) return;
        const json& k = root.at("kl");
        for (const auto& e : k.value("entries", json::array())) {
            auto key = std::make_pair(ls_ref(need(e, "target", "kl.entries"), "kl.entries"),
                                      ls_ref(need(e, "source", "kl.entries"), "kl.entries"));
            ds.kl.entries[key] = get_as<long long>(need(e, "value", "kl.entries"), "kl.entries");
            ds.kl.entry_provenance[key] = e.value("provenance", "");
        }
        for (const auto& e : k.value("orbit_sums", json::array())) {
            auto key = std::make_pair(orbit_ref(need(e, "target_orbit", "kl.orbit_sums"), "kl.orbit_sums"),
                                      ls_ref(need(e, "source", "kl.orbit_sums"), "kl.orbit_sums"));
            ds.kl.orbit_sums[key] = get_as<long long>(need(e, "value", "kl.orbit_sums"), "kl.orbit_sums");
            ds.kl.sum_provenance[key] = e.value("provenance", "");
        }
    }

    void catalog(const json& root) {
        const json& arr = need(root, "catalog", "dataset");
        std::set<std::string> ids;
        for (const auto& r : arr) ids.insert(get_as<std::string>(need(r, "id", "catalog"), "catalog"));
        for (const auto& r : arr) {
            Representation rep;
            rep.id = r.at("id").get<std::string>();
            std::string where = "catalog." + rep.id;
            rep.param = ls_ref(need(r, "param", where), where);
            rep.az = get_as<std::string>(need(r, "az", where), where);
            if (!ids.count(rep.az)) schema_fail(where + ": unknown az partner '" + rep.az + "'");
            rep.iwahori_spherical = r.value("iwahori_spherical", true);
            rep.unitary = r.value("unitary", true);
            ds.catalog.push_back(std::move(rep));
        }
    }

    void rest(const json& root) {
        for (const auto& o : root.value("special_piece", json::array()))
            ds.special_piece.push_back(orbit_ref(o, "special_piece"));
        for (const auto& a : root.value("arthur_type", json::array()))
            ds.arthur_type.push_back({get_as<std::string>(need(a, "label", "arthur_type"), "arthur_type"),
                                      orbit_ref(need(a, "orbit", "arthur_type"), "arthur_type")});
        for (const auto& o : root.value("non_dense_conormal", json::array()))
            ds.non_dense_conormal.push_back(orbit_ref(o, "non_dense_conormal"));
        if (root.contains("localization")) {
            const json& l = root.at("localization");
            ds.localization = Localization{ls_ref(need(l, "source", "localization"), "localization"),
                                           ls_ref(need(l, "target", "localization"), "localization")};
        }
        if (root.contains("b_function")) {
            std::vector<Rational> roots;
            for (const auto& r : root.at("b_function")) {
                try {
                    roots.push_back(parse_rational(rational_text(r, "b_function")));
                } catch (const std::invalid_argument& e) {
                    schema_fail(std::string("b_function: ") + e.what());
                }
            }
            ds.b_function = std::move(roots);
        }
        if (root.contains("solver")) {
            const json& s = root.at("solver");
            ds.solver.diagonal_rule = s.value("diagonal_rule", true);
            ds.solver.leading_rule = s.value("leading_rule", true);
            for (const auto& p : s.value("parameter_names", json::array())) {
                const json& u = need(p, "unknown", "solver.parameter_names");
                if (!u.is_array() || u.size() != 2) schema_fail("solver.parameter_names: unknown must be [orbit, orbit]");
                ds.solver.parameter_names[{orbit_ref(u[0], "solver"), orbit_ref(u[1], "solver")}] =
                    get_as<std::string>(need(p, "name", "solver.parameter_names"), "solver.parameter_names");
            }
        }
    }
};

}  // namespace

Dataset parse_dataset(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DatasetError(DatasetError::Kind::Parse, e.what());
    }
    if (!root.is_object()) schema_fail("dataset: top level must be an object");
    Loader L;
    L.ds.schema_version = get_as<int>(need(root, "schema_version", "dataset"), "schema_version");
    if (L.ds.schema_version != 1)
        schema_fail("unsupported schema_version " + std::to_string(L.ds.schema_version));
    L.ds.name = root.value("name", "");
    for (const auto& n : root.value("notes", json::array())) L.ds.notes.push_back(get_as<std::string>(n, "notes"));
    L.ds.poset.ambient_dim = get_as<int>(need(root, "ambient_dim", "dataset"), "ambient_dim");
    L.orbits(root);
    L.covers(root);
    L.duality(root);
    L.kl(root);
    L.catalog(root);
    L.rest(root);
    return L.ds;
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DatasetError(DatasetError::Kind::Parse, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str());
}

// ---- validation ----

namespace {

void poset_checks(const OrbitPoset& P, std::vector<Violation>& out) {
    std::set<OrbitId> seen;
    for (const auto& o : P.orbits) {
        if (!seen.insert(o.id).second) out.push_back({"orbit-duplicate", "duplicate orbit id", o.id});
        if (o.dim < 0) out.push_back({"orbit-dim", "negative dimension", o.id});
        if (o.dim > P.ambient_dim) out.push_back({"orbit-dim", "dimension exceeds ambient dimension", o.id});
        std::set<std::string> labels;
        for (const auto& ir : o.group.irreps) {
            if (!labels.insert(ir.label).second)
                out.push_back({"irrep-duplicate", "duplicate irrep label " + ir.label, o.id});
            if (ir.dim < 1) out.push_back({"irrep-dim", "irrep dimension must be >= 1", o.id + ":" + ir.label});
        }
    }
    if (seen.size() != P.orbits.size()) return;

    for (const auto& [lo, hi] : P.covers)
        if (P.orbit(lo).dim >= P.orbit(hi).dim)
            out.push_back({"cover-dim", "dim decreases along cover", lo + "<" + hi});

    // cycle detection on the cover graph
    std::size_t n = P.orbits.size();
    std::vector<std::vector<std::size_t>> up(n);
    for (const auto& [lo, hi] : P.covers) up[P.index(lo)].push_back(P.index(hi));
    std::vector<int> state(n, 0);
    bool cyclic = false;
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t s = 0; s < n && !cyclic; ++s) {
        if (state[s]) continue;
        stack.push_back({s, 0});
        state[s] = 1;
        while (!stack.empty() && !cyclic) {
            auto& [v, k] = stack.back();
            if (k < up[v].size()) {
                std::size_t w = up[v][k++];
                if (state[w] == 1) cyclic = true;
                else if (state[w] == 0) {
                    state[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                state[v] = 2;
                stack.pop_back();
            }
        }
    }
    if (cyclic) {
        out.push_back({"cover-cycle", "cover graph cyclic", ""});
        return;
    }

    auto leq = closure_matrix(P);
    std::vector<OrbitId> tops, bottoms;
    for (std::size_t i = 0; i < n; ++i) {
        bool top = true, bottom = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (leq[i][j]) top = false;
            if (leq[j][i]) bottom = false;
        }
        if (top) tops.push_back(P.orbits[i].id);
        if (bottom) bottoms.push_back(P.orbits[i].id);
    }
    auto join = [](const std::vector<OrbitId>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
        return s;
    };
    if (tops.size() != 1) out.push_back({"poset-top", "closure order has no unique top", join(tops)});
    if (bottoms.size() != 1) out.push_back({"poset-bottom", "closure order has no unique bottom", join(bottoms)});
    if (tops.size() == 1 && P.orbit(tops[0]).dim != P.ambient_dim)
        out.push_back({"poset-top", "dense orbit dimension differs from ambient dimension", tops[0]});
}

void catalog_checks(const Dataset& ds, std::vector<Violation>& out) {
    std::map<std::string, const Representation*> by_id;
    for (const auto& r : ds.catalog)
        if (!by_id.emplace(r.id, &r).second) out.push_back({"catalog-duplicate", "duplicate representation id", r.id});

    std::map<LocalSystemId, std::vector<std::string>> owners;
    for (const auto& r : ds.catalog) owners[r.param].push_back(r.id);
    for (const auto& ls : ds.poset.local_systems()) {
        auto it = owners.find(ls);
        if (it == owners.end())
            out.push_back({"catalog-cover", "local system has no representation", ls.str()});
        else if (it->second.size() > 1)
            out.push_back({"catalog-cover", "local system parametrizes several representations", ls.str()});
    }

    for (const auto& r : ds.catalog) {
        auto it = by_id.find(r.az);
        if (it == by_id.end()) continue;
        if (it->second->az != r.id)
            out.push_back({"az-involution", "az not involutive / not bijective", r.id + "->" + r.az + "->" + it->second->az});
        auto f = ds.duality.fourier.find(r.param);
        if (f != ds.duality.fourier.end() && f->second != it->second->param)
            out.push_back({"az-fourier", "fourier partner of the parameter differs from the parameter of the az partner",
                           r.id + ": " + f->second.str() + " vs " + it->second->param.str()});
    }
}

void misc_checks(const Dataset& ds, std::vector<Violation>& out) {
    if (ds.b_function && ds.b_function->empty())
        out.push_back({"b-function", "b-function root list is empty", ""});
    std::set<OrbitId> sp;
    for (const auto& o : ds.special_piece)
        if (!sp.insert(o).second) out.push_back({"special-piece", "orbit listed twice", o});
    if (ds.localization) {
        const auto& L = *ds.localization;
        if (L.source.orbit != L.target.orbit)
            out.push_back({"localization", "source and target must lie on the same orbit", L.source.orbit});
    }
}

}  // namespace

std::vector<Violation> validate_dataset(const Dataset& ds) {
    std::vector<Violation> out;
    poset_checks(ds.poset, out);
    bool poset_ok = std::none_of(out.begin(), out.end(), [](const Violation& v) {
        return v.code == "orbit-duplicate" || v.code == "cover-cycle";
    });
    catalog_checks(ds, out);
    misc_checks(ds, out);
    if (poset_ok) {
        for (auto& v : validate_duality(ds)) out.push_back(std::move(v));
        for (auto& v : validate_kl(ds)) out.push_back(std::move(v));
    }
    return out;
}

}  // namespace charcyc
