#include "charcyc/packets.hpp"

#include <algorithm>
#include <set>

#include "charcyc/duality.hpp"

namespace charcyc {

std::string to_string(PacketKind k) {
    switch (k) {
        case PacketKind::Micro: return "micro";
        case PacketKind::BasicArthur: return "basicArthur";
        case PacketKind::WeakArthur: return "weakArthur";
        case PacketKind::AzImage: return "azImage";
    }
    return "?";
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Equal: return "EQUAL";
        case Outcome::NotEqual: return "NOT EQUAL";
        case Outcome::Undetermined: return "UNDETERMINED";
    }
    return "?";
}

std::string packet_label(const Packet& p) {
    switch (p.kind) {
        case PacketKind::Micro: return "mic[" + p.anchor + "]";
        case PacketKind::BasicArthur: return "basic[" + p.anchor + "]";
        case PacketKind::WeakArthur: return "weak[" + p.anchor + "]";
        case PacketKind::AzImage: return "AZ(mic[" + p.anchor + "])";
    }
    return p.anchor;
}

namespace {

std::vector<std::string> in_catalog_order(const Catalog& cat, const std::set<std::string>& ids) {
    std::vector<std::string> out;
    for (const auto& r : cat)
        if (ids.count(r.id)) out.push_back(r.id);
    return out;
}

const Representation& rep(const Catalog& cat, const std::string& id) {
    for (const auto& r : cat)
        if (r.id == id) return r;
    throw UnknownIdError("unknown representation " + id);
}

OrbitId open_orbit(const SolverContext& ctx) {
    for (std::size_t i = 0; i < ctx.orbits.size(); ++i) {
        bool top = true;
        for (std::size_t j = 0; j < ctx.orbits.size(); ++j)
            if (j != i && ctx.leq[i][j]) top = false;
        if (top) return ctx.orbits[i].id;
    }
    throw UnknownIdError("no open orbit");
}

// nonzero for every admissible value of its single parameter?
enum class Nonzero { Always, Never, Maybe };

Nonzero classify(const AffineInt& m, const BoundsReport& bounds) {
    if (m.is_constant()) return m.is_zero() ? Nonzero::Never : Nonzero::Always;
    if (m.coeffs().size() > 1) return Nonzero::Maybe;
    const auto& [p, b] = *m.coeffs().begin();
    Rational root = -m.constant() / b;
    if (!is_integer(root)) return Nonzero::Always;
    BigInt r = numerator(root);
    for (const auto& pb : bounds.bounds) {
        if (pb.parameter != p) continue;
        if (pb.lower && r < *pb.lower) return Nonzero::Always;
        if (pb.upper && r > *pb.upper) return Nonzero::Always;
    }
    return Nonzero::Maybe;
}

std::vector<std::string> sym_diff(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end()), out;
    for (const auto& x : sa)
        if (!sb.count(x)) out.insert(x);
    for (const auto& x : sb)
        if (!sa.count(x)) out.insert(x);
    return {out.begin(), out.end()};
}

}  // namespace

Packet micro_packet(const SolveReport& sr, const Catalog& catalog, const OrbitId& anchor) {
    sr.ctx.index(anchor);
    Packet p;
    p.kind = PacketKind::Micro;
    p.anchor = anchor;
    for (const auto& r : catalog) {
        const CharacteristicCycle* cc = sr.find_cc(r.param);
        if (!cc) {
            bool known_zero = false;
            for (const auto& inc : sr.incomplete)
                if (inc.source == r.param &&
                    std::find(inc.unknown.begin(), inc.unknown.end(), anchor) == inc.unknown.end()) {
                    auto it = inc.known.find(anchor);
                    if (it == inc.known.end()) known_zero = true;
                    else if (classify(it->second, sr.parameter_bounds) == Nonzero::Always) {
                        p.members.push_back(r.id);
                        known_zero = true;
                    }
                }
            if (!known_zero) p.indeterminate.push_back(r.id);
            continue;
        }
        switch (classify(cc->at(anchor), sr.parameter_bounds)) {
            case Nonzero::Always: p.members.push_back(r.id); break;
            case Nonzero::Maybe: p.indeterminate.push_back(r.id); break;
            case Nonzero::Never: break;
        }
    }
    return p;
}

BasicPacketReport basic_arthur_packet(const SolveReport& sr, const Catalog& catalog) {
    BasicPacketReport rep_out;
    rep_out.open_orbit = open_orbit(sr.ctx);
    std::set<std::string> ids;
    for (const auto& r : catalog)
        if (r.param.orbit == rep_out.open_orbit) ids.insert(r.az);
    rep_out.packet.kind = PacketKind::BasicArthur;
    rep_out.packet.anchor = rep_out.open_orbit;
    rep_out.packet.members = in_catalog_order(catalog, ids);
    rep_out.micro = micro_packet(sr, catalog, hat(DualityData{sr.ctx.hat, {}}, rep_out.open_orbit));
    rep_out.agrees = rep_out.micro.indeterminate.empty() && rep_out.micro.members == rep_out.packet.members;
    return rep_out;
}

Packet weak_arthur_packet(const Dataset& ds, const Catalog& catalog) {
    if (ds.special_piece.empty()) throw std::invalid_argument("special piece is empty");
    std::set<OrbitId> sp(ds.special_piece.begin(), ds.special_piece.end());
    std::set<std::string> ids;
    for (const auto& r : catalog)
        if (sp.count(r.param.orbit)) ids.insert(r.az);
    Packet p;
    p.kind = PacketKind::WeakArthur;
    std::vector<OrbitId> sorted = ds.special_piece;
    p.anchor = sorted.front();
    p.members = in_catalog_order(catalog, ids);
    return p;
}

WeakUnionReport verify_weak_equals_union(const Dataset& ds, const SolveReport& sr, const Catalog& catalog) {
    WeakUnionReport out;
    out.weak = weak_arthur_packet(ds, catalog);
    std::set<std::string> uni, indet;
    std::set<OrbitId> seen;
    for (const auto& s : ds.special_piece) {
        OrbitId a = hat(ds.duality, s);
        if (!seen.insert(a).second) continue;
        out.anchors.push_back(a);
        Packet m = micro_packet(sr, catalog, a);
        uni.insert(m.members.begin(), m.members.end());
        indet.insert(m.indeterminate.begin(), m.indeterminate.end());
        out.micro.push_back(std::move(m));
    }
    std::sort(out.anchors.begin(), out.anchors.end(), [&](const OrbitId& x, const OrbitId& y) {
        return sr.ctx.index(x) < sr.ctx.index(y);
    });
    std::sort(out.micro.begin(), out.micro.end(), [&](const Packet& x, const Packet& y) {
        return sr.ctx.index(x.anchor) < sr.ctx.index(y.anchor);
    });
    out.union_members = in_catalog_order(catalog, uni);
    for (const auto& x : indet)
        if (!uni.count(x)) out.indeterminate.push_back(x);
    std::set<std::string> w(out.weak.members.begin(), out.weak.members.end());
    for (const auto& x : out.weak.members)
        if (!uni.count(x)) out.only_in_weak.push_back(x);
    for (const auto& x : out.union_members)
        if (!w.count(x)) out.only_in_union.push_back(x);
    if (!out.only_in_union.empty()) out.outcome = Outcome::NotEqual;
    else if (out.only_in_weak.empty()) out.outcome = out.indeterminate.empty() ? Outcome::Equal : Outcome::Undetermined;
    else {
        // a weak member outside the union could still enter through an indeterminate one
        bool could = std::all_of(out.only_in_weak.begin(), out.only_in_weak.end(), [&](const std::string& x) {
            return std::find(out.indeterminate.begin(), out.indeterminate.end(), x) != out.indeterminate.end();
        });
        out.outcome = could ? Outcome::Undetermined : Outcome::NotEqual;
    }
    return out;
}

std::vector<AnchorCheck> verify_az_micro_compatibility(const SolveReport& sr, const Catalog& catalog,
                                                       const DualityData& d, const std::vector<OrbitId>& anchors) {
    std::vector<AnchorCheck> out;
    for (const auto& a : anchors) {
        AnchorCheck c;
        c.anchor = a;
        c.dual = hat(d, a);
        Packet src = micro_packet(sr, catalog, a);
        c.target = micro_packet(sr, catalog, c.dual);
        std::set<std::string> img, img_ind;
        for (const auto& x : src.members) img.insert(rep(catalog, x).az);
        for (const auto& x : src.indeterminate) img_ind.insert(rep(catalog, x).az);
        c.image.kind = PacketKind::AzImage;
        c.image.anchor = a;
        c.image.members = in_catalog_order(catalog, img);
        c.image.indeterminate = in_catalog_order(catalog, img_ind);
        c.symmetric_difference = sym_diff(c.image.members, c.target.members);
        if (!c.symmetric_difference.empty())
            c.outcome = Outcome::NotEqual;
        else if (!c.image.indeterminate.empty() || !c.target.indeterminate.empty())
            c.outcome = c.image.indeterminate == c.target.indeterminate ? Outcome::Undetermined : Outcome::NotEqual;
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<SimplifiedArthurParameter> simplified_arthur_parameters(const Dataset& ds) {
    std::vector<SimplifiedArthurParameter> out;
    for (const auto& e : ds.arthur_type) {
        auto it = ds.duality.hat.find(e.orbit);
        if (it == ds.duality.hat.end()) throw UnknownIdError("hat undefined on arthur-type orbit " + e.orbit);
        out.push_back({e.orbit, it->second, e.label});
    }
    return out;
}

std::vector<std::string> missing_transposes(const std::vector<SimplifiedArthurParameter>& params) {
    std::multiset<std::pair<OrbitId, OrbitId>> pairs;
    for (const auto& p : params) pairs.insert({p.langlands_orbit, p.arthur_orbit});
    std::vector<std::string> out;
    for (const auto& p : params)
        if (!pairs.count({p.arthur_orbit, p.langlands_orbit}))
            out.push_back(p.label + " = (" + p.langlands_orbit + "," + p.arthur_orbit + ")");
    return out;
}

std::vector<UnitarityEntry> unitarity_report(const Catalog& catalog, const std::vector<Packet>& packets) {
    std::vector<UnitarityEntry> out;
    for (const auto& p : packets) {
        UnitarityEntry e{packet_label(p), {}};
        for (const auto& x : p.members)
            if (!rep(catalog, x).unitary) e.non_unitary.push_back(x);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace charcyc
