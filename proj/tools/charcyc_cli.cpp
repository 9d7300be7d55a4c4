// charcyc: validate / solve / cc / packets / verify / report on a dataset file.
// Exit status: 0 success, 1 violations or failed verification, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "charcyc/duality.hpp"
#include "charcyc/report.hpp"

using namespace charcyc;

namespace {

struct RunConfig {
    std::string dataset;
    std::string command;
    std::string format = "text";
    std::string out;
    std::vector<std::string> sets;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Emitter {
    std::ostringstream text;
    ojson doc;
    int status = 0;
};

std::map<std::string, Rational> parse_sets(const std::vector<std::string>& sets) {
    std::map<std::string, Rational> out;
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--set expects name=int, got '" + s + "'");
        std::string name = s.substr(0, eq), val = s.substr(eq + 1);
        try {
            std::size_t used = 0;
            long long v = std::stoll(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            out[name] = v;
        } catch (const std::exception&) {
            throw InputError("--set value for " + name + " is not an integer: '" + val + "'");
        }
    }
    return out;
}

void check_assignments(const SolveReport& sr, const std::map<std::string, Rational>& values) {
    for (const auto& [name, v] : values) {
        bool known = std::find(sr.free_parameters.begin(), sr.free_parameters.end(), name) != sr.free_parameters.end();
        if (!known) throw InputError("--set names no free parameter: " + name);
        for (const auto& b : sr.parameter_bounds.bounds) {
            if (b.parameter != name) continue;
            if (b.lower && v < Rational(*b.lower))
                throw InputError(name + " = " + format_rational(v) + " violates " + name + " >= " + b.lower->str());
            if (b.upper && v > Rational(*b.upper))
                throw InputError(name + " = " + format_rational(v) + " violates " + name + " <= " + b.upper->str());
        }
    }
}

std::vector<CharacteristicCycle> substituted(const std::vector<CharacteristicCycle>& table,
                                             const std::map<std::string, Rational>& values) {
    std::vector<CharacteristicCycle> out;
    for (const auto& cc : table) {
        CharacteristicCycle s{cc.source, {}};
        for (const auto& [o, m] : cc.mult) {
            AffineInt v = m.substitute(values);
            if (!v.is_zero()) s.mult[o] = v;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string bound_text(const ParameterBound& b) {
    std::string s;
    if (b.lower) s += b.parameter + " >= " + b.lower->str();
    if (b.upper) s += (s.empty() ? "" : ", ") + b.parameter + " <= " + b.upper->str();
    return s;
}

// ---- commands ----

void cmd_validate(const Dataset& ds, Emitter& e) {
    auto v = validate_dataset(ds);
    e.doc["violations"] = to_json(v);
    if (v.empty()) e.text << "OK: no violations\n";
    for (const auto& x : v) e.text << "violation [" << x.code << "] " << x.message << ": " << x.subject << "\n";
    if (!ds.duality.order_reversing) {
        auto defects = hat_order_defects(ds);
        e.doc["hat_order_defects"] = defects;
        e.text << "note: order reversal of hat not required by this dataset (" << defects.size()
               << " pairs fail it)\n";
    }
    if (!v.empty()) e.status = 1;
}

void solve_text(const Pipeline& p, Emitter& e) {
    const auto& sr = p.report;
    e.text << "equations: " << sr.equation_count << " used, " << sr.skipped_count << " skipped (unpinned KL data), rank "
           << sr.rank << "\n";
    e.text << "free parameters: " << (sr.free_parameters.empty() ? "none" : join(sr.free_parameters)) << "\n";
    for (const auto& b : sr.parameter_bounds.bounds) e.text << "bound: " << bound_text(b) << "\n";
    e.text << "residual unknowns (touched by no equation): " << sr.residual_unknowns.size() << "\n";
    e.text << "coefficient matrix, determined off-diagonal entries:\n";
    for (const auto& a : sr.ctx.top_down())
        for (const auto& b : sr.ctx.top_down()) {
            if (a == b || !sr.ctx.le(a, b)) continue;
            auto v = sr.cmatrix.at(a, b);
            if (v) e.text << "  c(" << a << "," << b << ") = " << v->str() << "\n";
        }
    for (const auto& m : sr.fourier_mismatches) e.text << "MISMATCH " << m << "\n";
}

void cmd_solve(const Pipeline& p, Emitter& e) {
    e.doc["solve"] = to_json(p.report);
    e.doc["system"] = to_json(p.system);
    solve_text(p, e);
    if (!p.report.fourier_mismatches.empty()) e.status = 1;
}

void cmd_cc(const Dataset& ds, const Pipeline& p, const std::map<std::string, Rational>& values, Emitter& e) {
    const auto& sr = p.report;
    auto table = substituted(sr.cc_table, values);
    ojson rows = ojson::array();
    bool negative = false;
    for (const auto& cc : table) {
        rows.push_back(to_json(cc, sr.ctx));
        for (const auto& [o, m] : cc.mult)
            if (m.is_constant() && m.constant() < 0) negative = true;
    }
    e.doc["cc_table"] = rows;
    std::vector<std::string> assigned;
    for (const auto& [k, v] : values) assigned.push_back(k + "=" + format_rational(v));
    e.doc["assignments"] = assigned;
    for (const auto& b : sr.parameter_bounds.bounds) e.text << "bound: " << bound_text(b) << "\n";
    if (!assigned.empty()) e.text << "with " << join(assigned) << ":\n";
    for (const auto& cc : table) {
        if (ds.localization && cc.source == ds.localization->target) continue;
        e.text << cc_line(cc, sr.ctx) << "\n";
    }
    if (p.localization) {
        auto loc = substituted({p.localization->cc}, values).front();
        e.text << "localization: " << cc_line(loc, sr.ctx) << "\n";
        e.doc["localization"] = to_json(*p.localization);
    } else if (p.localization_error) {
        e.text << "localization failed: " << *p.localization_error << "\n";
        e.doc["localization_error"] = *p.localization_error;
    }
    for (const auto& i : sr.incomplete) e.text << "undetermined: CC(IC" << i.source.str() << ")\n";
    if (negative) {
        e.text << "negative multiplicity after substitution\n";
        e.status = 1;
    }
}

struct PacketBundle {
    std::vector<Packet> micro;
    BasicPacketReport basic;
    Packet weak;
    std::vector<SimplifiedArthurParameter> params;
};

PacketBundle packets_of(const Dataset& ds, const SolveReport& sr) {
    PacketBundle b;
    for (const auto& o : ds.poset.orbits) b.micro.push_back(micro_packet(sr, ds.catalog, o.id));
    b.basic = basic_arthur_packet(sr, ds.catalog);
    if (!ds.special_piece.empty()) b.weak = weak_arthur_packet(ds, ds.catalog);
    b.params = simplified_arthur_parameters(ds);
    return b;
}

void cmd_packets(const Dataset& ds, const Pipeline& p, Emitter& e) {
    auto b = packets_of(ds, p.report);
    ojson micro = ojson::array();
    for (const auto& m : b.micro) {
        micro.push_back(to_json(m));
        e.text << packet_line(m) << "\n";
    }
    e.doc["micro"] = micro;
    e.doc["basic"] = to_json(b.basic.packet);
    e.doc["basic_matches_micro"] = b.basic.agrees;
    e.text << packet_line(b.basic.packet) << "  (equals mic[" << b.basic.micro.anchor << "]: "
           << (b.basic.agrees ? "yes" : "no") << ")\n";
    if (!ds.special_piece.empty()) {
        e.doc["weak"] = to_json(b.weak);
        e.text << "weak packet of the special piece {" << join(ds.special_piece) << "} = {" << join(b.weak.members)
               << "}\n";
    }
    e.doc["simplified_arthur_parameters"] = to_json(b.params);
    e.text << b.params.size() << " simplified Arthur parameters:";
    for (const auto& x : b.params) e.text << " " << x.label << "=(" << x.langlands_orbit << "," << x.arthur_orbit << ")";
    e.text << "\n";
    auto missing = missing_transposes(b.params);
    e.doc["missing_transposes"] = missing;
    if (!missing.empty()) e.text << "transpose missing for: " << join(missing) << "\n";
    auto u = unitarity_report(ds.catalog, b.micro);
    e.doc["unitarity"] = to_json(u);
    for (const auto& x : u)
        if (!x.non_unitary.empty()) e.text << "non-unitary in " << x.packet << ": " << join(x.non_unitary) << "\n";
}

void cmd_verify(const Dataset& ds, const Pipeline& p, Emitter& e) {
    const auto& sr = p.report;
    bool ok = true;
    auto v = validate_dataset(ds);
    e.doc["violations"] = to_json(v);
    if (!v.empty()) {
        ok = false;
        e.text << "dataset: " << v.size() << " violation(s)\n";
        for (const auto& x : v) e.text << "  [" << x.code << "] " << x.message << ": " << x.subject << "\n";
    } else {
        e.text << "dataset: valid\n";
    }

    auto basic = basic_arthur_packet(sr, ds.catalog);
    e.doc["basic_matches_micro"] = basic.agrees;
    e.text << "basic packet = mic[" << basic.micro.anchor << "]: " << (basic.agrees ? "yes" : "NO") << "\n";
    ok = ok && basic.agrees;

    if (!ds.special_piece.empty()) {
        auto w = verify_weak_equals_union(ds, sr, ds.catalog);
        e.doc["weak_equals_union"] = to_json(w);
        e.text << "weak = union of " << w.anchors.size() << (w.anchors.size() == 1 ? " micro-packet" : " micro-packets") << " (anchors " << join(w.anchors)
               << "): " << to_string(w.outcome) << ", " << w.weak.members.size() << " members\n";
        if (!w.only_in_weak.empty()) e.text << "  only in weak: " << join(w.only_in_weak) << "\n";
        if (!w.only_in_union.empty()) e.text << "  only in union: " << join(w.only_in_union) << "\n";
        if (!w.indeterminate.empty()) e.text << "  indeterminate: " << join(w.indeterminate) << "\n";
        ok = ok && w.outcome == Outcome::Equal;

        auto checks = verify_az_micro_compatibility(sr, ds.catalog, ds.duality, w.anchors);
        e.doc["az_micro"] = to_json(checks);
        for (const auto& c : checks) {
            e.text << "AZ(mic[" << c.anchor << "]) = mic[" << c.dual << "]: " << to_string(c.outcome);
            if (!c.symmetric_difference.empty()) e.text << "  differ by {" << join(c.symmetric_difference) << "}";
            e.text << "\n";
            ok = ok && c.outcome == Outcome::Equal;
        }
    }
    if (!sr.fourier_mismatches.empty()) {
        ok = false;
        for (const auto& m : sr.fourier_mismatches) e.text << "MISMATCH " << m << "\n";
    }
    e.doc["verified"] = ok;
    e.text << (ok ? "verified\n" : "verification FAILED\n");
    if (!ok) e.status = 1;
}

void banner(const Dataset& ds, Emitter& e) {
    std::vector<std::string> beyond;
    for (const auto& r : ds.catalog)
        if (!r.iwahori_spherical) beyond.push_back(r.id);
    if (beyond.empty()) return;
    std::string msg = "assumption: the AZ pairing is taken to agree with the transpose-Fourier pairing also for " +
                      join(beyond) + " (not Iwahori-spherical)";
    e.doc["assumptions"] = ojson::array({msg});
    e.text << msg << "\n\n";
}

void cmd_report(const Dataset& ds, const Pipeline& p, const std::map<std::string, Rational>& values, Emitter& e) {
    banner(ds, e);
    Emitter sub;
    e.text << "== validation ==\n";
    cmd_validate(ds, sub);
    e.text << sub.text.str() << "\n== coefficient matrix ==\n";
    e.doc["validation"] = sub.doc;
    int status = sub.status;

    sub = Emitter{};
    cmd_solve(p, sub);
    e.text << sub.text.str() << "\n== characteristic cycles ==\n";
    e.doc["solve"] = sub.doc["solve"];
    status = std::max(status, sub.status);

    sub = Emitter{};
    cmd_cc(ds, p, values, sub);
    e.text << sub.text.str() << "\n== packets ==\n";
    e.doc["cc"] = sub.doc;
    status = std::max(status, sub.status);

    sub = Emitter{};
    cmd_packets(ds, p, sub);
    e.text << sub.text.str() << "\n== verification ==\n";
    e.doc["packets"] = sub.doc;

    sub = Emitter{};
    cmd_verify(ds, p, sub);
    e.text << sub.text.str();
    e.doc["verify"] = sub.doc;
    e.status = std::max(status, sub.status);
}

int run(const RunConfig& cfg) {
    Emitter e;
    e.doc["command"] = cfg.command;
    try {
        Dataset ds = load_dataset(cfg.dataset);
        e.doc["dataset"] = ds.name;
        auto values = parse_sets(cfg.sets);
        if (cfg.command == "validate") {
            cmd_validate(ds, e);
        } else {
            Pipeline p = run_pipeline(ds);
            check_assignments(p.report, values);
            if (cfg.command == "solve") cmd_solve(p, e);
            else if (cfg.command == "cc") cmd_cc(ds, p, values, e);
            else if (cfg.command == "packets") cmd_packets(ds, p, e);
            else if (cfg.command == "verify") cmd_verify(ds, p, e);
            else cmd_report(ds, p, values, e);
        }
    } catch (const DatasetError& ex) {
        std::cerr << "charcyc: " << ex.what() << "\n";
        return 2;
    } catch (const InputError& ex) {
        std::cerr << "charcyc: " << ex.what() << "\n";
        return 2;
    } catch (const InconsistentSystemError& ex) {
        std::cerr << "charcyc: " << ex.what() << "; conflicting equations:\n";
        for (const auto& c : ex.conflicting) std::cerr << "  " << c << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "charcyc: " << ex.what() << "\n";
        return 2;
    }

    e.doc["exit_status"] = e.status;
    std::string payload = cfg.format == "machine" ? e.doc.dump(2) + "\n" : e.text.str();
    if (cfg.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            std::cerr << "charcyc: cannot write " << cfg.out << "\n";
            return 2;
        }
        f << payload;
    }
    return e.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Characteristic cycles, micro-packets and Arthur packet checks from orbit data"};
    RunConfig cfg;
    app.add_option("command", cfg.command, "validate | solve | cc | packets | verify | report")
        ->required()
        ->check(CLI::IsMember({"validate", "solve", "cc", "packets", "verify", "report"}));
    app.add_option("--dataset", cfg.dataset, "dataset file (JSON)")->required();
    app.add_option("--format", cfg.format, "text | machine")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--out", cfg.out, "write the report here instead of stdout");
    app.add_option("--set", cfg.sets, "assign a free parameter, name=int (repeatable)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        int rc = app.exit(ex);
        return rc == 0 ? 0 : 2;
    }
    return run(cfg);
}
