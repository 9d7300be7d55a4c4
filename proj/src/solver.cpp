#include "charcyc/solver.hpp"

#include <algorithm>
#include <functional>

#include "charcyc/duality.hpp"

namespace charcyc {

namespace {

int sign(int d) { return d % 2 == 0 ? 1 : -1; }

const char* kDot = "·";

}  // namespace

// ---- context ----

std::size_t SolverContext::index(const OrbitId& id) const {
    for (std::size_t i = 0; i < orbits.size(); ++i)
        if (orbits[i].id == id) return i;
    throw UnknownIdError("unknown orbit " + id);
}

const Orbit& SolverContext::orbit(const OrbitId& id) const { return orbits[index(id)]; }

int SolverContext::rank(const LocalSystemId& ls) const {
    for (const auto& ir : orbit(ls.orbit).group.irreps)
        if (ir.label == ls.irrep) return ir.dim;
    throw UnknownIdError("unknown local system " + ls.str());
}

std::vector<LocalSystemId> SolverContext::local_systems() const {
    std::vector<LocalSystemId> out;
    for (const auto& o : orbits)
        for (const auto& ir : o.group.irreps) out.push_back({o.id, ir.label});
    return out;
}

std::vector<OrbitId> SolverContext::top_down() const {
    OrbitPoset p;
    p.orbits = orbits;
    return p.top_down();
}

namespace {

SolverContext make_context(const Dataset& ds, const EulerMatrix& em) {
    SolverContext ctx;
    ctx.orbits = ds.poset.orbits;
    ctx.leq = closure_matrix(ds.poset);
    ctx.hat = ds.duality.hat;
    ctx.fourier = ds.duality.fourier;
    ctx.euler = em;
    ctx.options = ds.solver;
    return ctx;
}

std::vector<OrbitId> bottom_up(const SolverContext& ctx) {
    auto v = ctx.top_down();
    return {v.rbegin(), v.rend()};
}

std::string mic_name(const OrbitId& s, const LocalSystemId& ls) { return "mic[" + s + "](IC" + ls.str() + ")"; }

}  // namespace

// ---- constraints ----

std::string render_unknown(const OrbitPair& u) { return "c(" + u.first + "," + u.second + ")"; }

std::optional<std::size_t> ConstraintSystem::unknown_index(const OrbitId& a, const OrbitId& b) const {
    for (std::size_t i = 0; i < unknowns.size(); ++i)
        if (unknowns[i].first == a && unknowns[i].second == b) return i;
    return std::nullopt;
}

bool ConstraintSystem::has_equation(const std::string& text) const {
    return std::any_of(equations.begin(), equations.end(), [&](const Equation& e) { return e.text == text; });
}

namespace {

struct LinExpr {
    Rational constant = 0;
    std::map<std::size_t, Rational> terms;
    bool operator==(const LinExpr&) const = default;
};

LinExpr minus(LinExpr a, const LinExpr& b) {
    a.constant -= b.constant;
    for (const auto& [k, v] : b.terms) {
        a.terms[k] -= v;
        if (a.terms[k] == 0) a.terms.erase(k);
    }
    return a;
}

struct Value {
    enum Kind { Const, Expr, Missing } kind = Const;
    LinExpr e;
    std::vector<std::string> missing;
};

class Builder {
public:
    explicit Builder(ConstraintSystem& cs) : cs_(cs), ctx_(cs.ctx) {}

    void declare_unknowns() {
        auto rows = ctx_.top_down();
        auto cols = bottom_up(ctx_);
        for (const auto& a : rows)
            for (const auto& b : cols) {
                if (!ctx_.le(a, b)) continue;
                cs_.unknowns.push_back({a, b});
            }
    }

    Value expression(const OrbitId& s1, const LocalSystemId& src) const {
        Value v;
        v.kind = Value::Expr;
        for (const auto& o : ctx_.orbits) {
            const auto& s2 = o.id;
            if (!ctx_.le(s1, s2) || !ctx_.le(s2, src.orbit)) continue;
            MaybeInt chi = ctx_.euler.at(src, s2);
            if (!chi) {
                v.missing.push_back("chi_loc[" + s2 + "](IC" + src.str() + ")");
                continue;
            }
            if (*chi == 0) continue;
            if (s1 == s2 && ctx_.options.diagonal_rule) {
                v.e.constant += sign(o.dim) * *chi;
            } else {
                std::size_t k = *cs_.unknown_index(s1, s2);
                v.e.terms[k] += *chi;
                if (v.e.terms[k] == 0) v.e.terms.erase(k);
            }
        }
        if (!v.missing.empty()) v.kind = Value::Missing;
        return v;
    }

    // vanishing and leading multiplicities are constants, else the expansion
    Value value(const OrbitId& s1, const LocalSystemId& src) const {
        Value v;
        if (!ctx_.le(s1, src.orbit)) {
            v.kind = Value::Const;
            return v;
        }
        if (s1 == src.orbit && ctx_.options.leading_rule) {
            v.kind = Value::Const;
            v.e.constant = ctx_.rank(src);
            return v;
        }
        return expression(s1, src);
    }

    void add(LinExpr e, const std::string& rule, const std::string& origin) {
        normalize(e);
        if (e.terms.empty() && e.constant == 0) return;
        for (const auto& eq : cs_.equations)
            if (eq.constant == e.constant && eq.terms == e.terms) return;
        Equation eq;
        eq.constant = e.constant;
        eq.terms = e.terms;
        eq.rule = rule;
        eq.origin = origin;
        eq.text = render(e);
        cs_.equations.push_back(std::move(eq));
    }

    void skip(const std::string& rule, const std::string& origin, std::vector<std::string> missing) {
        std::sort(missing.begin(), missing.end());
        missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
        cs_.skipped.push_back({rule, origin, std::move(missing)});
    }

    void local_rules() {
        for (const auto& src : ctx_.local_systems()) {
            const auto& S = src.orbit;
            if (ctx_.options.leading_rule) {
                Value v = expression(S, src);
                LinExpr rhs;
                rhs.constant = ctx_.rank(src);
                if (v.kind == Value::Missing)
                    skip("leading", mic_name(S, src) + " = " + std::to_string(ctx_.rank(src)), v.missing);
                else
                    add(minus(v.e, rhs), "leading", mic_name(S, src) + " = " + std::to_string(ctx_.rank(src)));
            }
        }
    }

    // c(S,S) = (-1)^dim S; other equations already carry it as a constant
    void diagonal_rules() {
        if (!ctx_.options.diagonal_rule) return;
        for (const auto& S : ctx_.top_down()) {
            LinExpr e;
            e.terms[*cs_.unknown_index(S, S)] = 1;
            e.constant = -sign(ctx_.orbit(S).dim);
            add(e, "diagonal", render_unknown({S, S}) + " = " + std::to_string(sign(ctx_.orbit(S).dim)));
        }
    }

    void fourier_rules() {
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& src : ctx_.local_systems()) {
            auto fit = ctx_.fourier.find(src);
            if (fit == ctx_.fourier.end()) continue;
            for (const auto& o : ctx_.orbits) {
                auto hit = ctx_.hat.find(o.id);
                if (hit == ctx_.hat.end()) continue;
                std::string lhs = mic_name(o.id, src), rhs = mic_name(hit->second, fit->second);
                auto key = lhs < rhs ? std::make_pair(lhs, rhs) : std::make_pair(rhs, lhs);
                if (!seen.insert(key).second) continue;
                std::string origin = lhs + " = " + rhs;
                Value a = value(o.id, src), b = value(hit->second, fit->second);
                if (a.kind == Value::Missing || b.kind == Value::Missing) {
                    auto miss = a.missing;
                    miss.insert(miss.end(), b.missing.begin(), b.missing.end());
                    skip("fourier", origin, miss);
                    continue;
                }
                add(minus(a.e, b.e), "fourier", origin);
            }
        }
    }

private:
    static void normalize(LinExpr& e) {
        BigInt lcm = denominator(e.constant);
        for (const auto& [k, v] : e.terms) lcm = boost::multiprecision::lcm(lcm, denominator(v));
        e.constant *= lcm;
        for (auto& [k, v] : e.terms) v *= lcm;
        BigInt g = numerator(e.constant);
        for (const auto& [k, v] : e.terms) g = boost::multiprecision::gcd(g, numerator(v));
        if (g < 0) g = -g;
        if (g > 1) {
            e.constant /= Rational(g);
            for (auto& [k, v] : e.terms) v /= Rational(g);
        }
        bool flip = e.terms.empty() ? e.constant < 0 : e.terms.begin()->second < 0;
        if (flip) {
            e.constant = -e.constant;
            for (auto& [k, v] : e.terms) v = -v;
        }
    }

    std::string render(const LinExpr& e) const {
        std::string out = "0 = ";
        bool first = true;
        if (e.constant != 0 || e.terms.empty()) {
            out += format_rational(e.constant);
            first = false;
        }
        for (const auto& [k, v] : e.terms) {
            Rational mag = v < 0 ? Rational(-v) : v;
            if (first)
                out += v < 0 ? "-" : "";
            else
                out += v < 0 ? " - " : " + ";
            first = false;
            if (mag != 1) out += format_rational(mag) + kDot;
            out += render_unknown(cs_.unknowns[k]);
        }
        return out;
    }

    ConstraintSystem& cs_;
    const SolverContext& ctx_;
};

}  // namespace

ConstraintSystem build_constraints(const Dataset& ds, const EulerMatrix& em) {
    ConstraintSystem cs;
    cs.ctx = make_context(ds, em);
    Builder b(cs);
    b.declare_unknowns();
    b.local_rules();
    b.fourier_rules();
    b.diagonal_rules();
    return cs;
}

// ---- solving ----

std::optional<AffineInt> CMatrix::at(const OrbitId& a, const OrbitId& b) const {
    auto ia = std::find(orbits.begin(), orbits.end(), a);
    auto ib = std::find(orbits.begin(), orbits.end(), b);
    if (ia == orbits.end() || ib == orbits.end()) throw UnknownIdError("unknown orbit pair " + a + "," + b);
    if (!leq[ia - orbits.begin()][ib - orbits.begin()]) return AffineInt(0);
    auto it = entries.find({a, b});
    if (it != entries.end()) return it->second;
    return std::nullopt;
}

AffineInt CharacteristicCycle::at(const OrbitId& s) const {
    auto it = mult.find(s);
    return it == mult.end() ? AffineInt(0) : it->second;
}

const CharacteristicCycle* SolveReport::find_cc(const LocalSystemId& ls) const {
    for (const auto& cc : cc_table)
        if (cc.source == ls) return &cc;
    return nullptr;
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// reduced row echelon form in place; returns pivot column per pivot row
std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t p = row;
        while (p < m.size() && m[p][col] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][col];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (std::size_t k = 0; k < m[r].size(); ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

struct Layout {
    std::vector<std::size_t> used;  // unknown indices, in unknown order
    std::map<std::size_t, std::size_t> col;
};

Layout layout(const ConstraintSystem& cs) {
    std::set<std::size_t> s;
    for (const auto& e : cs.equations)
        for (const auto& [k, v] : e.terms) s.insert(k);
    Layout L;
    L.used.assign(s.begin(), s.end());
    for (std::size_t i = 0; i < L.used.size(); ++i) L.col[L.used[i]] = i;
    return L;
}

Matrix matrix_of(const ConstraintSystem& cs, const Layout& L, const std::vector<std::size_t>& which) {
    Matrix m;
    for (std::size_t i : which) {
        const auto& e = cs.equations[i];
        std::vector<Rational> row(L.used.size() + 1, Rational(0));
        for (const auto& [k, v] : e.terms) row[L.col.at(k)] = v;
        row.back() = e.constant;
        m.push_back(std::move(row));
    }
    return m;
}

bool consistent(const ConstraintSystem& cs, const Layout& L, const std::vector<std::size_t>& which) {
    Matrix m = matrix_of(cs, L, which);
    auto piv = rref(m, L.used.size());
    for (std::size_t r = piv.size(); r < m.size(); ++r)
        if (m[r].back() != 0) return false;
    return true;
}

std::optional<AffineInt> mic_from_c(const SolveReport& sr, const OrbitId& s1, const LocalSystemId& src) {
    const auto& ctx = sr.ctx;
    AffineInt acc;
    for (const auto& o : ctx.orbits) {
        if (!ctx.le(s1, o.id) || !ctx.le(o.id, src.orbit)) continue;
        MaybeInt chi = ctx.euler.at(src, o.id);
        if (chi && *chi == 0) continue;
        auto c = sr.cmatrix.at(s1, o.id);
        if (!chi || !c) return std::nullopt;
        acc += *c * Rational(*chi);
    }
    return acc;
}

void fill_cc_table(SolveReport& sr) {
    const auto& ctx = sr.ctx;
    for (const auto& src : ctx.local_systems()) {
        CharacteristicCycle cc{src, {}};
        std::vector<OrbitId> unknown;
        for (const auto& o : ctx.orbits) {
            std::optional<AffineInt> v;
            if (!ctx.le(o.id, src.orbit)) {
                v = AffineInt(0);
            } else if (o.id == src.orbit && ctx.options.leading_rule) {
                v = AffineInt(ctx.rank(src));
            } else {
                v = mic_from_c(sr, o.id, src);
            }
            // Fourier partner, used when the direct expansion is unavailable and
            // cross-checked when both are
            std::optional<AffineInt> w;
            auto hit = ctx.hat.find(o.id);
            auto fit = ctx.fourier.find(src);
            if (hit != ctx.hat.end() && fit != ctx.fourier.end()) {
                const auto& s2 = hit->second;
                const auto& f = fit->second;
                if (!ctx.le(s2, f.orbit))
                    w = AffineInt(0);
                else if (s2 == f.orbit && ctx.options.leading_rule)
                    w = AffineInt(ctx.rank(f));
                else
                    w = mic_from_c(sr, s2, f);
            }
            if (v && w && !(*v == *w))
                sr.fourier_mismatches.push_back(mic_name(o.id, src) + ": " + v->str() + " vs " + w->str());
            if (!v) v = w;
            if (!v)
                unknown.push_back(o.id);
            else if (!v->is_zero())
                cc.mult[o.id] = *v;
        }
        if (unknown.empty())
            sr.cc_table.push_back(std::move(cc));
        else
            sr.incomplete.push_back({src, cc.mult, unknown});
    }
}

}  // namespace

SolveReport solve(const ConstraintSystem& cs) {
    Layout L = layout(cs);
    std::vector<std::size_t> all(cs.equations.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    if (!consistent(cs, L, all)) {
        // deletion filter down to a minimal inconsistent subset
        std::vector<std::size_t> core = all;
        for (std::size_t i : all) {
            std::vector<std::size_t> trial;
            for (std::size_t j : core)
                if (j != i) trial.push_back(j);
            if (!consistent(cs, L, trial)) core = trial;
        }
        std::vector<std::string> texts;
        for (std::size_t i : core) texts.push_back(cs.equations[i].text + "   [" + cs.equations[i].origin + "]");
        throw InconsistentSystemError("inconsistent system", texts);
    }

    Matrix m = matrix_of(cs, L, all);
    auto piv = rref(m, L.used.size());
    std::set<std::size_t> pivot_cols(piv.begin(), piv.end());

    SolveReport sr;
    sr.ctx = cs.ctx;
    sr.equation_count = cs.equations.size();
    sr.skipped_count = cs.skipped.size();
    sr.rank = piv.size();

    std::map<std::size_t, AffineInt> value;  // by column
    for (std::size_t c = 0; c < L.used.size(); ++c) {
        if (pivot_cols.count(c)) continue;
        const auto& u = cs.unknowns[L.used[c]];
        auto nit = cs.ctx.options.parameter_names.find(u);
        std::string name = nit != cs.ctx.options.parameter_names.end() ? nit->second
                                                                       : "p_" + u.first + "_" + u.second;
        sr.free_parameters.push_back(name);
        sr.parameter_origin[name] = u;
        value[c] = AffineInt::param(name);
    }
    for (std::size_t r = 0; r < piv.size(); ++r) {
        AffineInt v(-m[r].back());
        for (std::size_t c = 0; c < L.used.size(); ++c)
            if (c != piv[r] && m[r][c] != 0) v -= value.at(c) * m[r][c];
        value[piv[r]] = v;
    }

    sr.cmatrix.orbits.clear();
    for (const auto& o : cs.ctx.orbits) sr.cmatrix.orbits.push_back(o.id);
    sr.cmatrix.leq = cs.ctx.leq;
    for (std::size_t c = 0; c < L.used.size(); ++c) sr.cmatrix.entries[cs.unknowns[L.used[c]]] = value.at(c);
    for (const auto& u : cs.unknowns)
        if (!sr.cmatrix.entries.count(u)) {
            sr.cmatrix.residual.insert(u);
            sr.residual_unknowns.push_back(u);
        }

    fill_cc_table(sr);
    sr.parameter_bounds = parameter_bounds_report(sr.cc_table);
    return sr;
}

CharacteristicCycle characteristic_cycle(const SolveReport& sr, const LocalSystemId& ls) {
    if (const auto* cc = sr.find_cc(ls)) return *cc;
    for (const auto& inc : sr.incomplete)
        if (inc.source == ls) throw ParameterError("characteristic cycle of " + ls.str() + " is not determined");
    throw UnknownIdError("unknown local system " + ls.str());
}

// ---- bounds ----

BoundsReport parameter_bounds_report(const std::vector<CharacteristicCycle>& table) {
    BoundsReport rep;
    std::map<std::string, ParameterBound> agg;
    for (const auto& cc : table)
        for (const auto& [orb, m] : cc.mult) {
            if (m.is_constant()) {
                if (m.constant() < 0) rep.feasible = false;
                continue;
            }
            if (m.coeffs().size() > 1) {
                rep.unsolved.push_back(cc.source.str() + " at " + orb + ": " + m.str());
                continue;
            }
            const auto& [p, b] = *m.coeffs().begin();
            Rational root = -m.constant() / b;
            auto& pb = agg[p];
            pb.parameter = p;
            if (b > 0) {
                BigInt lo = ceil_div(root);
                if (!pb.lower || lo > *pb.lower) pb.lower = lo;
            } else {
                BigInt hi = floor_div(root);
                if (!pb.upper || hi < *pb.upper) pb.upper = hi;
            }
        }
    for (auto& [p, pb] : agg) {
        if (pb.lower && pb.upper && *pb.lower > *pb.upper) rep.feasible = false;
        rep.bounds.push_back(pb);
    }
    return rep;
}

std::vector<ParameterBound> parameter_bounds(const SolveReport& sr) {
    BoundsReport rep = parameter_bounds_report(sr.cc_table);
    if (!rep.unsolved.empty()) throw ParameterError("multi-parameter multiplicity: " + rep.unsolved.front());
    if (!rep.feasible) throw ParameterError("parameter bounds are infeasible");
    return rep.bounds;
}

// ---- Kashiwara inversion ----

namespace {

// chi_loc of one cycle at every orbit; empty where undetermined
std::map<OrbitId, std::optional<AffineInt>> invert(const SolveReport& sr, const CharacteristicCycle& cc,
                                                   std::vector<std::string>* not_cancelled) {
    const auto& ctx = sr.ctx;
    std::map<OrbitId, std::optional<AffineInt>> chi;
    for (const auto& s1 : ctx.top_down()) {
        std::optional<AffineInt> acc = cc.at(s1);
        auto diag = sr.cmatrix.at(s1, s1);
        if (!diag || !diag->is_constant() || diag->constant() == 0) acc.reset();
        for (const auto& o : ctx.orbits) {
            if (!acc) break;
            if (o.id == s1 || !ctx.le(s1, o.id)) continue;
            const auto& above = chi[o.id];
            if (above && above->is_zero()) continue;
            auto c = sr.cmatrix.at(s1, o.id);
            if (c && c->is_zero()) continue;
            if (!above || !c) {
                acc.reset();
                break;
            }
            try {
                *acc -= *c * *above;
            } catch (const AffineError&) {
                if (not_cancelled) not_cancelled->push_back("chi_loc[" + s1 + "](IC" + cc.source.str() + ")");
                acc.reset();
            }
        }
        if (acc) *acc *= 1 / diag->constant();
        chi[s1] = acc;
    }
    return chi;
}

}  // namespace

Reconstruction reconstruct_local_euler(const SolveReport& sr, const std::vector<CharacteristicCycle>& table) {
    Reconstruction rec;
    for (const auto& o : sr.ctx.orbits) rec.euler.cols.push_back(o.id);
    for (const auto& cc : table) {
        auto chi = invert(sr, cc, &rec.not_cancelled);
        std::vector<MaybeInt> row;
        for (const auto& o : sr.ctx.orbits) {
            const auto& v = chi[o.id];
            if (v && v->is_constant() && is_integer(v->constant())) {
                row.push_back(v->as_int());
            } else {
                if (v && !v->is_constant())
                    rec.not_cancelled.push_back("chi_loc[" + o.id + "](IC" + cc.source.str() + ") = " + v->str());
                row.push_back(std::nullopt);
            }
        }
        rec.euler.rows.push_back(cc.source);
        rec.euler.cells.push_back(std::move(row));
    }
    return rec;
}

long long reconstruct_local_euler_entry(const SolveReport& sr, const CharacteristicCycle& cc, const OrbitId& target) {
    std::vector<std::string> nc;
    auto chi = invert(sr, cc, &nc);
    const auto& v = chi.at(target);
    if (v && v->is_constant()) return v->as_int();
    if (v || !nc.empty()) throw ParameterError("parameter does not cancel at chi_loc[" + target + "](IC" + cc.source.str() + ")");
    throw ParameterError("chi_loc[" + target + "](IC" + cc.source.str() + ") needs undetermined coefficients");
}

bool check_halfinteger_roots(const std::vector<Rational>& roots) {
    if (roots.empty()) throw std::invalid_argument("empty root list");
    for (const auto& r : roots) {
        Rational twice = 2 * r;
        if (is_integer(twice) && !is_integer(r)) return false;
    }
    return true;
}

// ---- localization ----

namespace {

struct Peeler {
    const SolveReport& sr;
    const SolverContext& ctx;
    const Localization& loc;
    std::vector<OrbitId> order;
    std::vector<std::map<LocalSystemId, AffineInt>> solutions;
    std::vector<std::string> missing;

    void run(std::map<OrbitId, AffineInt> residual, std::size_t k, std::map<LocalSystemId, AffineInt> n) {
        if (k == order.size()) {
            solutions.push_back(n);
            return;
        }
        const OrbitId& S = order[k];
        AffineInt R = residual[S];
        const auto& irreps = ctx.orbit(S).group.irreps;
        std::vector<std::map<std::string, AffineInt>> choices;

        if (S == loc.source.orbit) {
            choices.push_back({{loc.source.irrep, R * (Rational(1) / ctx.rank(loc.source))}});
        } else if (R.is_zero()) {
            choices.push_back({});
        } else if (!R.is_constant()) {
            if (irreps.size() != 1 || irreps[0].dim != 1)
                throw LocalizationError("cannot split symbolic multiplicity " + R.str() + " over the local systems on " + S);
            choices.push_back({{irreps[0].label, R}});
        } else {
            if (!is_integer(R.constant()) || R.constant() < 0) return;
            long long total = R.as_int();
            std::map<std::string, AffineInt> cur;
            std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
                if (i == irreps.size()) {
                    if (left == 0) choices.push_back(cur);
                    return;
                }
                for (long long m = 0; m * irreps[i].dim <= left; ++m) {
                    if (m) cur[irreps[i].label] = AffineInt(m);
                    else cur.erase(irreps[i].label);
                    rec(i + 1, left - m * irreps[i].dim);
                }
                cur.erase(irreps[i].label);
            };
            rec(0, total);
        }

        for (const auto& ch : choices) {
            auto res = residual;
            auto nn = n;
            bool ok = true;
            for (const auto& [irrep, mult] : ch) {
                LocalSystemId g{S, irrep};
                if (mult.is_zero()) continue;
                const CharacteristicCycle* cc = sr.find_cc(g);
                if (!cc || g == loc.target) {
                    missing.push_back(g.str());
                    ok = false;
                    break;
                }
                nn[g] = mult;
                for (const auto& [o, m] : cc->mult) res[o] -= mult * m;
            }
            if (!ok) continue;
            for (std::size_t j = k + 1; j < order.size() && ok; ++j) {
                const auto& r = res[order[j]];
                if (r.is_constant() && r.constant() < 0) ok = false;
            }
            if (ok && !res[S].is_zero()) ok = false;
            if (ok) run(res, k + 1, nn);
        }
    }
};

}  // namespace

LocalizationResult special_cc_localization(const Dataset& ds, const SolveReport& sr) {
    if (!ds.localization) throw LocalizationError("dataset declares no localization");
    const auto& loc = *ds.localization;
    if (!ds.b_function) throw LocalizationError("dataset carries no b-function roots");
    if (!check_halfinteger_roots(*ds.b_function))
        throw LocalizationError("b-function has a half-integer root; the twisted module need not be simple");
    if (ds.non_dense_conormal.size() > 1)
        throw LocalizationError("more than one conormal without a dense orbit is not supported");

    const auto& ctx = sr.ctx;
    LocalizationResult out;
    out.symbol = "a";
    while (std::find(sr.free_parameters.begin(), sr.free_parameters.end(), out.symbol) != sr.free_parameters.end())
        out.symbol += "'";

    out.ansatz.source = loc.target;
    for (const auto& o : ctx.orbits) {
        bool dense = std::find(ds.non_dense_conormal.begin(), ds.non_dense_conormal.end(), o.id) ==
                     ds.non_dense_conormal.end();
        out.ansatz.mult[o.id] = dense ? AffineInt(1) : AffineInt::param(out.symbol);
    }

    Peeler peel{sr, ctx, loc, ctx.top_down(), {}, {}};
    peel.run(out.ansatz.mult, 0, {});
    if (peel.solutions.empty()) {
        std::string m;
        for (const auto& x : peel.missing) m += " " + x;
        throw LocalizationError("no composition series matches the localized cycle" +
                                (m.empty() ? std::string() : "; cycles unavailable for" + m));
    }
    if (peel.solutions.size() > 1) throw LocalizationError("composition series of the localized module is not unique");
    out.composition = peel.solutions.front();

    if (ds.non_dense_conormal.empty()) {
        out.cc = out.ansatz;
        out.solved_symbol = AffineInt(0);
        return out;
    }

    // the constituent whose multiplicity carries the symbol
    std::optional<LocalSystemId> probe;
    for (const auto& [g, m] : out.composition)
        if (m.coeff(out.symbol) != 0) {
            if (probe) throw LocalizationError("symbol appears in several composition multiplicities");
            probe = g;
        }
    if (!probe) throw LocalizationError("symbol does not enter the composition series");
    out.probe = *probe;

    MultiplicityMatrices mm = geometric_multiplicity_matrix(ds);
    out.check_terms = composition_terms(mm, out.probe, loc.source);
    out.check_value = composition_multiplicity(mm, out.probe, loc.source);
    if (out.check_value != 0)
        throw LocalizationError("composition check nonzero: " + std::to_string(out.check_value));

    AffineInt sum;
    std::vector<std::string> missing;
    for (const auto& [g, m] : out.composition) {
        MaybeInt cg = mm.cg_at(out.probe, g);
        if (!cg) {
            missing.push_back("cg" + out.probe.str() + g.str());
            continue;
        }
        sum += m * Rational(*cg);
    }
    if (!missing.empty()) throw InsufficientDataError("insufficient KL data", missing);
    out.series_check = sum;
    Rational k = sum.coeff(out.symbol);
    if (k == 0) throw LocalizationError("pairing does not involve the symbol");
    AffineInt rest = sum - AffineInt::param(out.symbol, k);
    out.solved_symbol = rest * (Rational(-1) / k);

    // KL-side multiplicities must agree with the peeled series wherever both are known
    for (const auto& g : mm.index) {
        MaybeInt m = mm.mg_at(g, loc.source);
        if (!m) continue;
        auto it = out.composition.find(g);
        AffineInt n = it == out.composition.end() ? AffineInt(0) : it->second.substitute(out.symbol, out.solved_symbol);
        if (!(n == AffineInt(*m)))
            throw LocalizationError("composition multiplicity of " + g.str() + " is " + n.str() +
                                    " but the KL inverse gives " + std::to_string(*m));
    }

    out.cc.source = loc.target;
    for (const auto& [o, m] : out.ansatz.mult) {
        AffineInt v = m.substitute(out.symbol, out.solved_symbol);
        if (!v.is_zero()) out.cc.mult[o] = v;
    }
    return out;
}

SolveReport with_localization(const SolveReport& sr, const LocalizationResult& loc) {
    SolveReport out = sr;
    if (const auto* existing = out.find_cc(loc.cc.source)) {
        if (*existing == loc.cc)
            out.cc_notes.push_back("localization cycle of " + loc.cc.source.str() + " agrees with the solved cycle");
        else
            out.fourier_mismatches.push_back("localization cycle of " + loc.cc.source.str() + " disagrees with the solved cycle");
        return out;
    }
    out.incomplete.erase(std::remove_if(out.incomplete.begin(), out.incomplete.end(),
                                        [&](const IncompleteCycle& i) { return i.source == loc.cc.source; }),
                         out.incomplete.end());
    out.cc_table.push_back(loc.cc);
    out.cc_notes.push_back("cycle of " + loc.cc.source.str() + " from the localization recipe");
    out.parameter_bounds = parameter_bounds_report(out.cc_table);
    return out;
}

Pipeline run_pipeline(const Dataset& ds) {
    Pipeline p;
    p.system = build_constraints(ds, euler_matrix(ds));
    p.report = solve(p.system);
    if (ds.localization) {
        try {
            p.localization = special_cc_localization(ds, p.report);
            p.report = with_localization(p.report, *p.localization);
        } catch (const LocalizationError& e) {
            p.localization_error = e.what();
        } catch (const InsufficientDataError& e) {
            p.localization_error = e.what();
        }
    }
    return p;
}

}  // namespace charcyc
