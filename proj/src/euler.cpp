#include "charcyc/euler.hpp"

#include <algorithm>
#include <numeric>

namespace charcyc {

namespace {

int sign(int d) { return d % 2 == 0 ? 1 : -1; }

struct Order {
    const OrbitPoset& P;
    std::vector<std::vector<bool>> leq;
    explicit Order(const OrbitPoset& p) : P(p), leq(closure_matrix(p)) {}
    bool le(const OrbitId& a, const OrbitId& b) const { return leq[P.index(a)][P.index(b)]; }
    bool lt(const OrbitId& a, const OrbitId& b) const { return a != b && le(a, b); }
};

MaybeInt kl_lookup(const KLEvaluationTable& kl, const Order& ord, const LocalSystemId& target,
                   const LocalSystemId& source) {
    auto it = kl.entries.find({target, source});
    if (it != kl.entries.end()) return it->second;
    if (target == source) return 1;
    if (target.orbit == source.orbit || !ord.le(target.orbit, source.orbit)) return 0;
    return std::nullopt;
}

MaybeInt local_euler_impl(const KLEvaluationTable& kl, const Order& ord, const LocalSystemId& source,
                          const OrbitId& target) {
    const auto& P = ord.P;
    if (!ord.le(target, source.orbit)) return 0;
    long long sum = 0;
    bool complete = true;
    for (const auto& ir : P.orbit(target).group.irreps) {
        MaybeInt v = kl_lookup(kl, ord, {target, ir.label}, source);
        if (!v) {
            complete = false;
            break;
        }
        sum += ir.dim * *v;
    }
    if (!complete) {
        auto it = kl.orbit_sums.find({target, source});
        if (it == kl.orbit_sums.end()) return std::nullopt;
        sum = it->second;
    }
    return sign(P.orbit(source.orbit).dim) * sum;
}

}  // namespace

MaybeInt kl_value(const KLEvaluationTable& kl, const OrbitPoset& poset, const LocalSystemId& target,
                  const LocalSystemId& source) {
    if (!poset.irrep(target) || !poset.irrep(source))
        throw UnknownIdError("unknown local system in KL lookup");
    return kl_lookup(kl, Order(poset), target, source);
}

MaybeInt local_euler(const KLEvaluationTable& kl, const OrbitPoset& poset, const LocalSystemId& source,
                     const OrbitId& target) {
    if (!poset.irrep(source)) throw UnknownIdError("unknown local system " + source.str());
    if (!poset.has(target)) throw UnknownIdError("unknown orbit " + target);
    return local_euler_impl(kl, Order(poset), source, target);
}

MaybeInt EulerMatrix::at(const LocalSystemId& source, const OrbitId& target) const {
    auto r = std::find(rows.begin(), rows.end(), source);
    auto c = std::find(cols.begin(), cols.end(), target);
    if (r == rows.end() || c == cols.end()) throw UnknownIdError("euler matrix has no cell " + source.str() + "," + target);
    return cells[r - rows.begin()][c - cols.begin()];
}

std::size_t EulerMatrix::known_count() const {
    std::size_t n = 0;
    for (const auto& row : cells)
        for (const auto& v : row) n += v.has_value();
    return n;
}

EulerMatrix euler_matrix(const Dataset& ds) {
    Order ord(ds.poset);
    EulerMatrix em;
    em.rows = ds.poset.local_systems();
    for (const auto& o : ds.poset.orbits) em.cols.push_back(o.id);
    for (const auto& src : em.rows) {
        std::vector<MaybeInt> row;
        for (const auto& t : em.cols) row.push_back(local_euler_impl(ds.kl, ord, src, t));
        em.cells.push_back(std::move(row));
    }
    return em;
}

std::vector<Violation> validate_kl(const Dataset& ds) {
    std::vector<Violation> out;
    Order ord(ds.poset);
    for (const auto& [key, v] : ds.kl.entries) {
        const auto& [t, s] = key;
        std::string where = t.str() + "<-" + s.str();
        if (v < 0) out.push_back({"kl-negative", "KL evaluation must be nonnegative", where});
        if (t == s && v != 1) out.push_back({"kl-normalization", "diagonal KL evaluation must be 1", where});
        if (t != s && v != 0 && (t.orbit == s.orbit || !ord.le(t.orbit, s.orbit)))
            out.push_back({"kl-support", "nonzero KL evaluation outside the closure", where});
    }
    for (const auto& [key, v] : ds.kl.orbit_sums) {
        const auto& [t, s] = key;
        std::string where = t + "<-" + s.str();
        if (v < 0) out.push_back({"kl-negative", "KL orbit sum must be nonnegative", where});
        if (v != 0 && !ord.lt(t, s.orbit))
            out.push_back({"kl-support", "nonzero KL orbit sum outside the closure", where});
        long long sum = 0;
        bool complete = true;
        for (const auto& ir : ds.poset.orbit(t).group.irreps) {
            auto it = ds.kl.entries.find({{t, ir.label}, s});
            if (it == ds.kl.entries.end()) {
                complete = false;
                break;
            }
            sum += ir.dim * it->second;
        }
        if (complete && sum != v)
            out.push_back({"kl-orbit-sum", "orbit sum disagrees with per-irrep entries", where});
    }
    return out;
}

// ---- geometric multiplicities ----

std::size_t MultiplicityMatrices::pos(const LocalSystemId& ls) const {
    auto it = std::find(index.begin(), index.end(), ls);
    if (it == index.end()) throw UnknownIdError("unknown local system " + ls.str());
    return it - index.begin();
}

MaybeInt MultiplicityMatrices::mg_at(const LocalSystemId& r, const LocalSystemId& c) const {
    return mg[pos(r)][pos(c)];
}

MaybeInt MultiplicityMatrices::cg_at(const LocalSystemId& r, const LocalSystemId& c) const {
    return cg[pos(r)][pos(c)];
}

MultiplicityMatrices geometric_multiplicity_matrix(const Dataset& ds) {
    const auto& P = ds.poset;
    Order ord(P);
    MultiplicityMatrices mm;
    mm.index = P.local_systems();
    std::size_t n = mm.index.size();
    mm.cg.assign(n, std::vector<MaybeInt>(n));
    mm.mg.assign(n, std::vector<MaybeInt>(n));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& d = mm.index[i];
            const auto& g = mm.index[j];
            MaybeInt p = kl_lookup(ds.kl, ord, d, g);
            if (p) mm.cg[i][j] = sign(P.orbit(d.orbit).dim + P.orbit(g.orbit).dim) * *p;
        }

    for (std::size_t i = 0; i < n; ++i) {
        if (mm.cg[i][i] != 1) throw NotUnitriangularError("cg diagonal is not 1 at " + mm.index[i].str());
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            bool allowed = ord.lt(mm.index[i].orbit, mm.index[j].orbit);
            if (!allowed && mm.cg[i][j].value_or(0) != 0)
                throw NotUnitriangularError("cg has a nonzero entry outside the closure order at " +
                                            mm.index[i].str() + "," + mm.index[j].str());
        }
    }

    // rows ordered so that every strictly larger orbit comes first
    std::vector<std::size_t> above(P.orbits.size(), 0);
    auto leq = closure_matrix(P);
    for (std::size_t a = 0; a < P.orbits.size(); ++a)
        for (std::size_t b = 0; b < P.orbits.size(); ++b) above[a] += leq[a][b];
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return above[P.index(mm.index[x].orbit)] < above[P.index(mm.index[y].orbit)];
    });

    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t r : order) {
            if (r == col) {
                mm.mg[r][col] = 1;
                continue;
            }
            if (!ord.lt(mm.index[r].orbit, mm.index[col].orbit)) {
                mm.mg[r][col] = 0;
                continue;
            }
            long long acc = 0;
            bool known = true;
            for (std::size_t e = 0; e < n && known; ++e) {
                if (e == r) continue;
                const MaybeInt& c = mm.cg[r][e];
                const MaybeInt& m = mm.mg[e][col];
                if ((c && *c == 0) || (m && *m == 0)) continue;
                if (!c || !m) known = false;
                else acc += *c * *m;
            }
            if (known) mm.mg[r][col] = -acc;
        }
    }
    return mm;
}

std::vector<CompositionTerm> composition_terms(const MultiplicityMatrices& mm, const LocalSystemId& probe,
                                               const LocalSystemId& column) {
    std::size_t p = mm.pos(probe), c = mm.pos(column);
    std::vector<CompositionTerm> terms;
    std::vector<std::string> missing;
    for (std::size_t g = 0; g < mm.index.size(); ++g) {
        const MaybeInt& a = mm.cg[p][g];
        const MaybeInt& b = mm.mg[g][c];
        if ((a && *a == 0) || (b && *b == 0)) {
            if (g == p && b) terms.push_back({mm.index[g], a.value_or(0), *b});
            continue;
        }
        if (!a) missing.push_back("cg" + probe.str() + mm.index[g].str());
        if (!b) missing.push_back("mg" + mm.index[g].str() + column.str());
        if (a && b) terms.push_back({mm.index[g], *a, *b});
    }
    if (!missing.empty()) throw InsufficientDataError("insufficient KL data", missing);
    return terms;
}

long long composition_multiplicity(const MultiplicityMatrices& mm, const LocalSystemId& probe,
                                   const LocalSystemId& column) {
    long long s = 0;
    for (const auto& t : composition_terms(mm, probe, column)) s += t.cg * t.mg;
    return s;
}

InverseCheck check_inverse(const MultiplicityMatrices& mm) {
    InverseCheck res;
    std::size_t n = mm.index.size();
    auto product = [&](const auto& A, const auto& B, std::size_t i, std::size_t j) -> MaybeInt {
        long long s = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const MaybeInt& a = A[i][k];
            const MaybeInt& b = B[k][j];
            if ((a && *a == 0) || (b && *b == 0)) continue;
            if (!a || !b) return std::nullopt;
            s += *a * *b;
        }
        return s;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (MaybeInt v : {product(mm.mg, mm.cg, i, j), product(mm.cg, mm.mg, i, j)}) {
                if (!v) continue;
                ++res.checked;
                if (*v != (i == j ? 1 : 0)) ++res.failures;
            }
    return res;
}

}  // namespace charcyc
