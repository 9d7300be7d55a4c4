#include "charcyc/duality.hpp"

namespace charcyc {

OrbitId hat(const DualityData& d, const OrbitId& s) {
    auto it = d.hat.find(s);
    if (it == d.hat.end()) throw UnknownIdError("hat undefined on orbit " + s);
    return it->second;
}

LocalSystemId fourier_partner(const DualityData& d, const LocalSystemId& ls) {
    auto it = d.fourier.find(ls);
    if (it == d.fourier.end()) throw UnknownIdError("fourier undefined on " + ls.str());
    return it->second;
}

std::vector<std::string> hat_order_defects(const Dataset& ds) {
    const auto& P = ds.poset;
    const auto& d = ds.duality;
    std::vector<std::string> out;
    auto leq = closure_matrix(P);
    for (std::size_t i = 0; i < P.orbits.size(); ++i)
        for (std::size_t j = 0; j < P.orbits.size(); ++j) {
            const auto& a = P.orbits[i].id;
            const auto& b = P.orbits[j].id;
            bool rev = leq[P.index(hat(d, b))][P.index(hat(d, a))];
            if (leq[i][j] != rev)
                out.push_back(a + (leq[i][j] ? "<=" : "!<=") + b + " but hat(" + b + ")" + (rev ? "<=" : "!<=") +
                              "hat(" + a + ")");
        }
    return out;
}

std::vector<Violation> validate_duality(const Dataset& ds) {
    std::vector<Violation> out;
    const auto& P = ds.poset;
    const auto& d = ds.duality;

    bool total = true;
    for (const auto& o : P.orbits)
        if (!d.hat.count(o.id)) {
            out.push_back({"hat-missing", "hat undefined", o.id});
            total = false;
        }
    std::map<OrbitId, std::vector<OrbitId>> pre;
    for (const auto& [a, b] : d.hat) pre[b].push_back(a);
    for (const auto& [b, as] : pre)
        if (as.size() > 1) {
            std::string who;
            for (const auto& a : as) who += (who.empty() ? "" : ",") + a;
            out.push_back({"hat-injective", "hat not injective (" + who + " all map to " + b + ")", b});
        }
    for (const auto& o : P.orbits) {
        auto it = d.hat.find(o.id);
        if (it == d.hat.end()) continue;
        auto back = d.hat.find(it->second);
        if (back == d.hat.end() || back->second != o.id)
            out.push_back({"hat-involution", "hat not involutive (" + o.id + " unmatched)", o.id});
    }

    if (total && d.order_reversing)
        for (auto& msg : hat_order_defects(ds)) out.push_back({"hat-order", "order-reversal broken", msg});

    for (const auto& ls : P.local_systems()) {
        auto it = d.fourier.find(ls);
        if (it == d.fourier.end()) {
            out.push_back({"fourier-missing", "fourier undefined", ls.str()});
            continue;
        }
        auto back = d.fourier.find(it->second);
        if (back == d.fourier.end() || back->second != ls)
            out.push_back({"fourier-involution", "fourier not involutive (" + ls.str() + " unmatched)", ls.str()});
    }
    return out;
}

}  // namespace charcyc
