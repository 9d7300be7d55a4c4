#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "charcyc/duality.hpp"
#include "charcyc/report.hpp"

namespace testing_support {

using namespace charcyc;
using json = nlohmann::ordered_json;

inline std::string bundled_path() { return std::string(CHARCYC_DATA_DIR) + "/f4a3.json"; }
inline std::string fixture_path(const std::string& name) { return std::string(CHARCYC_TEST_DATA_DIR) + "/" + name; }

inline json bundled_json() {
    std::ifstream in(bundled_path());
    return json::parse(in);
}

inline Dataset from_json(const json& j) { return parse_dataset(j.dump()); }

inline Dataset bundled() { return load_dataset(bundled_path()); }

inline const Pipeline& bundled_pipeline() {
    static const Pipeline p = run_pipeline(bundled());
    return p;
}

inline bool has_code(const std::vector<Violation>& v, const std::string& code) {
    for (const auto& x : v)
        if (x.code == code) return true;
    return false;
}

inline bool has_message(const std::vector<Violation>& v, const std::string& text) {
    for (const auto& x : v)
        if (x.message.find(text) != std::string::npos) return true;
    return false;
}

// the three documented mutations
inline json reverse_cover(json j, const std::string& lo, const std::string& hi) {
    for (auto& c : j["covers"])
        if (c[0] == lo && c[1] == hi) c = json::array({hi, lo});
    return j;
}

inline json set_hat(json j, const std::string& from, const std::string& to) {
    for (auto& h : j["duality"]["hat"])
        if (h[0] == from) h[1] = to;
    return j;
}

inline json set_az(json j, const std::string& id, const std::string& az) {
    for (auto& r : j["catalog"])
        if (r["id"] == id) r["az"] = az;
    return j;
}

inline json swap_az(json j, const std::string& a, const std::string& b) {
    std::string pa, pb;
    for (auto& r : j["catalog"]) {
        if (r["id"] == a) pa = r["az"];
        if (r["id"] == b) pb = r["az"];
    }
    return set_az(set_az(j, a, pb), b, pa);
}

inline AffineInt c_plus(long long k) { return AffineInt::param("c") + AffineInt(k); }

// Characteristic cycles of the bundled case as quoted, keyed by source; each
// value lists (orbit, multiplicity) with c the free parameter.
using GoldenRow = std::vector<std::pair<OrbitId, AffineInt>>;
inline const std::vector<std::pair<LocalSystemId, GoldenRow>>& golden_cc() {
    static const AffineInt c = AffineInt::param("c");
    static const std::vector<std::pair<LocalSystemId, GoldenRow>> table = {
        {{"S0", "1"}, {{"S0", 1}}},
        {{"S1", "1"}, {{"S1", 1}, {"S0", 3}}},
        {{"S2", "1"}, {{"S2", 1}, {"S1", 1}, {"S0", 2}}},
        {{"S2", "1^2"}, {{"S2", 1}}},
        {{"S3", "1"}, {{"S3", 1}, {"S1", 1}}},
        {{"S4", "1"}, {{"S4", 1}}},
        {{"S5", "1"}, {{"S5", 1}}},
        {{"S5", "1^2"}, {{"S5", 1}, {"S3", 1}, {"S2", 1}, {"S1", 2}, {"S0", 3}}},
        {{"S6", "1"}, {{"S6", 1}}},
        {{"S7", "1"}, {{"S7", 1}, {"S4", c_plus(1)}, {"S3", 1}, {"S2", 2}, {"S1", 1}}},
        {{"S8", "1"}, {{"S8", 1}, {"S7", 1}, {"S6", 2}, {"S5", 2}, {"S4", c_plus(-2)}, {"S3", 1}}},
        {{"S9", "1"}, {{"S9", 1}}},
        {{"S9", "1^2"}, {{"S9", 1}, {"S7", 1}, {"S4", c}, {"S2", 1}}},
        {{"S10", "1"}, {{"S10", 1}, {"S8", 1}}},
        {{"S10", "1^2"}, {{"S10", 1}, {"S9", 2}, {"S8", 1}, {"S7", 1}, {"S4", c_plus(1)}}},
        {{"S11", "4"}, {{"S11", 1}}},
        {{"S11", "31"}, {{"S11", 3}, {"S10", 1}}},
        {{"S11", "22"}, {{"S11", 2}, {"S10", 1}, {"S9", 1}}},
        {{"S11", "211"}, {{"S11", 3}, {"S10", 2}, {"S9", 1}, {"S8", 1}, {"S6", 1}}},
    };
    return table;
}

inline CharacteristicCycle golden_cycle(const LocalSystemId& ls) {
    for (const auto& [src, row] : golden_cc())
        if (src == ls) {
            CharacteristicCycle cc{src, {}};
            for (const auto& [o, m] : row) cc.mult[o] = m;
            return cc;
        }
    throw std::out_of_range(ls.str());
}

inline std::vector<CharacteristicCycle> golden_table() {
    std::vector<CharacteristicCycle> out;
    for (const auto& [src, row] : golden_cc()) out.push_back(golden_cycle(src));
    return out;
}

}  // namespace testing_support
