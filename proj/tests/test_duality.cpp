#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace testing_support;

TEST_CASE("hat examples and involution") {
    Dataset ds = bundled();
    CHECK(hat(ds.duality, "S11") == "S0");
    CHECK(hat(ds.duality, "S4") == "S4");
    std::set<OrbitId> fixed;
    for (const auto& o : ds.poset.orbits) {
        CHECK(hat(ds.duality, hat(ds.duality, o.id)) == o.id);
        if (hat(ds.duality, o.id) == o.id) fixed.insert(o.id);
    }
    CHECK(fixed == std::set<OrbitId>{"S4", "S7"});
    CHECK_THROWS_AS(hat(ds.duality, "S12"), UnknownIdError);
}

TEST_CASE("fourier examples and involution") {
    Dataset ds = bundled();
    CHECK(fourier_partner(ds.duality, {"S11", "4"}) == LocalSystemId{"S0", "1"});
    CHECK(fourier_partner(ds.duality, {"S8", "1"}) == LocalSystemId{"S8", "1"});
    CHECK(fourier_partner(ds.duality, {"S11", "1^4"}) == LocalSystemId{"S11", "1^4"});
    std::set<LocalSystemId> fixed;
    for (const auto& ls : ds.poset.local_systems()) {
        CHECK(fourier_partner(ds.duality, fourier_partner(ds.duality, ls)) == ls);
        if (fourier_partner(ds.duality, ls) == ls) fixed.insert(ls);
    }
    CHECK(fixed == std::set<LocalSystemId>{{"S8", "1"}, {"S9", "1^2"}, {"S4", "1"}, {"S11", "1^4"}});
    CHECK_THROWS_AS(fourier_partner(ds.duality, {"S11", "(5)"}), UnknownIdError);
}

TEST_CASE("fourier agrees with the AZ pairing of the catalog") {
    Dataset ds = bundled();
    for (const auto& r : ds.catalog)
        CHECK(fourier_partner(ds.duality, r.param) == ds.representation(r.az).param);
}

TEST_CASE("bundled hat is not order reversing") {
    Dataset ds = bundled();
    CHECK_FALSE(ds.duality.order_reversing);
    auto defects = hat_order_defects(ds);
    CHECK(defects.size() == 10);
    CHECK(validate_duality(ds).empty());
    json j = bundled_json();
    j["duality"]["hat_order_reversing"] = true;
    auto v = validate_duality(from_json(j));
    CHECK(v.size() == 10);
    CHECK(has_code(v, "hat-order"));
}

TEST_CASE("broken hat involution") {
    auto v = validate_duality(from_json(set_hat(bundled_json(), "S6", "S6")));
    CHECK(has_message(v, "hat not involutive (S5 unmatched)"));
    CHECK(has_code(v, "hat-injective"));
}

TEST_CASE("identity hat on a chain is not order reversing") {
    json j = json::parse(std::ifstream(fixture_path("line.json")));
    j["duality"]["hat"] = json::array({json::array({"S0", "S0"}), json::array({"S1", "S1"})});
    auto v = validate_duality(from_json(j));
    CHECK(has_code(v, "hat-order"));
}

TEST_CASE("line dataset duality is clean") {
    Dataset ds = load_dataset(fixture_path("line.json"));
    CHECK(ds.duality.order_reversing);
    CHECK(validate_duality(ds).empty());
    CHECK(hat_order_defects(ds).empty());
}

TEST_CASE("missing fourier partner") {
    json j = bundled_json();
    j["duality"]["fourier"].erase(0);
    CHECK(has_code(validate_duality(from_json(j)), "fourier-missing"));
}
