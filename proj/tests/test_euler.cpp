#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

TEST_CASE("local Euler characteristics") {
    Dataset ds = bundled();
    CHECK(local_euler(ds.kl, ds.poset, {"S11", "4"}, "S10") == 1);
    CHECK(local_euler(ds.kl, ds.poset, {"S10", "1"}, "S9") == -2);
    CHECK(local_euler(ds.kl, ds.poset, {"S0", "1"}, "S0") == 1);
    CHECK(local_euler(ds.kl, ds.poset, {"S2", "1^2"}, "S11") == 0);
    CHECK_FALSE(local_euler(ds.kl, ds.poset, {"S11", "4"}, "S3").has_value());
    CHECK_THROWS_AS(local_euler(ds.kl, ds.poset, {"S11", "4"}, "S99"), UnknownIdError);
}

TEST_CASE("euler matrix diagonal and support") {
    Dataset ds = bundled();
    EulerMatrix em = euler_matrix(ds);
    CHECK(em.rows.size() == 20);
    CHECK(em.cols.size() == 12);
    CHECK(em.at({"S11", "4"}, "S11") == 1);
    CHECK(em.at({"S11", "31"}, "S11") == 3);
    CHECK(em.at({"S2", "1^2"}, "S11") == 0);
    for (const auto& ls : em.rows) {
        int sign = ds.poset.orbit(ls.orbit).dim % 2 ? -1 : 1;
        CHECK(em.at(ls, ls.orbit) == sign * ds.poset.rank(ls));
        for (const auto& o : em.cols)
            if (!closure_leq(ds.poset, o, ls.orbit)) CHECK(em.at(ls, o) == 0);
    }
}

TEST_CASE("KL validation") {
    CHECK(validate_kl(bundled()).empty());
    json j = bundled_json();
    j["kl"]["entries"].push_back({{"target", {"S11", "4"}}, {"source", {"S10", "1"}}, {"value", 1}});
    CHECK(has_code(validate_kl(from_json(j)), "kl-support"));
    json k = bundled_json();
    k["kl"]["entries"].push_back({{"target", {"S8", "1"}}, {"source", {"S8", "1"}}, {"value", 2}});
    CHECK(has_code(validate_kl(from_json(k)), "kl-normalization"));
    json n = bundled_json();
    n["kl"]["entries"][0]["value"] = -1;
    CHECK(has_code(validate_kl(from_json(n)), "kl-negative"));
}

TEST_CASE("geometric multiplicity matrix") {
    Dataset ds = bundled();
    MultiplicityMatrices mm = geometric_multiplicity_matrix(ds);
    for (const auto& ls : mm.index) {
        CHECK(mm.mg_at(ls, ls) == 1);
        CHECK(mm.cg_at(ls, ls) == 1);
    }
    auto inv = check_inverse(mm);
    CHECK(inv.checked > 0);
    CHECK(inv.failures == 0);
}

TEST_CASE("composition pairing") {
    Dataset ds = bundled();
    MultiplicityMatrices mm = geometric_multiplicity_matrix(ds);
    LocalSystemId probe{"S4", "1"}, column{"S11", "4"};
    CHECK(composition_multiplicity(mm, probe, column) == 0);
    auto terms = composition_terms(mm, probe, column);
    std::vector<long long> products;
    for (const auto& t : terms)
        if (t.cg * t.mg != 0) products.push_back(t.cg * t.mg);
    CHECK(products == std::vector<long long>{-1, 2, -1});
    CHECK(composition_multiplicity(mm, column, column) == 1);
    CHECK(composition_multiplicity(mm, {"S0", "1"}, {"S0", "1"}) == 1);
}

TEST_CASE("multiplicity matrix on the line") {
    Dataset ds = load_dataset(fixture_path("line.json"));
    MultiplicityMatrices mm = geometric_multiplicity_matrix(ds);
    // P_{(S0,1),(S1,1)} = 1 with opposite parities gives cg = -1, mg = +1
    CHECK(mm.mg_at({"S0", "1"}, {"S1", "1"}) == 1);
    CHECK(mm.cg_at({"S0", "1"}, {"S1", "1"}) == -1);
    CHECK(mm.mg_at({"S0", "1"}, {"S1", "1^2"}) == 0);
    CHECK(check_inverse(mm).failures == 0);
}
