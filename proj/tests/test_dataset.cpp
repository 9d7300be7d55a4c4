#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <deque>
#include <set>

#include "support.hpp"

using namespace testing_support;

TEST_CASE("bundled dataset shape") {
    Dataset ds = bundled();
    CHECK(ds.poset.orbits.size() == 12);
    CHECK(ds.poset.local_systems().size() == 20);
    CHECK(ds.catalog.size() == 20);
    std::multiset<int> dims;
    for (const auto& o : ds.poset.orbits) dims.insert(o.dim);
    CHECK(dims == std::multiset<int>{0, 4, 6, 7, 7, 8, 8, 9, 10, 10, 11, 12});
    int ones = 0, twos = 0, fives = 0;
    for (const auto& o : ds.poset.orbits) {
        auto n = o.group.irreps.size();
        ones += n == 1;
        twos += n == 2;
        fives += n == 5;
    }
    CHECK(ones == 7);
    CHECK(twos == 4);
    CHECK(fives == 1);
    CHECK(ds.poset.rank({"S11", "31"}) == 3);
    CHECK(ds.poset.rank({"S11", "22"}) == 2);
    CHECK(ds.special_piece == std::vector<OrbitId>{"S11", "S10", "S9", "S8", "S7"});
}

TEST_CASE("catalog covers every local system once") {
    Dataset ds = bundled();
    std::set<LocalSystemId> seen;
    for (const auto& r : ds.catalog) CHECK(seen.insert(r.param).second);
    auto all = ds.poset.local_systems();
    CHECK(seen == std::set<LocalSystemId>(all.begin(), all.end()));
    CHECK(ds.representation("X16").param == LocalSystemId{"S4", "1"});
    CHECK_FALSE(ds.representation("X16").unitary);
    CHECK(ds.representation_with_param({"S11", "1^4"})->id == "X5");
}

// Independent hull: breadth-first search over the cover list.
static bool bfs_leq(const json& j, const std::string& a, const std::string& b) {
    std::deque<std::string> q{a};
    std::set<std::string> seen{a};
    while (!q.empty()) {
        auto x = q.front();
        q.pop_front();
        if (x == b) return true;
        for (const auto& c : j["covers"])
            if (c[0] == x && seen.insert(c[1].get<std::string>()).second) q.push_back(c[1]);
    }
    return false;
}

TEST_CASE("closure order agrees with a search over covers and is a partial order") {
    json j = bundled_json();
    Dataset ds = from_json(j);
    std::vector<std::string> ids;
    for (const auto& o : ds.poset.orbits) ids.push_back(o.id);
    for (const auto& a : ids)
        for (const auto& b : ids) {
            CHECK(closure_leq(ds.poset, a, b) == bfs_leq(j, a, b));
            if (a != b && closure_leq(ds.poset, a, b)) CHECK_FALSE(closure_leq(ds.poset, b, a));
            for (const auto& c : ids)
                if (closure_leq(ds.poset, a, b) && closure_leq(ds.poset, b, c)) CHECK(closure_leq(ds.poset, a, c));
        }
    for (const auto& a : ids) CHECK(closure_leq(ds.poset, a, a));
}

TEST_CASE("closure order examples") {
    Dataset ds = bundled();
    CHECK(closure_leq(ds.poset, "S3", "S8"));
    CHECK_FALSE(closure_leq(ds.poset, "S6", "S9"));
    CHECK(closure_leq(ds.poset, "S0", "S11"));
    CHECK_FALSE(closure_leq(ds.poset, "S3", "S4"));
    CHECK_THROWS_AS(closure_leq(ds.poset, "S3", "S99"), UnknownIdError);
}

TEST_CASE("top-down order is by dimension") {
    Dataset ds = bundled();
    auto td = ds.poset.top_down();
    REQUIRE(td.size() == 12);
    CHECK(td.front() == "S11");
    CHECK(td.back() == "S0");
    for (std::size_t i = 1; i < td.size(); ++i)
        CHECK(ds.poset.orbit(td[i - 1]).dim >= ds.poset.orbit(td[i]).dim);
}

TEST_CASE("degenerate point dataset") {
    Dataset ds = load_dataset(fixture_path("point.json"));
    CHECK(ds.poset.orbits.size() == 1);
    CHECK(ds.poset.local_systems().size() == 1);
    CHECK(validate_dataset(ds).empty());
}

TEST_CASE("load errors") {
    SUBCASE("unknown irrep label") {
        try {
            load_dataset(fixture_path("bad_irrep.json"));
            FAIL("expected a schema error");
        } catch (const DatasetError& e) {
            CHECK(e.kind == DatasetError::Kind::Schema);
            CHECK(std::string(e.what()).find("(5)") != std::string::npos);
        }
    }
    SUBCASE("malformed text") {
        try {
            parse_dataset("{\"orbits\": [");
            FAIL("expected a parse error");
        } catch (const DatasetError& e) {
            CHECK(e.kind == DatasetError::Kind::Parse);
        }
    }
    SUBCASE("missing field") {
        json j = bundled_json();
        j.erase("covers");
        CHECK_THROWS_AS(from_json(j), DatasetError);
    }
    SUBCASE("unknown orbit reference") {
        json j = bundled_json();
        j["covers"].push_back(json::array({"S3", "S42"}));
        CHECK_THROWS_AS(from_json(j), DatasetError);
    }
    SUBCASE("unknown AZ partner") {
        CHECK_THROWS_AS(from_json(set_az(bundled_json(), "X1", "X99")), DatasetError);
    }
    SUBCASE("schema version") {
        json j = bundled_json();
        j["schema_version"] = 2;
        CHECK_THROWS_AS(from_json(j), DatasetError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_dataset(fixture_path("no-such-file.json")), DatasetError);
    }
}

TEST_CASE("bundled dataset validates and validation is repeatable") {
    Dataset ds = bundled();
    auto v1 = validate_dataset(ds);
    auto v2 = validate_dataset(ds);
    CHECK(v1.empty());
    CHECK(v2.size() == v1.size());
}

TEST_CASE("reversed cover is flagged") {
    auto v = validate_dataset(from_json(reverse_cover(bundled_json(), "S10", "S11")));
    CHECK(has_message(v, "dim decreases along cover"));
    bool localized = false;
    for (const auto& x : v)
        if (x.code == "cover-dim") localized = x.subject.find("S11") != std::string::npos;
    CHECK(localized);
}

TEST_CASE("broken AZ involution is flagged") {
    auto v = validate_dataset(from_json(set_az(bundled_json(), "X1", "X19")));
    CHECK(has_message(v, "az not involutive / not bijective"));
}

TEST_CASE("swapped AZ pair is flagged") {
    auto v = validate_dataset(from_json(swap_az(bundled_json(), "X8", "X9")));
    CHECK(has_code(v, "az-involution"));
    CHECK(has_code(v, "az-fourier"));
}

TEST_CASE("cyclic covers") {
    Dataset ds = load_dataset(fixture_path("cyclic_covers.json"));
    CHECK(has_message(validate_dataset(ds), "cover graph cyclic"));
}

TEST_CASE("local system used twice in the catalog") {
    json j = bundled_json();
    j["catalog"][1]["param"] = j["catalog"][0]["param"];
    auto v = validate_dataset(from_json(j));
    CHECK(has_message(v, "local system parametrizes several representations"));
    CHECK(has_message(v, "local system has no representation"));
}
