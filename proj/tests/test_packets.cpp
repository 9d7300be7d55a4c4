#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace testing_support;

using Ids = std::vector<std::string>;

TEST_CASE("micro-packets of the bundled case") {
    const auto& sr = bundled_pipeline().report;
    Dataset ds = bundled();
    std::map<OrbitId, Ids> quoted = {
        {"S0", {"X5", "X13", "X17", "X19", "X20"}},
        {"S1", {"X5", "X9", "X13", "X15", "X17", "X19"}},
        {"S2", {"X5", "X9", "X11", "X13", "X17", "X18"}},
        {"S3", {"X5", "X8", "X9", "X13", "X15"}},
        {"S7", {"X5", "X7", "X8", "X9", "X11"}},
        {"S11", {"X1", "X2", "X3", "X4", "X5"}},
    };
    for (const auto& [anchor, members] : quoted) {
        CAPTURE(anchor);
        Packet p = micro_packet(sr, ds.catalog, anchor);
        CHECK(p.kind == PacketKind::Micro);
        CHECK(p.members == members);
        CHECK(p.indeterminate.empty());
    }
}

TEST_CASE("parameter-dependent membership is surfaced") {
    const auto& sr = bundled_pipeline().report;
    Dataset ds = bundled();
    Packet p = micro_packet(sr, ds.catalog, "S4");
    CHECK(p.indeterminate == Ids{"X8"});
    CHECK(std::find(p.members.begin(), p.members.end(), "X8") == p.members.end());
    CHECK(std::find(p.members.begin(), p.members.end(), "X9") != p.members.end());
}

TEST_CASE("basic packet") {
    const auto& sr = bundled_pipeline().report;
    Dataset ds = bundled();
    auto b = basic_arthur_packet(sr, ds.catalog);
    CHECK(b.open_orbit == "S11");
    CHECK(b.packet.members == Ids{"X5", "X13", "X17", "X19", "X20"});
    CHECK(b.micro.anchor == "S0");
    CHECK(b.agrees);
}

TEST_CASE("weak packet") {
    Dataset ds = bundled();
    CHECK(weak_arthur_packet(ds, ds.catalog).members ==
          Ids{"X5", "X7", "X8", "X9", "X11", "X13", "X15", "X17", "X18", "X19", "X20"});
    Dataset open = ds;
    open.special_piece = {"S11"};
    CHECK(weak_arthur_packet(open, ds.catalog).members ==
          basic_arthur_packet(bundled_pipeline().report, ds.catalog).packet.members);
    Dataset all = ds;
    all.special_piece.clear();
    for (const auto& o : ds.poset.orbits) all.special_piece.push_back(o.id);
    CHECK(weak_arthur_packet(all, ds.catalog).members.size() == 20);
    Dataset none = ds;
    none.special_piece.clear();
    CHECK_THROWS(weak_arthur_packet(none, ds.catalog));
}

TEST_CASE("weak packet equals the union of micro-packets") {
    Dataset ds = bundled();
    auto w = verify_weak_equals_union(ds, bundled_pipeline().report, ds.catalog);
    CHECK(w.outcome == Outcome::Equal);
    CHECK(w.anchors == Ids{"S0", "S1", "S2", "S3", "S7"});
    CHECK(w.weak.members.size() == 11);
    CHECK(w.union_members == w.weak.members);
    CHECK(w.indeterminate.empty());
}

TEST_CASE("AZ maps micro-packets onto their duals") {
    Dataset ds = bundled();
    const auto& sr = bundled_pipeline().report;
    auto checks = verify_az_micro_compatibility(sr, ds.catalog, ds.duality, {"S0", "S1", "S2", "S3", "S7"});
    REQUIRE(checks.size() == 5);
    for (const auto& c : checks) {
        CAPTURE(c.anchor);
        CHECK(c.outcome == Outcome::Equal);
        CHECK(c.dual == hat(ds.duality, c.anchor));
    }
    CHECK(checks[1].image.members == Ids{"X2", "X3", "X4", "X5", "X6", "X7"});
    CHECK(checks[4].dual == "S7");
}

TEST_CASE("membership is symmetric under AZ for parameter-free entries") {
    Dataset ds = bundled();
    const auto& sr = bundled_pipeline().report;
    for (const auto& o : ds.poset.orbits) {
        Packet here = micro_packet(sr, ds.catalog, o.id);
        Packet there = micro_packet(sr, ds.catalog, hat(ds.duality, o.id));
        for (const auto& x : here.members) {
            const auto& az = ds.representation(x).az;
            CHECK(std::find(there.members.begin(), there.members.end(), az) != there.members.end());
        }
        CHECK(here.indeterminate.size() == there.indeterminate.size());
    }
}

TEST_CASE("swapped AZ pair breaks verification") {
    Dataset mutated = from_json(swap_az(bundled_json(), "X8", "X9"));
    const auto& sr = bundled_pipeline().report;
    auto checks = verify_az_micro_compatibility(sr, mutated.catalog, mutated.duality, {"S0", "S1", "S2", "S3", "S7"});
    bool failed = false;
    for (const auto& c : checks)
        if (c.outcome == Outcome::NotEqual) {
            failed = true;
            CHECK(c.symmetric_difference.size() == 2);
        }
    CHECK(failed);
}

TEST_CASE("simplified Arthur parameters") {
    Dataset ds = bundled();
    auto params = simplified_arthur_parameters(ds);
    CHECK(params.size() == 10);
    for (const auto& p : params) CHECK(p.arthur_orbit == hat(ds.duality, p.langlands_orbit));
    CHECK(params.front().langlands_orbit == "S0");
    CHECK(params.front().arthur_orbit == "S11");
    CHECK(missing_transposes(params).empty());
    Dataset empty = ds;
    empty.arthur_type.clear();
    CHECK(simplified_arthur_parameters(empty).empty());
}

TEST_CASE("unitarity") {
    Dataset ds = bundled();
    const auto& sr = bundled_pipeline().report;
    std::vector<Packet> five;
    for (const auto& a : {"S0", "S1", "S2", "S3", "S7"}) five.push_back(micro_packet(sr, ds.catalog, a));
    for (const auto& e : unitarity_report(ds.catalog, five)) CHECK(e.non_unitary.empty());
    Packet whole{PacketKind::Micro, "catalog", {}, {}};
    for (const auto& r : ds.catalog) whole.members.push_back(r.id);
    auto u = unitarity_report(ds.catalog, {whole});
    REQUIRE(u.size() == 1);
    CHECK(u[0].non_unitary == Ids{"X16"});
    auto none = unitarity_report(ds.catalog, {Packet{}});
    for (const auto& e : none) CHECK(e.non_unitary.empty());
}

TEST_CASE("toy datasets") {
    Dataset point = load_dataset(fixture_path("point.json"));
    auto pp = run_pipeline(point);
    auto b = basic_arthur_packet(pp.report, point.catalog);
    CHECK(b.packet.members == Ids{"Y1"});
    CHECK(verify_weak_equals_union(point, pp.report, point.catalog).outcome == Outcome::Equal);
    auto az = verify_az_micro_compatibility(pp.report, point.catalog, point.duality, {"S0"});
    CHECK(az.at(0).outcome == Outcome::Equal);

    Dataset line = load_dataset(fixture_path("line.json"));
    auto lp = run_pipeline(line);
    CHECK(micro_packet(lp.report, line.catalog, "S0").members == Ids{"Y2", "Y3"});
    CHECK(verify_weak_equals_union(line, lp.report, line.catalog).outcome == Outcome::Equal);
}
