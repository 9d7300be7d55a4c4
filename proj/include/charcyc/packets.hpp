#pragma once

#include <string>
#include <vector>

#include "charcyc/dataset.hpp"
#include "charcyc/solver.hpp"

namespace charcyc {

using Catalog = std::vector<Representation>;

enum class PacketKind { Micro, BasicArthur, WeakArthur, AzImage };
std::string to_string(PacketKind k);

struct Packet {
    PacketKind kind = PacketKind::Micro;
    std::string anchor;
    std::vector<std::string> members;        // catalog order
    std::vector<std::string> indeterminate;  // membership depends on a parameter value
};

Packet micro_packet(const SolveReport& sr, const Catalog& catalog, const OrbitId& anchor);

struct BasicPacketReport {
    Packet packet;
    Packet micro;  // micro-packet at hat of the open orbit
    OrbitId open_orbit;
    bool agrees = false;
};
BasicPacketReport basic_arthur_packet(const SolveReport& sr, const Catalog& catalog);

Packet weak_arthur_packet(const Dataset& ds, const Catalog& catalog);

enum class Outcome { Equal, NotEqual, Undetermined };
std::string to_string(Outcome o);

struct WeakUnionReport {
    Packet weak;
    std::vector<OrbitId> anchors;
    std::vector<Packet> micro;
    std::vector<std::string> union_members;
    std::vector<std::string> only_in_weak;
    std::vector<std::string> only_in_union;
    std::vector<std::string> indeterminate;
    Outcome outcome = Outcome::Equal;
};
WeakUnionReport verify_weak_equals_union(const Dataset& ds, const SolveReport& sr, const Catalog& catalog);

struct AnchorCheck {
    OrbitId anchor;
    OrbitId dual;
    Packet image;   // AZ of the micro-packet at anchor
    Packet target;  // micro-packet at hat(anchor)
    std::vector<std::string> symmetric_difference;
    Outcome outcome = Outcome::Equal;
};
std::vector<AnchorCheck> verify_az_micro_compatibility(const SolveReport& sr, const Catalog& catalog,
                                                       const DualityData& d, const std::vector<OrbitId>& anchors);

struct SimplifiedArthurParameter {
    OrbitId langlands_orbit;
    OrbitId arthur_orbit;
    std::string label;
};
std::vector<SimplifiedArthurParameter> simplified_arthur_parameters(const Dataset& ds);
// pairs (hat S, S) missing from the list
std::vector<std::string> missing_transposes(const std::vector<SimplifiedArthurParameter>& params);

struct UnitarityEntry {
    std::string packet;
    std::vector<std::string> non_unitary;
};
std::vector<UnitarityEntry> unitarity_report(const Catalog& catalog, const std::vector<Packet>& packets);

std::string packet_label(const Packet& p);

}  // namespace charcyc
