#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "charcyc/dataset.hpp"
#include "charcyc/packets.hpp"
#include "charcyc/solver.hpp"

namespace charcyc {

using ojson = nlohmann::ordered_json;

ojson to_json(const LocalSystemId& ls);
ojson to_json(const AffineInt& a);
ojson to_json(const std::vector<Violation>& v);
ojson to_json(const ConstraintSystem& cs);
ojson to_json(const CharacteristicCycle& cc, const SolverContext& ctx);
ojson to_json(const SolveReport& sr);
ojson to_json(const Packet& p);
ojson to_json(const WeakUnionReport& r);
ojson to_json(const std::vector<AnchorCheck>& checks);
ojson to_json(const LocalizationResult& loc);
ojson to_json(const std::vector<SimplifiedArthurParameter>& params);
ojson to_json(const std::vector<UnitarityEntry>& u);
ojson to_json(const EulerMatrix& em);

// "CC(IC(S8,1)) = [S8] + [S7] + 2[S6] + 2[S5] + (c - 2)[S4] + [S3]"
std::string cc_line(const CharacteristicCycle& cc, const SolverContext& ctx);
std::string packet_line(const Packet& p);
std::string join(const std::vector<std::string>& v, const std::string& sep = ", ");

}  // namespace charcyc
