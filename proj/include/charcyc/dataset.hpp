#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "charcyc/affine.hpp"

namespace charcyc {

using OrbitId = std::string;

struct Irrep {
    std::string label;
    int dim = 1;
};

struct ComponentGroup {
    std::string name;
    std::vector<Irrep> irreps;  // irreps.front() is the trivial representation
};

struct Orbit {
    OrbitId id;
    int dim = 0;
    ComponentGroup group;
};

struct LocalSystemId {
    OrbitId orbit;
    std::string irrep;
    auto operator<=>(const LocalSystemId&) const = default;
    std::string str() const { return "(" + orbit + "," + irrep + ")"; }
};

class OrbitPoset {
public:
    std::vector<Orbit> orbits;
    std::vector<std::pair<OrbitId, OrbitId>> covers;  // (lower, upper)
    int ambient_dim = 0;

    bool has(const OrbitId& id) const;
    std::size_t index(const OrbitId& id) const;  // throws UnknownIdError
    const Orbit& orbit(const OrbitId& id) const;
    const Irrep* irrep(const LocalSystemId& ls) const;
    int rank(const LocalSystemId& ls) const;  // dimension of the irrep

    // every local system, orbit by orbit in dataset order
    std::vector<LocalSystemId> local_systems() const;

    // orbit ids by dim descending; equal dims in reverse dataset order
    std::vector<OrbitId> top_down() const;
};

class UnknownIdError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// reflexive-transitive hull of the covers, indexed like poset.orbits
std::vector<std::vector<bool>> closure_matrix(const OrbitPoset& poset);
bool closure_leq(const OrbitPoset& poset, const OrbitId& a, const OrbitId& b);

struct DualityData {
    std::map<OrbitId, OrbitId> hat;
    std::map<LocalSystemId, LocalSystemId> fourier;
    // whether validation demands a <= b  <=>  hat(b) <= hat(a)
    bool order_reversing = true;
};

struct KLEvaluationTable {
    // P_{target,source}(1) for pinned pairs, keyed (target, source)
    std::map<std::pair<LocalSystemId, LocalSystemId>, long long> entries;
    // sum over local systems L'' on the target orbit of dim(L'') * P_{(orbit,L''),source}(1),
    // used where the per-irrep split is not pinned
    std::map<std::pair<OrbitId, LocalSystemId>, long long> orbit_sums;
    std::map<std::pair<LocalSystemId, LocalSystemId>, std::string> entry_provenance;
    std::map<std::pair<OrbitId, LocalSystemId>, std::string> sum_provenance;
};

struct Representation {
    std::string id;
    LocalSystemId param;
    std::string az;
    bool iwahori_spherical = true;
    bool unitary = true;
};

struct ArthurTypeEntry {
    std::string label;
    OrbitId orbit;
};

struct Localization {
    LocalSystemId source;  // local system whose direct image is localized (trivial, open orbit)
    LocalSystemId target;  // local system whose CC equals that of the localization
};

struct SolverOptions {
    bool diagonal_rule = true;
    bool leading_rule = true;
    std::map<std::pair<OrbitId, OrbitId>, std::string> parameter_names;
};

struct Dataset {
    int schema_version = 1;
    std::string name;
    std::vector<std::string> notes;
    OrbitPoset poset;
    DualityData duality;
    KLEvaluationTable kl;
    std::vector<Representation> catalog;
    std::vector<OrbitId> special_piece;
    std::vector<ArthurTypeEntry> arthur_type;
    std::vector<OrbitId> non_dense_conormal;
    std::optional<Localization> localization;
    std::optional<std::vector<Rational>> b_function;
    SolverOptions solver;

    const Representation& representation(const std::string& id) const;
    const Representation* representation_with_param(const LocalSystemId& ls) const;
};

class DatasetError : public std::runtime_error {
public:
    enum class Kind { Parse, Schema };
    DatasetError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

Dataset load_dataset(const std::string& path);
Dataset parse_dataset(const std::string& text);

struct Violation {
    std::string code;     // stable machine tag, e.g. "cover-dim"
    std::string message;  // human text
    std::string subject;  // the offending orbit / pair / id
};

std::vector<Violation> validate_dataset(const Dataset& ds);

}  // namespace charcyc
