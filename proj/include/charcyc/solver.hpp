#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "charcyc/affine.hpp"
#include "charcyc/dataset.hpp"
#include "charcyc/euler.hpp"

namespace charcyc {

using OrbitPair = std::pair<OrbitId, OrbitId>;

// Orbit data the solver needs after the dataset itself is gone.
struct SolverContext {
    std::vector<Orbit> orbits;  // dataset order
    std::vector<std::vector<bool>> leq;
    std::map<OrbitId, OrbitId> hat;
    std::map<LocalSystemId, LocalSystemId> fourier;
    EulerMatrix euler;
    SolverOptions options;

    std::size_t index(const OrbitId& id) const;
    const Orbit& orbit(const OrbitId& id) const;
    bool le(const OrbitId& a, const OrbitId& b) const { return leq[index(a)][index(b)]; }
    int rank(const LocalSystemId& ls) const;
    std::vector<LocalSystemId> local_systems() const;
    std::vector<OrbitId> top_down() const;  // dim descending, then label
};

struct Equation {
    // 0 = constant + sum coeff * unknown
    Rational constant = 0;
    std::map<std::size_t, Rational> terms;  // unknown index -> coefficient
    std::string rule;                       // vanishing | leading | fourier | diagonal
    std::string origin;                     // which multiplicity produced it
    std::string text;                       // rendered form
};

struct SkippedEquation {
    std::string rule;
    std::string origin;
    std::vector<std::string> missing;  // unpinned local Euler cells
};

struct ConstraintSystem {
    SolverContext ctx;
    std::vector<OrbitPair> unknowns;
    std::vector<Equation> equations;
    std::vector<SkippedEquation> skipped;

    std::optional<std::size_t> unknown_index(const OrbitId& a, const OrbitId& b) const;
    bool has_equation(const std::string& text) const;
};

std::string render_unknown(const OrbitPair& u);

ConstraintSystem build_constraints(const Dataset& ds, const EulerMatrix& em);

struct CMatrix {
    std::vector<OrbitId> orbits;
    std::vector<std::vector<bool>> leq;
    std::map<OrbitPair, AffineInt> entries;  // every comparable pair that is determined
    std::set<OrbitPair> residual;            // comparable pairs no equation touched

    // zero for incomparable pairs, nullopt for residual ones
    std::optional<AffineInt> at(const OrbitId& a, const OrbitId& b) const;
};

struct CharacteristicCycle {
    LocalSystemId source;
    std::map<OrbitId, AffineInt> mult;  // nonzero multiplicities only

    AffineInt at(const OrbitId& s) const;
    bool operator==(const CharacteristicCycle& o) const { return source == o.source && mult == o.mult; }
};

struct IncompleteCycle {
    LocalSystemId source;
    std::map<OrbitId, AffineInt> known;
    std::vector<OrbitId> unknown;
};

struct ParameterBound {
    std::string parameter;
    std::optional<BigInt> lower;
    std::optional<BigInt> upper;
};

struct BoundsReport {
    std::vector<ParameterBound> bounds;
    std::vector<std::string> unsolved;  // multiplicities affine in several parameters
    bool feasible = true;
};

struct LocalizationResult;

struct SolveReport {
    SolverContext ctx;
    CMatrix cmatrix;
    std::vector<std::string> free_parameters;
    std::map<std::string, OrbitPair> parameter_origin;
    BoundsReport parameter_bounds;
    std::vector<OrbitPair> residual_unknowns;
    std::vector<CharacteristicCycle> cc_table;
    std::vector<IncompleteCycle> incomplete;
    std::vector<std::string> fourier_mismatches;
    std::size_t equation_count = 0;
    std::size_t skipped_count = 0;
    std::size_t rank = 0;
    // cycles appended from outside the linear system (localization recipe)
    std::vector<std::string> cc_notes;

    const CharacteristicCycle* find_cc(const LocalSystemId& ls) const;
};

class InconsistentSystemError : public std::runtime_error {
public:
    InconsistentSystemError(const std::string& what, std::vector<std::string> core)
        : std::runtime_error(what), conflicting(std::move(core)) {}
    std::vector<std::string> conflicting;
};

class ParameterError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SolveReport solve(const ConstraintSystem& cs);

CharacteristicCycle characteristic_cycle(const SolveReport& sr, const LocalSystemId& ls);

// Univariate positivity bounds over the CC table; throws ParameterError if a
// multiplicity involves two or more parameters.
std::vector<ParameterBound> parameter_bounds(const SolveReport& sr);
BoundsReport parameter_bounds_report(const std::vector<CharacteristicCycle>& table);

// chi_loc = C^{-1} chi_mic, cycle by cycle.  Cells whose value still depends
// on a parameter, or need a residual C entry, stay empty and are listed.
struct Reconstruction {
    EulerMatrix euler;
    std::vector<std::string> not_cancelled;
};
Reconstruction reconstruct_local_euler(const SolveReport& sr, const std::vector<CharacteristicCycle>& table);
// single cell; throws ParameterError("parameter does not cancel")
long long reconstruct_local_euler_entry(const SolveReport& sr, const CharacteristicCycle& cc, const OrbitId& target);

bool check_halfinteger_roots(const std::vector<Rational>& roots);

struct LocalizationResult {
    CharacteristicCycle ansatz;      // contains the symbol for the undetermined multiplicity
    std::map<LocalSystemId, AffineInt> composition;  // composition series of the localized module
    std::vector<CompositionTerm> check_terms;         // KL side: cg(probe, .) * mg(., source)
    long long check_value = 0;
    AffineInt series_check;           // same pairing against the composition series
    std::string symbol;               // "a"
    AffineInt solved_symbol;          // value forced on the symbol
    LocalSystemId probe;
    CharacteristicCycle cc;           // final cycle of the localization target
};

class LocalizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

LocalizationResult special_cc_localization(const Dataset& ds, const SolveReport& sr);

// Appends the localization cycle to the table (no-op if already present).
SolveReport with_localization(const SolveReport& sr, const LocalizationResult& loc);

// euler_matrix -> build_constraints -> solve, then the localization recipe when
// the dataset declares one and it succeeds.
struct Pipeline {
    ConstraintSystem system;
    SolveReport report;
    std::optional<LocalizationResult> localization;
    std::optional<std::string> localization_error;
};
Pipeline run_pipeline(const Dataset& ds);

}  // namespace charcyc
