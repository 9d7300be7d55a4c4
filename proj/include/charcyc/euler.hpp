#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "charcyc/dataset.hpp"

namespace charcyc {

using MaybeInt = std::optional<long long>;

// P_{target,source}(1): pinned value, else 1 on the diagonal, 0 when forced by
// support, otherwise unknown.
MaybeInt kl_value(const KLEvaluationTable& kl, const OrbitPoset& poset,
                  const LocalSystemId& target, const LocalSystemId& source);

MaybeInt local_euler(const KLEvaluationTable& kl, const OrbitPoset& poset,
                     const LocalSystemId& source, const OrbitId& target);

struct EulerMatrix {
    std::vector<LocalSystemId> rows;  // sources
    std::vector<OrbitId> cols;        // target orbits
    std::vector<std::vector<MaybeInt>> cells;

    MaybeInt at(const LocalSystemId& source, const OrbitId& target) const;
    std::size_t known_count() const;
};

EulerMatrix euler_matrix(const Dataset& ds);

std::vector<Violation> validate_kl(const Dataset& ds);

class InsufficientDataError : public std::runtime_error {
public:
    InsufficientDataError(const std::string& what, std::vector<std::string> missing)
        : std::runtime_error(what), missing(std::move(missing)) {}
    std::vector<std::string> missing;
};

class NotUnitriangularError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// cg(delta, gamma) = (-1)^{d(delta)+d(gamma)} P_{delta,gamma}(1) from the KL table;
// mg is its inverse, obtained by back-substitution.  Cells that cannot be
// computed from pinned data are left empty.
struct MultiplicityMatrices {
    std::vector<LocalSystemId> index;
    std::vector<std::vector<MaybeInt>> mg;
    std::vector<std::vector<MaybeInt>> cg;

    std::size_t pos(const LocalSystemId& ls) const;
    MaybeInt mg_at(const LocalSystemId& row, const LocalSystemId& col) const;
    MaybeInt cg_at(const LocalSystemId& row, const LocalSystemId& col) const;
};

MultiplicityMatrices geometric_multiplicity_matrix(const Dataset& ds);

struct CompositionTerm {
    LocalSystemId gamma;
    long long cg = 0;
    long long mg = 0;
};

// nonzero terms of sum_gamma cg(probe, gamma) * mg(gamma, column)
std::vector<CompositionTerm> composition_terms(const MultiplicityMatrices& mm,
                                               const LocalSystemId& probe,
                                               const LocalSystemId& column);
long long composition_multiplicity(const MultiplicityMatrices& mm, const LocalSystemId& probe,
                                   const LocalSystemId& column);

struct InverseCheck {
    std::size_t checked = 0;   // cells of mg*cg and cg*mg that were computable
    std::size_t failures = 0;
};
InverseCheck check_inverse(const MultiplicityMatrices& mm);

}  // namespace charcyc
