#pragma once

#include <vector>

#include "charcyc/dataset.hpp"

namespace charcyc {

OrbitId hat(const DualityData& d, const OrbitId& s);
LocalSystemId fourier_partner(const DualityData& d, const LocalSystemId& ls);

// pairs (a, b) where a <= b  <=>  hat(b) <= hat(a) fails; hat must be total
std::vector<std::string> hat_order_defects(const Dataset& ds);

// Involution checks for hat and fourier, order reversal of hat.
std::vector<Violation> validate_duality(const Dataset& ds);

}  // namespace charcyc
