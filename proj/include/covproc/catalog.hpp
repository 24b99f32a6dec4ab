// Built-in group catalog: cyclic groups Z1..Z12, the Klein four-group, S3,
// A4 with the tetrahedral three-dimensional irrep realized on (1,1,1,1)^perp,
// the quaternion group Q8, and the qubit/qutrit Weyl-Heisenberg groups.
// Every system is fully validated on construction and cached.
#pragma once

#include <string>
#include <vector>

#include "covproc/group.hpp"

namespace covproc {

// Throws on unknown name.
const GroupSystem& catalog_group(const std::string& name);
std::vector<std::string> catalog_names();
bool catalog_has(const std::string& name);

// Label of the default irrep used by the CLI when -u/-v are omitted:
// the first irrep of maximal dimension in table order.
std::string default_irrep_label(const GroupSystem& sys);

}  // namespace covproc
