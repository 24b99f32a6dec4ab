// JSON formats for the external interfaces.
//
// Matrix format (shared by Choi dumps and group specs): row-major [re, im]
// pairs, with explicit dimensions:
//   {"rows": r, "cols": c, "data": [[re, im], ...]}
//
// Group-spec format:
//   {"schema_version": 1, "name": ..., "order": n,
//    "mul": [n*n integers, row-major],
//    "irreps": [{"label": ..., "dim": d,
//                "matrices": [per element: [d*d [re, im] pairs, row-major]]}]}
#pragma once

#include <string>

#include <json.hpp>

#include "covproc/group.hpp"
#include "covproc/matrix.hpp"

namespace covproc {

using json = nlohmann::ordered_json;

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

json group_to_json(const GroupSystem& sys);
// Fully validated on load (group axioms, unitarity, homomorphism,
// sum of squared dimensions, character orthonormality).
GroupSystem group_from_json(const json& j, double tol = kDefaultTol);
GroupSystem load_group_file(const std::string& path, double tol = kDefaultTol);

}  // namespace covproc
