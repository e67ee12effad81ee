#pragma once

// JSON forms of the library's values and reports. Vertex labels stay
// 1-based; ray and cone indices are 0-based positions in the ray list.

#include <nlohmann/json.hpp>

#include "qmoduli/pipeline.hpp"
#include "qmoduli/quiver.hpp"
#include "qmoduli/sections.hpp"
#include "qmoduli/semi_invariants.hpp"
#include "qmoduli/stability.hpp"
#include "qmoduli/toric.hpp"

namespace qmoduli {

using Json = nlohmann::ordered_json;

/// {"vertices": N, "arrows": [{"src", "dst", "name"}]}.
Json to_json(const Quiver& q);
/// Throws std::invalid_argument on malformed input.
Quiver quiver_from_json(const Json& j);

Json to_json(const ValidationReport& r);

/// Plain integer array; entries outside the 64-bit range become strings.
Json to_json(const Weight& w);
Weight weight_from_json(const Json& j);

Json to_json(const std::vector<Monomial>& basis);
Json to_json(const FlowPolytope& p);

/// {"rank", "rays", "cones"}.
Json to_json(const Fan& f);
Fan fan_from_json(const Json& j);
Json to_json(const FanIsomorphism& iso);

/// Patterns as bit strings in arrow order, grouped by class.
Json to_json(const PatternClassification& c);
Json to_json(const ChamberDecomposition& c);

Json to_json(const SectionsQuiver& sq, const std::vector<PathRelation>& relations);
Json to_json(const ExceptionalityReport& r);

Json to_json(const ModuliResult& r);
Json to_json(const VerifyReport& r);

}  // namespace qmoduli
