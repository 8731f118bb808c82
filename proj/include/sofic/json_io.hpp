#pragma once
//
// JSON forms of groups, elements and group ring elements.
//   group:   {"type": "free", "rank": r} | {"type": "zpow", "dim": k}
//            | {"type": "finite", "table": [[...]], "identity": i}
//            | {"type": "finite", "name": "D4"}   (catalogue groups of order <= 24)
//   element: free "a b^-1 a", zpow [1, -2] (or a bare integer when k = 1), finite index
//   ring:    [{"g": element, "re": x, "im": y}, ...]
//

#include <json.hpp>

#include "sofic/group_ring.hpp"

namespace sofic::json_io {

using nlohmann::json;

GroupSpec group_from_json(const json& j);
json group_to_json(const GroupSpec& group);

GroupElement element_from_json(const GroupSpec& group, const json& j);
json element_to_json(const GroupSpec& group, const GroupElement& g);

std::vector<GroupElement> elements_from_json(const GroupSpec& group, const json& j);

GroupRingElement ring_from_json(const GroupSpec& group, const json& j);
json ring_to_json(const GroupRingElement& alpha);

} // namespace sofic::json_io
