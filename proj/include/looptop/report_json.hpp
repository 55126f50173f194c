#pragma once

// JSON rendering of reports. Field order is fixed, so emitting, parsing and
// re-emitting gives identical bytes.

#include "looptop/cobar.hpp"
#include "looptop/spaces.hpp"

#include <json.hpp>

#include <string>

namespace looptop {

using Json = nlohmann::ordered_json;

Json space_json(const SpaceModel& space);
Json report_json(const DecompositionReport& report);
Json moore_json(const MooreReport& moore);
Json verification_json(const VerificationReport& report);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace looptop
