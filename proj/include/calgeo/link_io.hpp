#pragma once

#include <string>

#include <json.hpp>

#include "calgeo/link.hpp"

namespace calgeo {

// JSON fixture format for links; unknown keys are rejected.
LinkSpec link_spec_from_json(const nlohmann::json& j);
nlohmann::json link_spec_to_json(const LinkSpec& spec);
LinkSpec load_link_spec(const std::string& path);

// explicit strata round-trip (flat row-major arrays)
nlohmann::json explicit_link_to_json(const SampledLink& link);

}  // namespace calgeo
