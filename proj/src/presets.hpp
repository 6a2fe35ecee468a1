#pragma once

#include <json.hpp>

#include <string_view>

namespace tdmaxwell {

/// Throws ConfigError for an unknown name or refinement < 1.
nlohmann::json preset_json(std::string_view name, int refinement);

} // namespace tdmaxwell
