#pragma once

#include <filesystem>
#include <string_view>

#include "json.hpp"
#include "newsgauge/learn.hpp"

namespace newsgauge::detail {

using nlohmann::json;

json forest_to_json(const learn::Forest& forest);
learn::Forest forest_from_json(const json& j);

json imputer_to_json(const learn::MedianImputer& imputer);
learn::MedianImputer imputer_from_json(const json& j);

/// Writes {"format": kind, "version": 1, ...body} compactly with a newline.
void write_model(const std::filesystem::path& path, std::string_view kind, json body);
/// Reads a model file and checks its format tag and version.
json read_model(const std::filesystem::path& path, std::string_view kind);

}  // namespace newsgauge::detail
