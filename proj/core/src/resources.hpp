#pragma once

#include <optional>
#include <string_view>

namespace newsgauge::resources {

/// Contents of a bundled file from data/lexicons, by file name.
std::optional<std::string_view> find(std::string_view name);

}  // namespace newsgauge::resources
