#pragma once

#include <string_view>
#include <vector>

namespace syncsum {

/// Data files compiled into the library, keyed by their path below data/
/// (e.g. "catalog/T.aut", "fixtures/pd.json"). Throws Error when absent.
std::string_view embedded_file(std::string_view path);
std::vector<std::string_view> embedded_paths();

}  // namespace syncsum
