#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wgband {

inline constexpr const char* kToolkitVersion = "1.0.0";

// Per-module versions embedded into every JSON report.
inline std::vector<std::pair<std::string, std::string>> module_versions() {
  return {{"geometry", "1.0.0"},       {"fem_core", "1.0.0"},
          {"cross_section", "1.0.0"},  {"floquet", "1.0.0"},
          {"boundary_layer", "1.0.0"}, {"asymptotics", "1.0.0"},
          {"cli", "1.0.0"}};
}

}  // namespace wgband
