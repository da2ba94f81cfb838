#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace langvol {

// Observed occurrence count per term. Ordered so that serialized output is
// deterministic; std::less<> allows lookup by string_view.
using TermCounts = std::map<std::string, std::uint64_t, std::less<>>;

}  // namespace langvol
