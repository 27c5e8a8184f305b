#pragma once

#include <cstdint>
#include <vector>

#include "bgeom/space.hpp"

namespace bgeom {

/// `count` Facet spaces cycling through dimensions 2, 3, 4, each with
/// dim + 1 .. dim + 4 rows drawn uniformly from [-1,1]^dim by a seeded
/// splitmix64 stream. Rank-deficient draws are redrawn.
std::vector<Space> facet_corpus(std::size_t count = 50, std::uint64_t seed = 20240601);

}  // namespace bgeom
