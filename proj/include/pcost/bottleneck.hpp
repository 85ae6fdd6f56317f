#pragma once

#include <cstddef>

#include "pcost/homology.hpp"

namespace pcost {

/// Exact bottleneck distance. Infinite bars match only infinite bars at cost
/// |b1 - b2| (unequal counts give infinity); finite bars match at
/// max(|b1 - b2|, |d1 - d2|) or go to the diagonal at (d - b) / 2.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Enumerates every partial matching. Throws TooLarge past `max_bars` bars
/// in total.
double bottleneck_bruteforce(const PersistenceDiagram& a, const PersistenceDiagram& b,
                             std::size_t max_bars = 8);

}  // namespace pcost
