#pragma once

#include <cstdint>

#include "sold/subgeo.hpp"

namespace sold {

/// Seeded uniform draws from the tangent-coordinate box, on the slice x = 0.
std::vector<Point> sample_on_submanifold(const SliceChart& chart, int count, uint64_t seed);

/// Seeded uniform draws from the full domain box.
std::vector<Point> sample_in_domain(const SliceChart& chart, int count, uint64_t seed);

}  // namespace sold
