#ifndef FRAMECURV_SAMPLING_HPP
#define FRAMECURV_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "framecurv/geometry.hpp"

namespace framecurv {

/// Deterministic low-discrepancy points over a box: a Halton sequence in
/// the first dim() prime bases, offset by the seed. Identical (box, count,
/// seed) always yields bit-identical points.
std::vector<Point> sample_points(const std::vector<Interval>& box, int count,
                                 std::uint64_t seed);

}  // namespace framecurv

#endif  // FRAMECURV_SAMPLING_HPP
