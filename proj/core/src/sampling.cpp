#include "framecurv/sampling.hpp"

namespace framecurv {

namespace {

constexpr int kBases[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::uint64_t index, int base) {
  double inv = 1.0 / base;
  double factor = inv;
  double result = 0.0;
  while (index != 0) {
    result += factor * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
    factor *= inv;
  }
  return result;
}

}  // namespace

std::vector<Point> sample_points(const std::vector<Interval>& box, int count,
                                 std::uint64_t seed) {
  int dim = static_cast<int>(box.size());
  if (dim < 1 || dim > kMaxDim)
    throw ConfigError("sample box dimension must be between 1 and 8");
  if (count < 1) throw ConfigError("sample count must be positive");

  // Seed shifts the sequence start; the multiplier decorrelates nearby
  // seeds without affecting determinism.
  std::uint64_t offset = 1 + seed * 10007ULL;

  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<double> coords(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
      double u = radical_inverse(offset + static_cast<std::uint64_t>(i),
                                 kBases[d]);
      coords[static_cast<std::size_t>(d)] =
          box[static_cast<std::size_t>(d)].lo +
          u * (box[static_cast<std::size_t>(d)].hi -
               box[static_cast<std::size_t>(d)].lo);
    }
    pts.emplace_back(std::move(coords));
  }
  return pts;
}

}  // namespace framecurv
