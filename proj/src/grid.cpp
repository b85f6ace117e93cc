#include "bondmatcher/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bondmatcher {

void ScalarGrid::validate() const {
  if (dims.x() < 2 || dims.y() < 2 || dims.z() < 1)
    throw std::invalid_argument("grid dims must be at least 2x2x1");
  if (!(spacing.x() > 0.0) || !(spacing.y() > 0.0) || !(spacing.z() > 0.0))
    throw std::invalid_argument("grid spacing must be positive");
  if (values.size() != vertex_count())
    throw std::invalid_argument("grid value count does not match dims");
  for (std::int64_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw std::invalid_argument("grid values must be finite");
}

ScalarGrid negate(const ScalarGrid& g) {
  ScalarGrid out = g;
  out.values = -g.values;
  return out;
}

VertexOrder::VertexOrder(const ScalarGrid& g) {
  const std::int64_t n = g.vertex_count();
  by_rank_.resize(n);
  std::iota(by_rank_.begin(), by_rank_.end(), std::int64_t{0});
  std::sort(by_rank_.begin(), by_rank_.end(),
            [&g](std::int64_t a, std::int64_t b) {
              if (g.values[a] != g.values[b]) return g.values[a] < g.values[b];
              return a < b;
            });
  rank_.resize(n);
  for (std::int64_t r = 0; r < n; ++r) rank_[by_rank_[r]] = r;
}

}  // namespace bondmatcher
