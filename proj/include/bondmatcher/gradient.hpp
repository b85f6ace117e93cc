#ifndef BONDMATCHER_GRADIENT_HPP
#define BONDMATCHER_GRADIENT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bondmatcher/grid.hpp"
#include "bondmatcher/triangulation.hpp"

namespace bondmatcher {

/// Discrete gradient field: a partition of the simplices into critical cells
/// and facet/cofacet pairs. Stored as one byte per simplex naming the paired
/// neighbor by its position in the deterministic facet/cofacet enumeration.
class DiscreteGradient {
 public:
  explicit DiscreteGradient(const Triangulation& tri);

  const Triangulation& triangulation() const { return tri_; }

  bool is_critical(SimplexId s) const { return state(s) == 0; }
  bool paired_up(SimplexId s) const {
    const std::uint8_t st = state(s);
    return st >= 1 && st < kFacetBase;
  }
  bool paired_down(SimplexId s) const { return state(s) >= kFacetBase; }

  /// Paired cofacet (if paired up) or facet (if paired down).
  std::optional<SimplexId> partner(SimplexId s) const;

  /// Makes {facet, cofacet} a gradient vector, overwriting both states.
  void pair(SimplexId facet, SimplexId cofacet);

  void set_critical(SimplexId s) { state_[s.dim][tri_.slot(s)] = 0; }

  /// All critical simplices in SimplexId order, one dimension at a time.
  std::vector<SimplexId> critical_cells(int dim) const;

 private:
  static constexpr std::uint8_t kFacetBase = 128;

  std::uint8_t state(SimplexId s) const { return state_[s.dim][tri_.slot(s)]; }

  Triangulation tri_;
  std::array<std::vector<std::uint8_t>, 4> state_;
};

/// Builds the discrete gradient with the deterministic lower-star algorithm:
/// within each lower star the vertex pairs with its lowest edge, remaining
/// cells pair greedily with their unique available facet in rank order, and
/// whatever stays unpaired is critical. Lower stars are independent, so the
/// result does not depend on the vertex processing sequence.
DiscreteGradient compute_gradient(const Triangulation& tri,
                                  const VertexOrder& order);

/// Critical cell with its field value (at the highest-ranked vertex) and
/// barycenter position in Angstrom.
struct CriticalSimplex {
  SimplexId id;
  double value = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
};

/// All critical simplices of dimension dim, sorted by SimplexId.
std::vector<CriticalSimplex> critical_simplices(const DiscreteGradient& g,
                                                const ScalarGrid& grid,
                                                const VertexOrder& order,
                                                int dim);

/// One descending vertex path: vertices[0] is an endpoint of the starting
/// saddle edge, vertices.back() is a critical vertex (a minimum); edges[i]
/// joins vertices[i] to vertices[i+1] and is the gradient pair of
/// vertices[i].
struct VertexPath {
  std::vector<std::int64_t> vertices;
  std::vector<SimplexId> edges;
};

/// The two descending v-paths of a critical edge, one per endpoint, ordered
/// by endpoint vertex index. Gradient fields are loop-free, so both walks
/// terminate at critical vertices.
std::array<VertexPath, 2> descending_paths(const DiscreteGradient& g,
                                           SimplexId saddle);

}  // namespace bondmatcher

#endif
