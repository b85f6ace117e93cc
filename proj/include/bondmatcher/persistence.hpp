#ifndef BONDMATCHER_PERSISTENCE_HPP
#define BONDMATCHER_PERSISTENCE_HPP

#include <optional>
#include <vector>

#include "bondmatcher/gradient.hpp"
#include "bondmatcher/grid.hpp"
#include "bondmatcher/triangulation.hpp"

namespace bondmatcher {

/// Sublevel-set pairing of a minimum with the 1-saddle edge that merges its
/// component into an older one. The global minimum stays unpaired with
/// infinite persistence.
struct PersistencePair {
  CriticalSimplex creator;                  // a minimum (vertex simplex)
  std::optional<CriticalSimplex> destroyer; // a 1-saddle (edge simplex)
  double persistence = 0.0;
};

/// 0-dimensional sublevel-set persistence by union-find: vertices are
/// processed in increasing rank, components merge across edges in filtration
/// order, and the elder rule keeps the older component alive. Finite pairs
/// come back sorted by (persistence, creator id); the single unpaired global
/// minimum is last.
std::vector<PersistencePair> min_saddle_persistence(const Triangulation& tri,
                                                    const ScalarGrid& grid,
                                                    const VertexOrder& order);

}  // namespace bondmatcher

#endif
