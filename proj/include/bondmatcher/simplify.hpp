#ifndef BONDMATCHER_SIMPLIFY_HPP
#define BONDMATCHER_SIMPLIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "bondmatcher/gradient.hpp"
#include "bondmatcher/persistence.hpp"

namespace bondmatcher {

struct MinimaSimplification {
  DiscreteGradient gradient;
  /// Threshold actually applied; exceeds epsilon only in target mode.
  double effective_epsilon = 0.0;
  int cancelled = 0;
  std::vector<std::string> warnings;
};

/// Removes low-persistence minima by cancelling (minimum, 1-saddle) pairs in
/// increasing persistence order: each cancellation reverses the unique
/// v-path between the paired saddle and minimum, removing both from the
/// critical set. With target_min_count set, epsilon is raised to the
/// smallest threshold that leaves exactly that many minima; an unreachable
/// target throws std::runtime_error naming the bracketing persistence
/// values.
MinimaSimplification simplify_minima(const DiscreteGradient& g,
                                     const std::vector<PersistencePair>& pairs,
                                     double epsilon,
                                     std::optional<std::int64_t>
                                         target_min_count = std::nullopt);

struct SaddleSimplification {
  DiscreteGradient gradient;
  int cancelled = 0;
};

/// Cancels spurious saddle pairs: while some (2-saddle, 1-saddle) pair with
/// value difference below delta is joined by exactly one v-path, the pair
/// with the smallest difference is reversed and candidates are recomputed.
/// Pairs joined by zero or several v-paths are skipped. On a planar grid the
/// 2-saddles are the triangle maxima and the same cancellation applies.
SaddleSimplification cancel_saddle_saddle(const DiscreteGradient& g,
                                          const ScalarGrid& grid,
                                          const VertexOrder& order,
                                          double delta);

}  // namespace bondmatcher

#endif
