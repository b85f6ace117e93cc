#ifndef BONDMATCHER_PIPELINE_HPP
#define BONDMATCHER_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bondmatcher/bond_graph.hpp"
#include "bondmatcher/grid.hpp"
#include "bondmatcher/simplify.hpp"

namespace bondmatcher {

/// Everything that influences an analysis run; echoed into every output so
/// results are reproducible from the artifact alone.
struct RunConfig {
  double epsilon = 1e-3;  // minima persistence threshold
  double delta = 1e-4;    // saddle-saddle value-difference threshold
  double oxygen_cut = -4.0;
  double covalent_cut = -0.1;
  std::optional<std::int64_t> target_min_count;
  std::optional<int> reference;
  bool permissive_counts = false;
  int threads = 0;  // 0 = pick automatically
};

struct AnalysisStats {
  std::int64_t minima_before = 0;
  std::int64_t minima_after = 0;
  std::int64_t saddles_after = 0;
  int minima_cancelled = 0;
  int saddle_pairs_cancelled = 0;
  double effective_epsilon = 0.0;
};

struct AnalysisResult {
  BondGraph bonds;  // bonds.graph is the simplified extremum graph
  AnalysisStats stats;
  std::vector<std::string> warnings;
};

/// Full single-field pipeline on a density grid (values are the physical
/// density; the field is negated internally): gradient, persistence,
/// two-stage simplification, extremum graph, bond classification.
AnalysisResult analyze_density(const ScalarGrid& density, const RunConfig& cfg,
                               const std::string& source_id,
                               const AtomList* atoms = nullptr);

/// Same pipeline on an already negated field (rho' convention).
AnalysisResult analyze_negated(const ScalarGrid& rho_prime,
                               const RunConfig& cfg,
                               const std::string& source_id,
                               const AtomList* atoms = nullptr);

/// Runs analyze_density over all members with a small worker pool; results
/// come back in member order regardless of scheduling. A thread count of 0
/// uses BONDMATCHER_THREADS or the hardware concurrency.
std::vector<AnalysisResult> analyze_ensemble(
    const std::vector<ScalarGrid>& densities,
    const std::vector<std::string>& source_ids, const RunConfig& cfg);

/// Resolves the worker count: explicit value, BONDMATCHER_THREADS, then
/// hardware concurrency.
int resolve_threads(const RunConfig& cfg);

}  // namespace bondmatcher

#endif
