#ifndef BONDMATCHER_ENSEMBLE_HPP
#define BONDMATCHER_ENSEMBLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bondmatcher/assignment.hpp"
#include "bondmatcher/bond_graph.hpp"
#include "bondmatcher/extremum_graph.hpp"

namespace bondmatcher {

/// Arc-level partial isomorphism induced by a node assignment: arc_map[k] is
/// the matched arc index in the other graph, or -1 when the arc has no
/// partner. The map is injective on its matched range.
struct ArcMatch {
  std::vector<int> arc_map;
  int matched = 0;
};

/// Matches arcs whose endpoint sets correspond under the node map, in either
/// orientation; parallel arcs over the same endpoints pair up in ascending
/// saddle-value order and the surplus stays unmatched; loop arcs only match
/// loop arcs on the mapped node.
ArcMatch induce_arc_map(const ExtremumGraph& gi, const ExtremumGraph& gj,
                        const NodeAssignment& phi);

struct ArcRate {
  int numerator = 0;    // members whose induced map keeps this arc
  int denominator = 0;  // members included in the ensemble
  double rate = 0.0;    // numerator / denominator, in [1/n, 1]
  bool stable = false;  // rate == 1
};

struct OccurrenceReport {
  int reference = -1;
  std::vector<std::string> member_ids;
  std::vector<int> included;  // indices of members that entered the rates
  std::vector<ArcRate> rates;             // per reference arc
  std::vector<std::vector<int>> arc_maps; // per included member, ref arc -> arc
  std::vector<std::string> warnings;
};

/// Occurrence rate of every reference arc across the ensemble: the fraction
/// of members whose induced partial isomorphism keeps the arc, the reference
/// itself counting as a match. Members whose node count differs from the
/// reference abort with SizeMismatchError naming both counts, or are
/// excluded with a warning when permissive is set.
OccurrenceReport occurrence_rates(const std::vector<ExtremumGraph>& members,
                                  int reference, bool permissive = false);

struct StabilityRow {
  int arc = -1;
  BondClass bond_class = BondClass::Unclassified;
  ArcRate rate;
  BondIndicators indicators;
};

/// Joins occurrence rates with the reference bond graph, sorted by ascending
/// rate so unstable bonds (rate < 1) lead the report.
std::vector<StabilityRow> stability_report(const OccurrenceReport& report,
                                           const BondGraph& reference_bonds);

}  // namespace bondmatcher

#endif
