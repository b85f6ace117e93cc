#include "bondmatcher/ensemble.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bondmatcher {

ArcMatch induce_arc_map(const ExtremumGraph& gi, const ExtremumGraph& gj,
                        const NodeAssignment& phi) {
  // Arcs of gj keyed by endpoint pair, ascending saddle value per key.
  std::map<std::pair<int, int>, std::vector<int>> j_arcs;
  for (int k = 0; k < static_cast<int>(gj.arcs.size()); ++k) {
    const ExtremumArc& a = gj.arcs[k];
    j_arcs[{a.endpoints[0], a.endpoints[1]}].push_back(k);
  }
  for (auto& [key, list] : j_arcs)
    std::sort(list.begin(), list.end(), [&gj](int x, int y) {
      if (gj.arcs[x].saddle_value != gj.arcs[y].saddle_value)
        return gj.arcs[x].saddle_value < gj.arcs[y].saddle_value;
      return x < y;
    });

  std::map<std::pair<int, int>, std::vector<int>> i_arcs;
  for (int k = 0; k < static_cast<int>(gi.arcs.size()); ++k) {
    const ExtremumArc& a = gi.arcs[k];
    int u = phi.map[a.endpoints[0]];
    int v = phi.map[a.endpoints[1]];
    if (u > v) std::swap(u, v);
    i_arcs[{u, v}].push_back(k);
  }

  ArcMatch out;
  out.arc_map.assign(gi.arcs.size(), -1);
  for (auto& [key, list] : i_arcs) {
    std::sort(list.begin(), list.end(), [&gi](int x, int y) {
      if (gi.arcs[x].saddle_value != gi.arcs[y].saddle_value)
        return gi.arcs[x].saddle_value < gi.arcs[y].saddle_value;
      return x < y;
    });
    auto it = j_arcs.find(key);
    if (it == j_arcs.end()) continue;
    const std::size_t n = std::min(list.size(), it->second.size());
    for (std::size_t k = 0; k < n; ++k) {
      out.arc_map[list[k]] = it->second[k];
      ++out.matched;
    }
  }
  return out;
}

OccurrenceReport occurrence_rates(const std::vector<ExtremumGraph>& members,
                                  int reference, bool permissive) {
  if (reference < 0 || reference >= static_cast<int>(members.size()))
    throw std::invalid_argument("reference index out of range");
  const ExtremumGraph& ref = members[reference];

  OccurrenceReport report;
  report.reference = reference;
  for (const ExtremumGraph& g : members) report.member_ids.push_back(g.source_id);

  std::vector<Eigen::Vector3d> ref_nodes;
  for (const ExtremumNode& n : ref.nodes) ref_nodes.push_back(n.position);

  std::vector<int> counts(ref.arcs.size(), 0);
  for (int j = 0; j < static_cast<int>(members.size()); ++j) {
    const ExtremumGraph& g = members[j];
    if (g.nodes.size() != ref.nodes.size()) {
      std::ostringstream msg;
      msg << "member " << g.source_id << " has " << g.nodes.size()
          << " nodes but reference " << ref.source_id << " has "
          << ref.nodes.size();
      if (!permissive) throw SizeMismatchError(msg.str());
      msg << "; excluded from the ensemble";
      report.warnings.push_back(msg.str());
      continue;
    }
    std::vector<Eigen::Vector3d> nodes;
    for (const ExtremumNode& n : g.nodes) nodes.push_back(n.position);
    const NodeAssignment phi = optimal_assignment(ref_nodes, nodes);
    const ArcMatch match = induce_arc_map(ref, g, phi);
    for (std::size_t k = 0; k < counts.size(); ++k)
      if (match.arc_map[k] >= 0) ++counts[k];
    report.included.push_back(j);
    report.arc_maps.push_back(match.arc_map);
  }

  const int n = static_cast<int>(report.included.size());
  report.rates.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    report.rates[k].numerator = counts[k];
    report.rates[k].denominator = n;
    report.rates[k].rate = n > 0 ? static_cast<double>(counts[k]) / n : 0.0;
    report.rates[k].stable = counts[k] == n;
  }
  return report;
}

std::vector<StabilityRow> stability_report(const OccurrenceReport& report,
                                           const BondGraph& reference_bonds) {
  if (reference_bonds.bonds.size() != report.rates.size())
    throw std::invalid_argument(
        "bond graph and occurrence report disagree on arc count");
  std::vector<StabilityRow> rows(report.rates.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].arc = static_cast<int>(k);
    rows[k].bond_class = reference_bonds.bonds[k].bond_class;
    rows[k].rate = report.rates[k];
    rows[k].indicators = reference_bonds.bonds[k].indicators;
  }
  std::sort(rows.begin(), rows.end(),
            [](const StabilityRow& a, const StabilityRow& b) {
              if (a.rate.numerator != b.rate.numerator)
                return a.rate.numerator < b.rate.numerator;
              return a.arc < b.arc;
            });
  return rows;
}

}  // namespace bondmatcher
