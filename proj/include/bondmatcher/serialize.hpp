#ifndef BONDMATCHER_SERIALIZE_HPP
#define BONDMATCHER_SERIALIZE_HPP

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "bondmatcher/ensemble.hpp"
#include "bondmatcher/pipeline.hpp"

namespace bondmatcher {

/// Shortest round-trip decimal form of a double, '.' decimal point.
std::string format_double(double v);

nlohmann::json config_json(const RunConfig& cfg);

/// {source_id, nodes: [{position, value}], arcs: [{endpoints, saddle_value,
/// saddle_position, geometry, loop}]}.
nlohmann::json graph_json(const ExtremumGraph& g);

/// Extremum graph schema plus atom_class per node and bond_class, donor,
/// acceptor, indicators per arc.
nlohmann::json bond_graph_json(const BondGraph& bg);

/// Full analyze artifact: bond graph, stats, warnings, config echo, version.
nlohmann::json analysis_json(const AnalysisResult& res, const RunConfig& cfg);

/// Wavefront OBJ polylines of the arc geometry.
void write_obj(std::ostream& out, const ExtremumGraph& g);

/// Indicator table: member_id, bond_id, class, bcp_density, length_A,
/// angle_deg. Empty fields where an indicator does not apply.
std::string indicator_csv(const BondGraph& bg, const RunConfig& cfg);

/// Occurrence table sorted by ascending rate: reference_id, arc_id,
/// bond_class, rate, stable, bcp_density, length_A, angle_deg.
std::string occurrence_csv(const OccurrenceReport& report,
                           const std::vector<StabilityRow>& rows,
                           const RunConfig& cfg);

/// JSON mirror of the occurrence table, with per-member arc maps.
nlohmann::json occurrence_json(const OccurrenceReport& report,
                               const std::vector<StabilityRow>& rows,
                               const RunConfig& cfg);

/// Pairwise match artifact: node assignment plus induced arc map.
nlohmann::json match_json(const ExtremumGraph& a, const ExtremumGraph& b,
                          const NodeAssignment& phi, const ArcMatch& arcs,
                          const RunConfig& cfg);

}  // namespace bondmatcher

#endif
