#include "bondmatcher/serialize.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include "bondmatcher/version.hpp"

namespace bondmatcher {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

nlohmann::json vec_json(const Eigen::Vector3d& v) {
  return nlohmann::json::array({v.x(), v.y(), v.z()});
}

void stamp(nlohmann::json& j, const RunConfig& cfg) {
  j["config"] = config_json(cfg);
  j["version"] = kVersion;
}

std::string csv_preamble(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# bondmatcher " << kVersion << "\n";
  out << "# config " << config_json(cfg).dump() << "\n";
  return out.str();
}

}  // namespace

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["epsilon"] = cfg.epsilon;
  j["delta"] = cfg.delta;
  j["oxygen_cut"] = cfg.oxygen_cut;
  j["covalent_cut"] = cfg.covalent_cut;
  j["target_min_count"] =
      cfg.target_min_count ? nlohmann::json(*cfg.target_min_count)
                           : nlohmann::json(nullptr);
  j["reference"] =
      cfg.reference ? nlohmann::json(*cfg.reference) : nlohmann::json(nullptr);
  j["permissive_counts"] = cfg.permissive_counts;
  j["threads"] = cfg.threads;
  return j;
}

nlohmann::json graph_json(const ExtremumGraph& g) {
  nlohmann::json j;
  j["source_id"] = g.source_id;
  j["nodes"] = nlohmann::json::array();
  for (const ExtremumNode& n : g.nodes)
    j["nodes"].push_back({{"position", vec_json(n.position)},
                          {"value", n.value}});
  j["arcs"] = nlohmann::json::array();
  for (const ExtremumArc& a : g.arcs) {
    nlohmann::json ja;
    ja["endpoints"] = {a.endpoints[0], a.endpoints[1]};
    ja["saddle_value"] = a.saddle_value;
    ja["saddle_position"] = vec_json(a.saddle_position);
    ja["geometry"] = nlohmann::json::array();
    for (const auto& p : a.geometry) ja["geometry"].push_back(vec_json(p));
    ja["loop"] = a.loop;
    j["arcs"].push_back(std::move(ja));
  }
  return j;
}

nlohmann::json bond_graph_json(const BondGraph& bg) {
  nlohmann::json j = graph_json(bg.graph);
  for (std::size_t i = 0; i < bg.atom_class.size(); ++i)
    j["nodes"][i]["atom_class"] = to_string(bg.atom_class[i]);
  for (std::size_t i = 0; i < bg.bonds.size(); ++i) {
    const BondArc& b = bg.bonds[i];
    auto& ja = j["arcs"][i];
    ja["bond_class"] = to_string(b.bond_class);
    ja["donor"] = b.donor ? nlohmann::json(*b.donor) : nlohmann::json(nullptr);
    ja["acceptor"] =
        b.acceptor ? nlohmann::json(*b.acceptor) : nlohmann::json(nullptr);
    nlohmann::json ind;
    ind["bcp_density"] = b.indicators.bcp_density;
    ind["length_A"] = b.indicators.length_angstrom
                          ? nlohmann::json(*b.indicators.length_angstrom)
                          : nlohmann::json(nullptr);
    ind["angle_deg"] = b.indicators.angle_degrees
                           ? nlohmann::json(*b.indicators.angle_degrees)
                           : nlohmann::json(nullptr);
    ja["indicators"] = std::move(ind);
  }
  if (!bg.warnings.empty()) j["warnings"] = bg.warnings;
  return j;
}

nlohmann::json analysis_json(const AnalysisResult& res, const RunConfig& cfg) {
  nlohmann::json j = bond_graph_json(res.bonds);
  nlohmann::json stats;
  stats["minima_before"] = res.stats.minima_before;
  stats["minima_after"] = res.stats.minima_after;
  stats["saddles_after"] = res.stats.saddles_after;
  stats["minima_cancelled"] = res.stats.minima_cancelled;
  stats["saddle_pairs_cancelled"] = res.stats.saddle_pairs_cancelled;
  stats["effective_epsilon"] = res.stats.effective_epsilon;
  j["stats"] = std::move(stats);
  if (!res.warnings.empty()) j["warnings"] = res.warnings;
  stamp(j, cfg);
  return j;
}

void write_obj(std::ostream& out, const ExtremumGraph& g) {
  out << "# bondmatcher " << kVersion << " arc polylines\n";
  std::size_t base = 1;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  for (const ExtremumArc& a : g.arcs) {
    for (const auto& p : a.geometry)
      out << "v " << format_double(p.x()) << ' ' << format_double(p.y()) << ' '
          << format_double(p.z()) << "\n";
    ranges.emplace_back(base, a.geometry.size());
    base += a.geometry.size();
  }
  for (const auto& [start, count] : ranges) {
    out << "l";
    for (std::size_t k = 0; k < count; ++k) out << ' ' << start + k;
    out << "\n";
  }
}

std::string indicator_csv(const BondGraph& bg, const RunConfig& cfg) {
  std::ostringstream out;
  out << csv_preamble(cfg);
  out << "member_id,bond_id,class,bcp_density,length_A,angle_deg\n";
  for (std::size_t i = 0; i < bg.bonds.size(); ++i) {
    const BondArc& b = bg.bonds[i];
    out << bg.graph.source_id << ',' << i << ',' << to_string(b.bond_class)
        << ',' << format_double(b.indicators.bcp_density) << ',';
    if (b.indicators.length_angstrom)
      out << format_double(*b.indicators.length_angstrom);
    out << ',';
    if (b.indicators.angle_degrees)
      out << format_double(*b.indicators.angle_degrees);
    out << "\n";
  }
  return out.str();
}

std::string occurrence_csv(const OccurrenceReport& report,
                           const std::vector<StabilityRow>& rows,
                           const RunConfig& cfg) {
  std::ostringstream out;
  out << csv_preamble(cfg);
  out << "reference_id,arc_id,bond_class,rate,stable,bcp_density,length_A,"
         "angle_deg\n";
  const std::string& ref_id = report.member_ids[report.reference];
  for (const StabilityRow& r : rows) {
    out << ref_id << ',' << r.arc << ',' << to_string(r.bond_class) << ','
        << format_double(r.rate.rate) << ',' << (r.rate.stable ? 1 : 0) << ','
        << format_double(r.indicators.bcp_density) << ',';
    if (r.indicators.length_angstrom)
      out << format_double(*r.indicators.length_angstrom);
    out << ',';
    if (r.indicators.angle_degrees)
      out << format_double(*r.indicators.angle_degrees);
    out << "\n";
  }
  return out.str();
}

nlohmann::json occurrence_json(const OccurrenceReport& report,
                               const std::vector<StabilityRow>& rows,
                               const RunConfig& cfg) {
  nlohmann::json j;
  j["reference_id"] = report.member_ids[report.reference];
  j["member_ids"] = report.member_ids;
  j["included"] = report.included;
  j["rates"] = nlohmann::json::array();
  for (const StabilityRow& r : rows) {
    nlohmann::json jr;
    jr["arc_id"] = r.arc;
    jr["bond_class"] = to_string(r.bond_class);
    jr["numerator"] = r.rate.numerator;
    jr["denominator"] = r.rate.denominator;
    jr["rate"] = r.rate.rate;
    jr["stable"] = r.rate.stable;
    jr["bcp_density"] = r.indicators.bcp_density;
    jr["length_A"] = r.indicators.length_angstrom
                         ? nlohmann::json(*r.indicators.length_angstrom)
                         : nlohmann::json(nullptr);
    jr["angle_deg"] = r.indicators.angle_degrees
                          ? nlohmann::json(*r.indicators.angle_degrees)
                          : nlohmann::json(nullptr);
    j["rates"].push_back(std::move(jr));
  }
  j["arc_maps"] = report.arc_maps;
  if (!report.warnings.empty()) j["warnings"] = report.warnings;
  stamp(j, cfg);
  return j;
}

nlohmann::json match_json(const ExtremumGraph& a, const ExtremumGraph& b,
                          const NodeAssignment& phi, const ArcMatch& arcs,
                          const RunConfig& cfg) {
  nlohmann::json j;
  j["source_a"] = a.source_id;
  j["source_b"] = b.source_id;
  j["node_map"] = phi.map;
  j["energy"] = phi.energy;
  j["arc_map"] = arcs.arc_map;
  j["matched_arcs"] = arcs.matched;
  j["graph_a"] = graph_json(a);
  j["graph_b"] = graph_json(b);
  stamp(j, cfg);
  return j;
}

}  // namespace bondmatcher
