#ifndef BONDMATCHER_EXTREMUM_GRAPH_HPP
#define BONDMATCHER_EXTREMUM_GRAPH_HPP

#include <string>
#include <vector>

#include "bondmatcher/gradient.hpp"
#include "bondmatcher/grid.hpp"

namespace bondmatcher {

struct ExtremumNode {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // Angstrom
  double value = 0.0;
  std::int64_t vertex = -1;  // grid vertex holding the minimum
};

struct ExtremumArc {
  int endpoints[2] = {-1, -1};  // node indices, lower first
  double saddle_value = 0.0;
  Eigen::Vector3d saddle_position = Eigen::Vector3d::Zero();
  /// Polyline from endpoints[0]'s minimum through the saddle barycenter to
  /// endpoints[1]'s minimum.
  std::vector<Eigen::Vector3d> geometry;
  bool loop = false;
  SimplexId saddle;
};

/// Nodes are the minima of the (simplified) gradient; each surviving
/// 1-saddle contributes one arc traced along its two descending paths.
struct ExtremumGraph {
  std::string source_id;
  std::vector<ExtremumNode> nodes;
  std::vector<ExtremumArc> arcs;
};

/// Builds the extremum graph of a gradient field. Nodes are ordered by
/// (value, position lexicographic); arcs by (endpoints, saddle_value,
/// saddle id), which keeps parallel arcs in ascending saddle order. Arcs
/// whose two paths reach the same minimum are kept and flagged as loops.
ExtremumGraph build_extremum_graph(const DiscreteGradient& g,
                                   const ScalarGrid& grid,
                                   const VertexOrder& order,
                                   const std::string& source_id);

}  // namespace bondmatcher

#endif
