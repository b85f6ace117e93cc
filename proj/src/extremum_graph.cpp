#include "bondmatcher/extremum_graph.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

namespace bondmatcher {

ExtremumGraph build_extremum_graph(const DiscreteGradient& g,
                                   const ScalarGrid& grid,
                                   const VertexOrder& order,
                                   const std::string& source_id) {
  ExtremumGraph graph;
  graph.source_id = source_id;

  const auto minima = critical_simplices(g, grid, order, 0);
  for (const CriticalSimplex& m : minima)
    graph.nodes.push_back(ExtremumNode{m.position, m.value, m.id.anchor});
  std::sort(graph.nodes.begin(), graph.nodes.end(),
            [](const ExtremumNode& a, const ExtremumNode& b) {
              if (a.value != b.value) return a.value < b.value;
              return std::lexicographical_compare(
                  a.position.data(), a.position.data() + 3, b.position.data(),
                  b.position.data() + 3);
            });
  std::unordered_map<std::int64_t, int> node_of;
  for (int i = 0; i < static_cast<int>(graph.nodes.size()); ++i)
    node_of[graph.nodes[i].vertex] = i;

  for (const CriticalSimplex& s : critical_simplices(g, grid, order, 1)) {
    auto paths = descending_paths(g, s.id);
    int a = node_of.at(paths[0].vertices.back());
    int b = node_of.at(paths[1].vertices.back());
    if (a > b) {
      std::swap(a, b);
      std::swap(paths[0], paths[1]);
    }
    ExtremumArc arc;
    arc.endpoints[0] = a;
    arc.endpoints[1] = b;
    arc.saddle_value = s.value;
    arc.saddle_position = s.position;
    arc.loop = a == b;
    arc.saddle = s.id;
    for (auto it = paths[0].vertices.rbegin(); it != paths[0].vertices.rend();
         ++it)
      arc.geometry.push_back(grid.position(*it));
    arc.geometry.push_back(s.position);
    for (const std::int64_t v : paths[1].vertices)
      arc.geometry.push_back(grid.position(v));
    graph.arcs.push_back(std::move(arc));
  }
  std::sort(graph.arcs.begin(), graph.arcs.end(),
            [](const ExtremumArc& x, const ExtremumArc& y) {
              return std::make_tuple(x.endpoints[0], x.endpoints[1],
                                     x.saddle_value, x.saddle) <
                     std::make_tuple(y.endpoints[0], y.endpoints[1],
                                     y.saddle_value, y.saddle);
            });
  return graph;
}

}  // namespace bondmatcher
