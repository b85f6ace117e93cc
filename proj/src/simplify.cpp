#include "bondmatcher/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace bondmatcher {

namespace {

/// Reverses the vertex path so the flow runs from the saddle down to the
/// path's final minimum; both endpoints leave the critical set.
void reverse_vertex_path(DiscreteGradient& g, SimplexId saddle,
                         const VertexPath& path) {
  g.pair(vertex_simplex(path.vertices.front()), saddle);
  for (std::size_t i = 0; i < path.edges.size(); ++i)
    g.pair(vertex_simplex(path.vertices[i + 1]), path.edges[i]);
}

}  // namespace

MinimaSimplification simplify_minima(const DiscreteGradient& g,
                                     const std::vector<PersistencePair>& pairs,
                                     double epsilon,
                                     std::optional<std::int64_t>
                                         target_min_count) {
  std::vector<PersistencePair> finite;
  for (const PersistencePair& p : pairs)
    if (p.destroyer) finite.push_back(p);
  std::sort(finite.begin(), finite.end(),
            [](const PersistencePair& a, const PersistencePair& b) {
              if (a.persistence != b.persistence)
                return a.persistence < b.persistence;
              return a.creator.id < b.creator.id;
            });

  std::size_t cancel_count = 0;
  double effective = epsilon;
  if (target_min_count) {
    const std::int64_t minima = static_cast<std::int64_t>(pairs.size());
    const std::int64_t k = minima - *target_min_count;
    if (k < 0 || k > static_cast<std::int64_t>(finite.size())) {
      std::ostringstream msg;
      msg << "target minimum count " << *target_min_count
          << " is unreachable: field has " << minima << " minima and "
          << finite.size() << " cancellable pairs";
      throw std::runtime_error(msg.str());
    }
    if (k > 0 && k < static_cast<std::int64_t>(finite.size()) &&
        !(finite[k - 1].persistence < finite[k].persistence)) {
      std::ostringstream msg;
      msg << "target minimum count " << *target_min_count
          << " is unreachable: no threshold separates persistence "
          << finite[k - 1].persistence << " from " << finite[k].persistence;
      throw std::runtime_error(msg.str());
    }
    cancel_count = static_cast<std::size_t>(k);
    effective = k == 0 ? 0.0
                       : std::nextafter(finite[k - 1].persistence,
                                        std::numeric_limits<double>::infinity());
  } else {
    while (cancel_count < finite.size() &&
           finite[cancel_count].persistence < epsilon)
      ++cancel_count;
  }

  MinimaSimplification out{g, effective, 0, {}};
  for (std::size_t i = 0; i < cancel_count; ++i) {
    const SimplexId saddle = finite[i].destroyer->id;
    const std::int64_t minimum = finite[i].creator.id.anchor;
    if (!out.gradient.is_critical(saddle)) {
      std::ostringstream msg;
      msg << "skipped pair with persistence " << finite[i].persistence
          << ": saddle is no longer critical";
      out.warnings.push_back(msg.str());
      continue;
    }
    const auto paths = descending_paths(out.gradient, saddle);
    const bool hit0 = paths[0].vertices.back() == minimum;
    const bool hit1 = paths[1].vertices.back() == minimum;
    if (hit0 == hit1) {
      std::ostringstream msg;
      msg << "skipped pair with persistence " << finite[i].persistence
          << ": saddle reaches the paired minimum "
          << (hit0 ? "twice" : "on neither side");
      out.warnings.push_back(msg.str());
      continue;
    }
    reverse_vertex_path(out.gradient, saddle, hit0 ? paths[0] : paths[1]);
    ++out.cancelled;
  }
  return out;
}

namespace {

struct PathCounts {
  // Critical 1-saddle slot -> number of v-paths (saturating at 2).
  std::map<std::int64_t, int> to_edge;
};

/// Counts v-paths from every reachable triangle down to the critical edges.
/// The gradient is acyclic, so memoized expansion over triangles terminates.
class SaddleFlow {
 public:
  SaddleFlow(const DiscreteGradient& g) : g_(g), tri_(g.triangulation()) {}

  const PathCounts& counts(SimplexId triangle) {
    const std::int64_t slot = tri_.slot(triangle);
    auto it = memo_.find(slot);
    if (it != memo_.end()) return it->second;

    // Iterative dependency resolution to keep recursion depth bounded.
    std::vector<SimplexId> stack{triangle};
    while (!stack.empty()) {
      const SimplexId t = stack.back();
      const std::int64_t ts = tri_.slot(t);
      if (memo_.count(ts)) {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      SimplexId fc[Triangulation::kMaxFacets];
      const int nf = tri_.facets(t, fc);
      for (int k = 0; k < nf; ++k) {
        const SimplexId e = fc[k];
        if (g_.is_critical(e)) continue;
        if (!g_.paired_up(e)) continue;
        const SimplexId t2 = *g_.partner(e);
        if (t2 == t) continue;
        if (!memo_.count(tri_.slot(t2))) {
          stack.push_back(t2);
          ready = false;
        }
      }
      if (!ready) continue;
      PathCounts pc;
      for (int k = 0; k < nf; ++k) {
        const SimplexId e = fc[k];
        if (g_.is_critical(e)) {
          int& c = pc.to_edge[tri_.slot(e)];
          c = std::min(2, c + 1);
        } else if (g_.paired_up(e)) {
          const SimplexId t2 = *g_.partner(e);
          if (t2 == t) continue;
          for (const auto& [slot2, cnt] : memo_.at(tri_.slot(t2)).to_edge) {
            int& c = pc.to_edge[slot2];
            c = std::min(2, c + cnt);
          }
        }
      }
      memo_.emplace(ts, std::move(pc));
      stack.pop_back();
    }
    return memo_.at(slot);
  }

  /// Retrieves the unique v-path from triangle to the critical edge target
  /// as the vector sequence (e1,t1),...,(ek,tk); empty when the edge is a
  /// direct facet of the triangle.
  std::vector<std::pair<SimplexId, SimplexId>> unique_path(SimplexId triangle,
                                                           SimplexId target) {
    std::vector<std::pair<SimplexId, SimplexId>> vectors;
    SimplexId t = triangle;
    const std::int64_t target_slot = tri_.slot(target);
    for (;;) {
      SimplexId facets[Triangulation::kMaxFacets];
      const int nf = tri_.facets(t, facets);
      bool advanced = false;
      for (int k = 0; k < nf; ++k) {
        const SimplexId e = facets[k];
        if (g_.is_critical(e)) {
          if (tri_.slot(e) == target_slot && e.dim == target.dim)
            return vectors;
          continue;
        }
        if (!g_.paired_up(e)) continue;
        const SimplexId t2 = *g_.partner(e);
        if (t2 == t) continue;
        const PathCounts& pc = counts(t2);
        auto it = pc.to_edge.find(target_slot);
        if (it == pc.to_edge.end() || it->second == 0) continue;
        vectors.emplace_back(e, t2);
        t = t2;
        advanced = true;
        break;
      }
      if (!advanced)
        throw std::logic_error("unique_path lost track of the v-path");
    }
  }

 private:
  const DiscreteGradient& g_;
  const Triangulation& tri_;
  std::unordered_map<std::int64_t, PathCounts> memo_;
};

void reverse_triangle_path(
    DiscreteGradient& g, SimplexId triangle, SimplexId saddle,
    const std::vector<std::pair<SimplexId, SimplexId>>& vectors) {
  if (vectors.empty()) {
    g.pair(saddle, triangle);
    return;
  }
  g.pair(vectors.front().first, triangle);
  for (std::size_t i = 1; i < vectors.size(); ++i)
    g.pair(vectors[i].first, vectors[i - 1].second);
  g.pair(saddle, vectors.back().second);
}

}  // namespace

SaddleSimplification cancel_saddle_saddle(const DiscreteGradient& g,
                                          const ScalarGrid& grid,
                                          const VertexOrder& order,
                                          double delta) {
  SaddleSimplification out{g, 0};
  const Triangulation& tri = g.triangulation();

  for (;;) {
    const auto saddles1 = critical_simplices(out.gradient, grid, order, 1);
    const auto saddles2 = critical_simplices(out.gradient, grid, order, 2);
    std::unordered_map<std::int64_t, const CriticalSimplex*> edge_by_slot;
    for (const CriticalSimplex& s : saddles1) edge_by_slot[tri.slot(s.id)] = &s;

    SaddleFlow flow(out.gradient);
    bool found = false;
    double best_diff = 0.0;
    SimplexId best_t, best_s;
    for (const CriticalSimplex& t : saddles2) {
      const PathCounts& pc = flow.counts(t.id);
      for (const auto& [slot, cnt] : pc.to_edge) {
        if (cnt != 1) continue;
        const CriticalSimplex& s = *edge_by_slot.at(slot);
        const double diff = std::abs(t.value - s.value);
        if (diff >= delta) continue;
        if (!found || diff < best_diff ||
            (diff == best_diff &&
             (t.id < best_t || (t.id == best_t && s.id < best_s)))) {
          found = true;
          best_diff = diff;
          best_t = t.id;
          best_s = s.id;
        }
      }
    }
    if (!found) break;

    const auto vectors = flow.unique_path(best_t, best_s);
    reverse_triangle_path(out.gradient, best_t, best_s, vectors);
    ++out.cancelled;
  }
  return out;
}

}  // namespace bondmatcher
