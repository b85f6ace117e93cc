#include "bondmatcher/persistence.hpp"

#include <algorithm>
#include <limits>

namespace bondmatcher {

namespace {

struct Dsu {
  std::vector<std::int64_t> parent;
  std::vector<std::int64_t> creator;  // oldest vertex of the component

  explicit Dsu(std::int64_t n) : parent(n, -1), creator(n, -1) {}

  void make(std::int64_t v) {
    parent[v] = v;
    creator[v] = v;
  }

  std::int64_t find(std::int64_t v) {
    std::int64_t root = v;
    while (parent[root] != root) root = parent[root];
    while (parent[v] != root) {
      const std::int64_t next = parent[v];
      parent[v] = root;
      v = next;
    }
    return root;
  }
};

}  // namespace

std::vector<PersistencePair> min_saddle_persistence(const Triangulation& tri,
                                                    const ScalarGrid& grid,
                                                    const VertexOrder& order) {
  const std::int64_t n = tri.vertex_count();
  Dsu dsu(n);
  std::vector<PersistencePair> pairs;

  const auto make_critical = [&](SimplexId s) {
    CriticalSimplex c;
    c.id = s;
    c.value = grid.values[tri.max_rank_vertex(s, order)];
    c.position = simplex_barycenter(tri, grid, s);
    return c;
  };

  // Neighbor directions of the triangulation, as signed mask steps.
  const int mask_limit = tri.planar() ? 4 : 8;
  std::vector<std::pair<Eigen::Vector3i, std::uint8_t>> dirs;
  for (int m = 1; m < mask_limit; ++m)
    dirs.emplace_back(mask_vec(static_cast<std::uint8_t>(m)),
                      static_cast<std::uint8_t>(m));

  std::vector<std::pair<std::int64_t, SimplexId>> lower;  // (rank, edge)
  for (std::int64_t r = 0; r < n; ++r) {
    const std::int64_t v = order.vertex_at(r);
    const Eigen::Vector3i c = tri.vertex_coords(v);
    dsu.make(v);

    // Lower edges of v in filtration order: ascending other-endpoint rank.
    lower.clear();
    for (const auto& [dvec, mask] : dirs) {
      for (int sign = -1; sign <= 1; sign += 2) {
        const Eigen::Vector3i uc = c + sign * dvec;
        if ((uc.array() < 0).any() || (uc.array() >= tri.dims().array()).any())
          continue;
        const std::int64_t u = tri.vertex_index(uc);
        if (order.rank(u) > r) continue;
        const std::int64_t anchor = sign > 0 ? v : u;
        lower.emplace_back(
            order.rank(u),
            SimplexId{1, static_cast<std::int8_t>(mask - 1), anchor});
      }
    }
    std::sort(lower.begin(), lower.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    for (const auto& [ur, edge] : lower) {
      std::int64_t verts[4];
      tri.vertices_of(edge, verts);
      const std::int64_t u = verts[0] == v ? verts[1] : verts[0];
      const std::int64_t ru = dsu.find(u);
      const std::int64_t rv = dsu.find(v);
      if (ru == rv) continue;
      const std::int64_t cu = dsu.creator[ru];
      const std::int64_t cv = dsu.creator[rv];
      const bool u_elder = order.rank(cu) < order.rank(cv);
      const std::int64_t dying = u_elder ? cv : cu;
      if (u_elder)
        dsu.parent[rv] = ru;
      else
        dsu.parent[ru] = rv;
      // A component that consists of v alone dies at persistence zero and
      // its creator is not a minimum; only real minima produce pairs.
      if (dying != v) {
        PersistencePair p;
        p.creator = make_critical(vertex_simplex(dying));
        p.destroyer = make_critical(edge);
        p.persistence = p.destroyer->value - p.creator.value;
        pairs.push_back(p);
      }
    }
  }

  std::sort(pairs.begin(), pairs.end(),
            [](const PersistencePair& a, const PersistencePair& b) {
              if (a.persistence != b.persistence)
                return a.persistence < b.persistence;
              return a.creator.id < b.creator.id;
            });

  // The surviving component's creator is the global minimum.
  const std::int64_t survivor = dsu.creator[dsu.find(order.vertex_at(0))];
  PersistencePair essential;
  essential.creator = make_critical(vertex_simplex(survivor));
  essential.persistence = std::numeric_limits<double>::infinity();
  pairs.push_back(essential);

  return pairs;
}

}  // namespace bondmatcher
