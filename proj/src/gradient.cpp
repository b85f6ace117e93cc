#include "bondmatcher/gradient.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace bondmatcher {

DiscreteGradient::DiscreteGradient(const Triangulation& tri) : tri_(tri) {
  for (int d = 0; d <= tri_.top_dim(); ++d)
    state_[d].assign(tri_.slot_count(d), 0);
}

std::optional<SimplexId> DiscreteGradient::partner(SimplexId s) const {
  const std::uint8_t st = state(s);
  if (st == 0) return std::nullopt;
  if (st < kFacetBase) {
    SimplexId cof[Triangulation::kMaxCofacets];
    tri_.cofacets(s, cof);
    return cof[st - 1];
  }
  SimplexId fac[Triangulation::kMaxFacets];
  tri_.facets(s, fac);
  return fac[st - kFacetBase];
}

void DiscreteGradient::pair(SimplexId facet, SimplexId cofacet) {
  SimplexId cof[Triangulation::kMaxCofacets];
  const int nc = tri_.cofacets(facet, cof);
  int up = -1;
  for (int k = 0; k < nc; ++k)
    if (cof[k] == cofacet) {
      up = k;
      break;
    }
  SimplexId fac[Triangulation::kMaxFacets];
  const int nf = tri_.facets(cofacet, fac);
  int down = -1;
  for (int k = 0; k < nf; ++k)
    if (fac[k] == facet) {
      down = k;
      break;
    }
  if (up < 0 || down < 0)
    throw std::logic_error("pair() arguments are not facet and cofacet");
  state_[facet.dim][tri_.slot(facet)] = static_cast<std::uint8_t>(1 + up);
  state_[cofacet.dim][tri_.slot(cofacet)] =
      static_cast<std::uint8_t>(kFacetBase + down);
}

std::vector<SimplexId> DiscreteGradient::critical_cells(int dim) const {
  std::vector<SimplexId> out;
  const std::int64_t slots = tri_.slot_count(dim);
  for (std::int64_t sl = 0; sl < slots; ++sl) {
    if (state_[dim][sl] != 0) continue;
    const SimplexId s = tri_.from_slot(dim, sl);
    if (tri_.valid(s)) out.push_back(s);
  }
  return out;
}

namespace {

using RankKey = std::array<std::int64_t, 4>;

RankKey rank_key(const Triangulation& tri, const VertexOrder& order,
                 SimplexId s) {
  std::int64_t verts[4] = {0, 0, 0, 0};
  const int n = tri.vertices_of(s, verts);
  RankKey key{-1, -1, -1, -1};
  for (int k = 0; k < n; ++k) key[k] = order.rank(verts[k]);
  std::sort(key.begin(), key.begin() + n, std::greater<>());
  return key;
}

// Lower-star worker state; indices are positions in the star list.
struct StarCell {
  SimplexId id;
  RankKey key;
  int unpaired = 0;
  enum : std::uint8_t { kOpen, kPaired, kCritical } status = kOpen;
  int facets[Triangulation::kMaxFacets];
  int facet_count = 0;
  int cofacets[Triangulation::kMaxCofacets];
  int cofacet_count = 0;
};

using HeapEntry = std::pair<RankKey, int>;

}  // namespace

DiscreteGradient compute_gradient(const Triangulation& tri,
                                  const VertexOrder& order) {
  DiscreteGradient g(tri);
  const std::int64_t n = tri.vertex_count();

  std::vector<SimplexId> star;
  std::vector<StarCell> cells;
  std::unordered_map<std::uint64_t, int> local;
  const auto key_of = [](SimplexId s) {
    return (static_cast<std::uint64_t>(s.anchor) << 7) |
           (static_cast<std::uint64_t>(s.type) << 2) |
           static_cast<std::uint64_t>(s.dim);
  };

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> pq_one,
      pq_zero;

  for (std::int64_t v = 0; v < n; ++v) {
    tri.lower_star(v, order, star);
    if (star.size() == 1) continue;  // isolated vertex stays critical

    cells.clear();
    cells.resize(star.size());
    local.clear();
    int vertex_local = -1;
    for (int i = 0; i < static_cast<int>(star.size()); ++i) {
      cells[i].id = star[i];
      cells[i].key = rank_key(tri, order, star[i]);
      local.emplace(key_of(star[i]), i);
      if (star[i].dim == 0) vertex_local = i;
    }

    SimplexId buf[Triangulation::kMaxCofacets];
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
      const int nf = tri.facets(cells[i].id, buf);
      for (int k = 0; k < nf; ++k) {
        auto it = local.find(key_of(buf[k]));
        if (it != local.end()) cells[i].facets[cells[i].facet_count++] = it->second;
      }
      cells[i].unpaired = cells[i].facet_count;
      const int nc = tri.cofacets(cells[i].id, buf);
      for (int k = 0; k < nc; ++k) {
        auto it = local.find(key_of(buf[k]));
        if (it != local.end())
          cells[i].cofacets[cells[i].cofacet_count++] = it->second;
      }
    }

    const auto retire = [&](int i) {
      // A cell leaving the open set releases its cofacets.
      for (int k = 0; k < cells[i].cofacet_count; ++k) {
        StarCell& c = cells[cells[i].cofacets[k]];
        if (--c.unpaired == 1 && c.status == StarCell::kOpen)
          pq_one.emplace(c.key, cells[i].cofacets[k]);
      }
    };

    // The vertex pairs with its lowest edge.
    int delta = -1;
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
      if (cells[i].id.dim != 1) continue;
      if (delta < 0 || cells[i].key < cells[delta].key) delta = i;
    }
    g.pair(cells[vertex_local].id, cells[delta].id);
    cells[vertex_local].status = StarCell::kPaired;
    cells[delta].status = StarCell::kPaired;
    retire(vertex_local);
    retire(delta);

    for (int i = 0; i < static_cast<int>(cells.size()); ++i)
      if (cells[i].id.dim == 1 && i != delta) pq_zero.emplace(cells[i].key, i);

    while (!pq_one.empty() || !pq_zero.empty()) {
      while (!pq_one.empty()) {
        const int i = pq_one.top().second;
        pq_one.pop();
        if (cells[i].status != StarCell::kOpen) continue;
        if (cells[i].unpaired == 0) {
          pq_zero.emplace(cells[i].key, i);
          continue;
        }
        int mate = -1;
        for (int k = 0; k < cells[i].facet_count; ++k)
          if (cells[cells[i].facets[k]].status == StarCell::kOpen) {
            mate = cells[i].facets[k];
            break;
          }
        g.pair(cells[mate].id, cells[i].id);
        cells[i].status = StarCell::kPaired;
        cells[mate].status = StarCell::kPaired;
        retire(i);
        retire(mate);
      }
      while (!pq_zero.empty()) {
        const int i = pq_zero.top().second;
        pq_zero.pop();
        if (cells[i].status != StarCell::kOpen) continue;
        cells[i].status = StarCell::kCritical;
        g.set_critical(cells[i].id);
        retire(i);
        break;
      }
    }
  }
  return g;
}

std::vector<CriticalSimplex> critical_simplices(const DiscreteGradient& g,
                                                const ScalarGrid& grid,
                                                const VertexOrder& order,
                                                int dim) {
  const Triangulation& tri = g.triangulation();
  std::vector<CriticalSimplex> out;
  for (SimplexId s : g.critical_cells(dim)) {
    CriticalSimplex c;
    c.id = s;
    c.value = grid.values[tri.max_rank_vertex(s, order)];
    c.position = simplex_barycenter(tri, grid, s);
    out.push_back(c);
  }
  return out;
}

namespace {

VertexPath walk_down(const DiscreteGradient& g, std::int64_t start) {
  const Triangulation& tri = g.triangulation();
  VertexPath path;
  path.vertices.push_back(start);
  std::int64_t cur = start;
  const std::int64_t budget = tri.vertex_count() + 1;
  while (!g.is_critical(vertex_simplex(cur))) {
    if (static_cast<std::int64_t>(path.vertices.size()) > budget)
      throw std::logic_error("descending path exceeds vertex count; "
                             "gradient field has a loop");
    const SimplexId e = *g.partner(vertex_simplex(cur));
    std::int64_t ends[4];
    tri.vertices_of(e, ends);
    cur = ends[0] == cur ? ends[1] : ends[0];
    path.edges.push_back(e);
    path.vertices.push_back(cur);
  }
  return path;
}

}  // namespace

std::array<VertexPath, 2> descending_paths(const DiscreteGradient& g,
                                           SimplexId saddle) {
  std::int64_t ends[4];
  g.triangulation().vertices_of(saddle, ends);
  return {walk_down(g, ends[0]), walk_down(g, ends[1])};
}

}  // namespace bondmatcher
