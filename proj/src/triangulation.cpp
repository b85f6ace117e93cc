#include "bondmatcher/triangulation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bondmatcher {

namespace {

bool is_subset(std::uint8_t a, std::uint8_t b) { return (a & b) == a; }

bool strict_subset(std::uint8_t a, std::uint8_t b) {
  return a != b && is_subset(a, b);
}

}  // namespace

const Triangulation::Tables& Triangulation::tables(bool planar) {
  static const auto build = [](bool flat) {
    auto* t = new Tables();
    const int top_dim = flat ? 2 : 3;
    std::vector<std::uint8_t> allowed;
    for (std::uint8_t m = 1; m < 8; ++m)
      if (!flat || (m & 4u) == 0) allowed.push_back(m);

    // Chains of corner offsets under the componentwise order; one chain
    // per simplex type, anchored at offset 0.
    std::array<std::vector<std::vector<std::uint8_t>>, 4> chains;
    chains[0] = {{0}};
    for (int d = 1; d <= top_dim; ++d) {
      for (const auto& c : chains[d - 1])
        for (std::uint8_t w : allowed)
          if (strict_subset(c.back(), w)) {
            auto ext = c;
            ext.push_back(w);
            chains[d].push_back(std::move(ext));
          }
      std::sort(chains[d].begin(), chains[d].end());
    }

    std::array<std::map<std::vector<std::uint8_t>, int>, 4> index_of;
    for (int d = 0; d <= top_dim; ++d) {
      t->by_dim[d].resize(chains[d].size());
      for (int i = 0; i < static_cast<int>(chains[d].size()); ++i) {
        index_of[d][chains[d][i]] = i;
        TypeInfo& info = t->by_dim[d][i];
        for (int k = 0; k <= d; ++k) info.masks[k] = chains[d][i][k];
        info.top = chains[d][i][d];
        for (int k = 0; k <= d; ++k)
          t->containing[info.masks[k]].emplace_back(
              static_cast<std::int8_t>(d), static_cast<std::int8_t>(i));
      }
    }

    for (int d = 0; d <= top_dim; ++d) {
      for (int i = 0; i < static_cast<int>(chains[d].size()); ++i) {
        const auto& chain = chains[d][i];
        TypeInfo& info = t->by_dim[d][i];

        // Facets: drop one chain element; dropping the anchor re-anchors
        // the chain at the next element.
        if (d > 0) {
          for (int k = 0; k <= d; ++k) {
            std::vector<std::uint8_t> f;
            std::uint8_t shift = 0;
            if (k == 0) {
              shift = chain[1];
              for (int j = 1; j <= d; ++j)
                f.push_back(static_cast<std::uint8_t>(chain[j] ^ shift));
            } else {
              for (int j = 0; j <= d; ++j)
                if (j != k) f.push_back(chain[j]);
            }
            info.facet_refs.push_back(
                {static_cast<std::uint8_t>(index_of[d - 1].at(f)), shift});
          }
        }

        // Cofacets: insert one more offset while keeping a chain. A new
        // minimum shifts the anchor down by the inserted offset.
        if (d < top_dim) {
          for (std::uint8_t w : allowed) {
            if ((w & info.top) != 0) continue;
            std::vector<std::uint8_t> c{0, w};
            for (int j = 1; j <= d; ++j)
              c.push_back(static_cast<std::uint8_t>(chain[j] | w));
            info.cofacet_refs.push_back(
                {static_cast<std::uint8_t>(index_of[d + 1].at(c)), w});
          }
          for (int pos = 0; pos < d; ++pos)
            for (std::uint8_t w : allowed)
              if (strict_subset(chain[pos], w) &&
                  strict_subset(w, chain[pos + 1])) {
                auto c = chain;
                c.insert(c.begin() + pos + 1, w);
                info.cofacet_refs.push_back(
                    {static_cast<std::uint8_t>(index_of[d + 1].at(c)), 0});
              }
          for (std::uint8_t w : allowed)
            if (strict_subset(info.top, w)) {
              auto c = chain;
              c.push_back(w);
              info.cofacet_refs.push_back(
                  {static_cast<std::uint8_t>(index_of[d + 1].at(c)), 0});
            }
        }
      }
    }
    return t;
  };
  static const Tables* flat_tables = build(true);
  static const Tables* full_tables = build(false);
  return planar ? *flat_tables : *full_tables;
}

Triangulation::Triangulation(Eigen::Vector3i dims)
    : dims_(dims), tab_(&tables(dims.z() == 1)) {
  if (dims_.x() < 2 || dims_.y() < 2 || dims_.z() < 1)
    throw std::invalid_argument("triangulation needs at least a 2x2x1 grid");
  for (std::uint8_t m = 0; m < 8; ++m) {
    const Eigen::Vector3i v = mask_vec(m);
    mask_step_[m] = vertex_index(v);
  }
}

int Triangulation::type_count(int dim) const {
  if (dim < 0 || dim > top_dim()) return 0;
  return static_cast<int>(tab_->by_dim[dim].size());
}

std::int64_t Triangulation::simplex_count(int dim) const {
  if (dim < 0 || dim > top_dim()) return 0;
  std::int64_t total = 0;
  for (const TypeInfo& info : tab_->by_dim[dim]) {
    const Eigen::Vector3i top = mask_vec(info.top);
    std::int64_t c = 1;
    for (int ax = 0; ax < 3; ++ax) c *= dims_[ax] - top[ax];
    total += c;
  }
  return total;
}

bool Triangulation::anchor_fits(const Eigen::Vector3i& a,
                                std::uint8_t top) const {
  const Eigen::Vector3i t = mask_vec(top);
  for (int ax = 0; ax < 3; ++ax)
    if (a[ax] < 0 || a[ax] + t[ax] > dims_[ax] - 1) return false;
  return true;
}

bool Triangulation::valid(SimplexId s) const {
  if (s.dim < 0 || s.dim > top_dim() || s.type < 0 ||
      s.type >= type_count(s.dim))
    return false;
  if (s.anchor < 0 || s.anchor >= vertex_count()) return false;
  return anchor_fits(vertex_coords(s.anchor), tab_->by_dim[s.dim][s.type].top);
}

int Triangulation::vertices_of(SimplexId s, std::int64_t out[4]) const {
  const TypeInfo& info = tab_->by_dim[s.dim][s.type];
  for (int k = 0; k <= s.dim; ++k) out[k] = s.anchor + mask_step_[info.masks[k]];
  return s.dim + 1;
}

int Triangulation::facets(SimplexId s, SimplexId out[kMaxFacets]) const {
  if (s.dim <= 0) return 0;
  const TypeInfo& info = tab_->by_dim[s.dim][s.type];
  int n = 0;
  for (const TypeInfo::Ref& r : info.facet_refs)
    out[n++] = SimplexId{static_cast<std::int8_t>(s.dim - 1),
                         static_cast<std::int8_t>(r.type),
                         s.anchor + mask_step_[r.shift]};
  return n;
}

int Triangulation::cofacets(SimplexId s, SimplexId out[kMaxCofacets]) const {
  if (s.dim >= top_dim()) return 0;
  const TypeInfo& info = tab_->by_dim[s.dim][s.type];
  const Eigen::Vector3i a = vertex_coords(s.anchor);
  int n = 0;
  for (const TypeInfo::Ref& r : info.cofacet_refs) {
    const Eigen::Vector3i a2 = a - mask_vec(r.shift);
    if (!anchor_fits(a2, tab_->by_dim[s.dim + 1][r.type].top)) continue;
    out[n++] = SimplexId{static_cast<std::int8_t>(s.dim + 1),
                         static_cast<std::int8_t>(r.type),
                         s.anchor - mask_step_[r.shift]};
  }
  return n;
}

void Triangulation::lower_star(std::int64_t v, const VertexOrder& order,
                               std::vector<SimplexId>& out) const {
  out.clear();
  const std::int64_t rv = order.rank(v);
  const Eigen::Vector3i c = vertex_coords(v);
  const int mask_limit = planar() ? 4 : 8;
  for (int m = 0; m < mask_limit; ++m) {
    const Eigen::Vector3i a = c - mask_vec(m);
    if (a.x() < 0 || a.y() < 0 || a.z() < 0) continue;
    const std::int64_t ai = v - mask_step_[m];
    for (const auto& [dim, type] : tab_->containing[m]) {
      const TypeInfo& info = tab_->by_dim[dim][type];
      if (!anchor_fits(a, info.top)) continue;
      bool v_is_max = true;
      for (int k = 0; k <= dim; ++k) {
        const std::int64_t u = ai + mask_step_[info.masks[k]];
        if (u != v && order.rank(u) > rv) {
          v_is_max = false;
          break;
        }
      }
      if (v_is_max) out.push_back(SimplexId{dim, type, ai});
    }
  }
}

std::int64_t Triangulation::max_rank_vertex(SimplexId s,
                                            const VertexOrder& order) const {
  std::int64_t verts[4] = {-1, -1, -1, -1};
  const int n = vertices_of(s, verts);
  std::int64_t best = verts[0];
  for (int k = 1; k < n; ++k)
    if (order.rank(verts[k]) > order.rank(best)) best = verts[k];
  return best;
}

Eigen::Vector3d simplex_barycenter(const Triangulation& tri,
                                   const ScalarGrid& grid, SimplexId s) {
  std::int64_t verts[4];
  const int n = tri.vertices_of(s, verts);
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  for (int k = 0; k < n; ++k) p += grid.position(verts[k]);
  return p / n;
}

}  // namespace bondmatcher
