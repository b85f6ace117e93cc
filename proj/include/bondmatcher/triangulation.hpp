#ifndef BONDMATCHER_TRIANGULATION_HPP
#define BONDMATCHER_TRIANGULATION_HPP

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bondmatcher/grid.hpp"

namespace bondmatcher {

/// Canonical id of one simplex of the Freudenthal triangulation.
///
/// Every simplex of the triangulation is a chain of unit-cube corners under
/// the componentwise order, anchored at its minimal vertex. The id stores the
/// anchoring vertex (as a linear grid index) plus a small type enumerating
/// the chain shape, so the triangulation itself is never materialized.
struct SimplexId {
  std::int8_t dim = -1;
  std::int8_t type = 0;
  std::int64_t anchor = -1;

  bool valid() const { return dim >= 0; }

  friend bool operator==(const SimplexId& a, const SimplexId& b) {
    return a.dim == b.dim && a.type == b.type && a.anchor == b.anchor;
  }
  friend bool operator!=(const SimplexId& a, const SimplexId& b) {
    return !(a == b);
  }
  friend bool operator<(const SimplexId& a, const SimplexId& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    return a.type < b.type;
  }
};

inline SimplexId vertex_simplex(std::int64_t v) { return SimplexId{0, 0, v}; }

/// On-the-fly Freudenthal (Kuhn) triangulation of a regular grid.
///
/// Each cubic cell is split into 6 tetrahedra sharing the main diagonal from
/// the cell's lexicographically smallest corner to its largest; a planar grid
/// (dims.z == 1) is split into 2 triangles per square. Facet, cofacet and
/// star queries are pure index arithmetic driven by small per-type tables.
class Triangulation {
 public:
  static constexpr int kMaxFacets = 4;
  static constexpr int kMaxCofacets = 14;
  static constexpr int kMaxStar = 96;

  explicit Triangulation(Eigen::Vector3i dims);

  const Eigen::Vector3i& dims() const { return dims_; }
  bool planar() const { return dims_.z() == 1; }
  int top_dim() const { return planar() ? 2 : 3; }

  std::int64_t vertex_count() const {
    return static_cast<std::int64_t>(dims_.x()) * dims_.y() * dims_.z();
  }

  std::int64_t vertex_index(const Eigen::Vector3i& c) const {
    return c.x() + static_cast<std::int64_t>(dims_.x()) *
                       (c.y() + static_cast<std::int64_t>(dims_.y()) * c.z());
  }

  Eigen::Vector3i vertex_coords(std::int64_t v) const {
    Eigen::Vector3i c;
    c.x() = static_cast<int>(v % dims_.x());
    v /= dims_.x();
    c.y() = static_cast<int>(v % dims_.y());
    c.z() = static_cast<int>(v / dims_.y());
    return c;
  }

  int type_count(int dim) const;

  /// Number of d-simplices, from the per-type closed form.
  std::int64_t simplex_count(int dim) const;

  bool valid(SimplexId s) const;

  /// Writes the vertices of s in strictly increasing index order.
  /// Returns dim + 1.
  int vertices_of(SimplexId s, std::int64_t out[4]) const;

  int facets(SimplexId s, SimplexId out[kMaxFacets]) const;
  int cofacets(SimplexId s, SimplexId out[kMaxCofacets]) const;

  /// All simplices whose highest-ranked vertex is v. The lower stars of all
  /// vertices partition the complex.
  void lower_star(std::int64_t v, const VertexOrder& order,
                  std::vector<SimplexId>& out) const;

  /// Vertex of s with the highest rank.
  std::int64_t max_rank_vertex(SimplexId s, const VertexOrder& order) const;

  /// Dense per-dimension slot for state arrays: anchor * type_count + type.
  std::int64_t slot(SimplexId s) const {
    return s.anchor * type_count(s.dim) + s.type;
  }
  std::int64_t slot_count(int dim) const {
    return vertex_count() * type_count(dim);
  }
  SimplexId from_slot(int dim, std::int64_t slot) const {
    const int nt = type_count(dim);
    return SimplexId{static_cast<std::int8_t>(dim),
                     static_cast<std::int8_t>(slot % nt), slot / nt};
  }

 private:
  struct TypeInfo {
    std::array<std::uint8_t, 4> masks{};  // chain offsets, masks[0] == 0
    std::uint8_t top = 0;
    struct Ref {
      std::uint8_t type;
      std::uint8_t shift;  // facet: anchor += shift; cofacet: anchor -= shift
    };
    std::vector<Ref> facet_refs;
    std::vector<Ref> cofacet_refs;
  };
  struct Tables {
    std::array<std::vector<TypeInfo>, 4> by_dim;
    // For each corner offset mask, the (dim, type) pairs whose chain holds it.
    std::array<std::vector<std::pair<std::int8_t, std::int8_t>>, 8> containing;
  };

  static const Tables& tables(bool planar);

  bool anchor_fits(const Eigen::Vector3i& a, std::uint8_t top) const;

  Eigen::Vector3i dims_;
  const Tables* tab_;
  std::array<std::int64_t, 8> mask_step_{};  // linear index step per mask
};

/// Mean of the simplex vertex positions, in Angstrom.
Eigen::Vector3d simplex_barycenter(const Triangulation& tri,
                                   const ScalarGrid& grid, SimplexId s);

inline Eigen::Vector3i mask_vec(std::uint8_t m) {
  return Eigen::Vector3i(m & 1, (m >> 1) & 1, (m >> 2) & 1);
}

}  // namespace bondmatcher

#endif
