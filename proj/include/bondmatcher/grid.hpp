#ifndef BONDMATCHER_GRID_HPP
#define BONDMATCHER_GRID_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bondmatcher {

/// Regular scalar grid over an axis-aligned box. Vertices sit at
/// origin + (i,j,k) * spacing, stored row-major with x fastest.
/// Lengths are Angstrom throughout; field values carry no unit.
struct ScalarGrid {
  Eigen::Vector3i dims = Eigen::Vector3i::Zero();
  Eigen::Vector3d spacing = Eigen::Vector3d::Zero();
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();
  Eigen::VectorXd values;

  std::int64_t vertex_count() const {
    return static_cast<std::int64_t>(dims.x()) * dims.y() * dims.z();
  }

  /// True when the grid is a single z-slice and the complex is planar.
  bool planar() const { return dims.z() == 1; }

  std::int64_t vertex_index(const Eigen::Vector3i& c) const {
    return c.x() + static_cast<std::int64_t>(dims.x()) *
                       (c.y() + static_cast<std::int64_t>(dims.y()) * c.z());
  }

  Eigen::Vector3i vertex_coords(std::int64_t v) const {
    Eigen::Vector3i c;
    c.x() = static_cast<int>(v % dims.x());
    v /= dims.x();
    c.y() = static_cast<int>(v % dims.y());
    c.z() = static_cast<int>(v / dims.y());
    return c;
  }

  Eigen::Vector3d position(std::int64_t v) const {
    return origin + vertex_coords(v).cast<double>().cwiseProduct(spacing);
  }

  /// Throws std::invalid_argument when dims, spacing or values are unusable.
  void validate() const;
};

/// Returns a copy of g with all values negated. Applied on ingestion so the
/// pipeline runs on the negated density and chemically relevant points
/// (atoms, bond points) become minima and 1-saddles.
ScalarGrid negate(const ScalarGrid& g);

/// Injective total order on grid vertices: ties in value are broken by
/// vertex index, so every vertex has a distinct rank. This is the symbolic
/// perturbation that makes the field effectively injective.
class VertexOrder {
 public:
  explicit VertexOrder(const ScalarGrid& g);

  std::int64_t rank(std::int64_t v) const { return rank_[v]; }
  /// Vertex holding rank r; inverse of rank().
  std::int64_t vertex_at(std::int64_t r) const { return by_rank_[r]; }
  std::int64_t size() const { return static_cast<std::int64_t>(rank_.size()); }

 private:
  std::vector<std::int64_t> rank_;
  std::vector<std::int64_t> by_rank_;
};

/// One nucleus read from a cube file header.
struct Atom {
  int atomic_number = 0;
  double charge = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();  // Angstrom
};

using AtomList = std::vector<Atom>;

}  // namespace bondmatcher

#endif
