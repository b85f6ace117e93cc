#ifndef BONDMATCHER_ASSIGNMENT_HPP
#define BONDMATCHER_ASSIGNMENT_HPP

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace bondmatcher {

/// Two ensemble members cannot be matched because their node counts differ.
class SizeMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NodeAssignment {
  std::vector<int> map;  // map[i] = index in the second set
  double energy = 0.0;   // sum of Euclidean displacements
};

/// Exact minimizer of the total node displacement sum_i |a_i - b_map(i)|
/// over bijections, via a cubic shortest-augmenting-path assignment solver
/// on the full distance matrix. Among equal-cost optima the
/// lexicographically smallest map is returned. Throws std::invalid_argument
/// when the sets differ in size, naming both counts.
NodeAssignment optimal_assignment(const std::vector<Eigen::Vector3d>& a,
                                  const std::vector<Eigen::Vector3d>& b);

/// Same solver on an explicit square cost matrix.
NodeAssignment optimal_assignment(const Eigen::MatrixXd& cost);

}  // namespace bondmatcher

#endif
