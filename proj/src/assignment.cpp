#include "bondmatcher/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bondmatcher {

namespace {

/// Shortest augmenting path assignment (Jonker-Volgenant scheme), O(n^3).
/// Returns the row-to-column map of one optimal assignment.
std::vector<int> solve_lap(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);  // 1-based column -> row
  std::vector<int> way(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> map(n, -1);
  for (int j = 1; j <= n; ++j) map[match[j] - 1] = j - 1;
  return map;
}

double map_energy(const Eigen::MatrixXd& cost, const std::vector<int>& map) {
  double e = 0.0;
  for (int i = 0; i < static_cast<int>(map.size()); ++i) e += cost(i, map[i]);
  return e;
}

}  // namespace

NodeAssignment optimal_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols())
    throw std::invalid_argument("assignment cost matrix must be square");
  const int n = static_cast<int>(cost.rows());
  NodeAssignment out;
  if (n == 0) return out;

  std::vector<int> base = solve_lap(cost);
  const double optimum = map_energy(cost, base);
  const double tol = 1e-9 * std::max(1.0, std::abs(optimum));

  // Lexicographic refinement: fix columns row by row, keeping optimality.
  // Ties between equal-cost optima are broken toward the smallest map.
  std::vector<int> fixed(n, -1);
  std::vector<char> taken(n, 0);
  double prefix = 0.0;
  for (int i = 0; i < n; ++i) {
    int chosen = -1;
    double chosen_rest = 0.0;
    for (int j = 0; j < n; ++j) {
      if (taken[j]) continue;
      // Cost of the best completion with map[i] = j.
      const int m = n - i - 1;
      double rest = 0.0;
      if (m > 0) {
        Eigen::MatrixXd sub(m, m);
        int rr = 0;
        for (int r = i + 1; r < n; ++r, ++rr) {
          int cc = 0;
          for (int c = 0; c < n; ++c) {
            if (taken[c] || c == j) continue;
            sub(rr, cc++) = cost(r, c);
          }
        }
        rest = map_energy(sub, solve_lap(sub));
      }
      if (prefix + cost(i, j) + rest <= optimum + tol) {
        chosen = j;
        chosen_rest = rest;
        break;
      }
      (void)chosen_rest;
    }
    if (chosen < 0) {
      // Numerical fallback: keep the unrefined optimum from this row on.
      for (int r = i; r < n; ++r) fixed[r] = base[r];
      break;
    }
    fixed[i] = chosen;
    taken[chosen] = 1;
    prefix += cost(i, chosen);
  }
  // The fallback path may leave earlier rows refined and later rows from the
  // base solution; if that collides, discard the refinement entirely.
  {
    std::vector<char> seen(n, 0);
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      if (fixed[i] < 0 || seen[fixed[i]]) {
        ok = false;
        break;
      }
      seen[fixed[i]] = 1;
    }
    if (!ok) fixed = base;
  }

  out.map = fixed;
  out.energy = map_energy(cost, out.map);
  return out;
}

NodeAssignment optimal_assignment(const std::vector<Eigen::Vector3d>& a,
                                  const std::vector<Eigen::Vector3d>& b) {
  if (a.size() != b.size())
    throw SizeMismatchError(
        "node sets differ in size: " + std::to_string(a.size()) + " vs " +
        std::to_string(b.size()) + "; graphs cannot be matched");
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd cost(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cost(i, j) = (a[i] - b[j]).norm();
  return optimal_assignment(cost);
}

}  // namespace bondmatcher
