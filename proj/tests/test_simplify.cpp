#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "bondmatcher/simplify.hpp"
#include "support/oracles.hpp"

using namespace bondmatcher;

namespace {

// Global minimum plus one 0.036-persistent and one 0.0004-persistent well.
ScalarGrid two_scale_grid() {
  ScalarGrid g;
  g.dims = {5, 2, 1};
  g.spacing = {1.0, 1.0, 1.0};
  g.origin = {0.0, 0.0, 0.0};
  g.values.resize(10);
  const double profile[5] = {-2.0, -0.964, -1.0, -0.5996, -0.6};
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 5; ++x)
      g.values[g.vertex_index({x, y, 0})] = profile[x];
  return g;
}

std::int64_t total_critical(const DiscreteGradient& g) {
  std::int64_t n = 0;
  for (int dim = 0; dim <= g.triangulation().top_dim(); ++dim)
    n += static_cast<std::int64_t>(g.critical_cells(dim).size());
  return n;
}

void check_valid(const DiscreteGradient& g) {
  std::string why;
  CHECK_MESSAGE(test::pairing_symmetric(g, &why), why);
  CHECK_MESSAGE(test::one_state_per_simplex(g, &why), why);
  CHECK_MESSAGE(test::acyclic(g, &why), why);
  CHECK(test::euler_alternating_sum(g) == 1);
}

}  // namespace

TEST_CASE("zero epsilon keeps the gradient untouched") {
  const Eigen::Vector3i dims(4, 4, 3);
  const ScalarGrid g = test::random_grid(dims, 2);
  const Triangulation tri(dims);
  const VertexOrder order(g);
  const DiscreteGradient grad = compute_gradient(tri, order);
  const auto pairs = min_saddle_persistence(tri, g, order);

  const MinimaSimplification res = simplify_minima(grad, pairs, 0.0);
  CHECK(res.cancelled == 0);
  CHECK(res.effective_epsilon == 0.0);
  CHECK(res.warnings.empty());
  for (int dim = 0; dim <= tri.top_dim(); ++dim)
    CHECK(res.gradient.critical_cells(dim) == grad.critical_cells(dim));
}

TEST_CASE("epsilon separates the two persistence scales") {
  const ScalarGrid g = two_scale_grid();
  const Triangulation tri(g.dims);
  const VertexOrder order(g);
  const DiscreteGradient grad = compute_gradient(tri, order);
  const auto pairs = min_saddle_persistence(tri, g, order);
  REQUIRE(grad.critical_cells(0).size() == 3);

  const std::int64_t before = total_critical(grad);
  const MinimaSimplification res = simplify_minima(grad, pairs, 1e-3);
  CHECK(res.cancelled == 1);
  CHECK(res.warnings.empty());
  CHECK(res.gradient.critical_cells(0).size() == 2);
  CHECK(total_critical(res.gradient) == before - 2);
  check_valid(res.gradient);

  // The shallow well at x = 4 is gone, the 0.036 one at x = 2 survives.
  const auto minima = res.gradient.critical_cells(0);
  CHECK(minima[0].anchor == 0);
  CHECK(minima[1].anchor == 2);

  const MinimaSimplification all = simplify_minima(grad, pairs, 0.05);
  CHECK(all.cancelled == 2);
  CHECK(all.gradient.critical_cells(0).size() == 1);
  check_valid(all.gradient);
}

TEST_CASE("target minimum count picks the threshold") {
  const ScalarGrid g = two_scale_grid();
  const Triangulation tri(g.dims);
  const VertexOrder order(g);
  const DiscreteGradient grad = compute_gradient(tri, order);
  const auto pairs = min_saddle_persistence(tri, g, order);

  // Bracket against the pair persistences actually measured on the grid;
  // the decimal profile values are not exactly representable.
  REQUIRE(pairs.size() == 3);
  const double small = pairs[0].persistence;
  const double large = pairs[1].persistence;
  REQUIRE(small < large);

  const MinimaSimplification two = simplify_minima(grad, pairs, 1e9, 2);
  CHECK(two.gradient.critical_cells(0).size() == 2);
  CHECK(two.effective_epsilon > small);
  CHECK(two.effective_epsilon < large);

  const MinimaSimplification one = simplify_minima(grad, pairs, 0.0, 1);
  CHECK(one.gradient.critical_cells(0).size() == 1);
  CHECK(one.effective_epsilon > large);

  const MinimaSimplification three = simplify_minima(grad, pairs, 1e9, 3);
  CHECK(three.cancelled == 0);
  CHECK(three.gradient.critical_cells(0).size() == 3);

  CHECK_THROWS_WITH_AS(simplify_minima(grad, pairs, 0.0, 4),
                       doctest::Contains("unreachable"), std::runtime_error);
  CHECK_THROWS_WITH_AS(simplify_minima(grad, pairs, 0.0, 0),
                       doctest::Contains("unreachable"), std::runtime_error);
}

TEST_CASE("ties between equal persistences are reported, not broken") {
  ScalarGrid g;
  g.dims = {5, 2, 1};
  g.spacing = {1.0, 1.0, 1.0};
  g.origin = {0.0, 0.0, 0.0};
  g.values.resize(10);
  const double profile[5] = {-1.0, -0.5, -3.0, -0.5, -1.0};
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 5; ++x)
      g.values[g.vertex_index({x, y, 0})] = profile[x];

  const Triangulation tri(g.dims);
  const VertexOrder order(g);
  const DiscreteGradient grad = compute_gradient(tri, order);
  const auto pairs = min_saddle_persistence(tri, g, order);
  REQUIRE(grad.critical_cells(0).size() == 3);

  CHECK_THROWS_WITH_AS(simplify_minima(grad, pairs, 0.0, 2),
                       doctest::Contains("separates"), std::runtime_error);
  CHECK(simplify_minima(grad, pairs, 0.0, 1).cancelled == 2);
}

TEST_CASE("saddle-saddle cancellation keeps every invariant") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    CAPTURE(seed);
    const Eigen::Vector3i dims(4, 4, seed % 2 ? 4 : 1);
    const ScalarGrid g = test::random_grid(dims, 9000 + seed);
    const Triangulation tri(dims);
    const VertexOrder order(g);
    const DiscreteGradient grad = compute_gradient(tri, order);

    const SaddleSimplification none = cancel_saddle_saddle(grad, g, order, 0.0);
    CHECK(none.cancelled == 0);
    for (int dim = 0; dim <= tri.top_dim(); ++dim)
      CHECK(none.gradient.critical_cells(dim) == grad.critical_cells(dim));

    const std::int64_t before = total_critical(grad);
    const SaddleSimplification res =
        cancel_saddle_saddle(grad, g, order, 0.25);
    CHECK(res.cancelled >= 0);
    CHECK(total_critical(res.gradient) == before - 2 * res.cancelled);
    CHECK(res.gradient.critical_cells(0) == grad.critical_cells(0));
    check_valid(res.gradient);

    const SaddleSimplification again =
        cancel_saddle_saddle(grad, g, order, 0.25);
    CHECK(again.cancelled == res.cancelled);
    for (int dim = 0; dim <= tri.top_dim(); ++dim)
      CHECK(again.gradient.critical_cells(dim) ==
            res.gradient.critical_cells(dim));
  }
}

TEST_CASE("saddle-saddle cancellation helps after minima simplification") {
  // The full pipeline order: cancel minima first, then clean saddle pairs.
  const Eigen::Vector3i dims(5, 5, 5);
  const ScalarGrid g = test::random_grid(dims, 123);
  const Triangulation tri(dims);
  const VertexOrder order(g);
  const DiscreteGradient grad = compute_gradient(tri, order);
  const auto pairs = min_saddle_persistence(tri, g, order);

  const MinimaSimplification mins = simplify_minima(grad, pairs, 0.4);
  check_valid(mins.gradient);
  const SaddleSimplification res =
      cancel_saddle_saddle(mins.gradient, g, order, 0.3);
  check_valid(res.gradient);
  CHECK(res.gradient.critical_cells(0) == mins.gradient.critical_cells(0));
}
