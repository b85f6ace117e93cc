#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bondmatcher/synth.hpp"

using namespace bondmatcher;

namespace {

GridSpec small_spec() {
  GridSpec spec;
  spec.dims = {12, 12, 12};
  spec.spacing = {0.5, 0.5, 0.5};
  spec.origin = {0.0, 0.0, 0.0};
  return spec;
}

const std::string kFixtureJson = R"({
  "kernel": "gaussian",
  "sites": [
    {"pos": [2.0, 2.0, 2.0], "amp": 8.0, "decay": 0.4, "kernel": "exponential"},
    {"pos": [3.0, 2.0, 2.0], "amp": 2.0, "decay": 0.5}
  ],
  "grid": {"dims": [12, 12, 12], "spacing": [0.5, 0.5, 0.5], "origin": [0.0, 0.0, 0.0]},
  "ensemble": {"directions": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]], "steps": 5, "scale": 0.1},
  "seed": 42,
  "noise_amplitude": 0.0
})";

}  // namespace

TEST_CASE("rasterize evaluates the negated kernel mixture") {
  SiteModel model;
  model.sites.push_back({{2.0, 2.0, 2.0}, 3.0, 0.7, std::nullopt});
  model.sites.push_back({{4.0, 2.0, 2.0}, 1.5, 0.5, Kernel::Exponential});
  model.default_kernel = Kernel::Gaussian;

  const ScalarGrid g = rasterize(model, small_spec());
  g.validate();
  for (std::int64_t v = 0; v < g.vertex_count(); ++v) {
    const Eigen::Vector3d p = g.position(v);
    const double r1 = (p - Eigen::Vector3d(2, 2, 2)).norm() / 0.7;
    const double r2 = (p - Eigen::Vector3d(4, 2, 2)).norm() / 0.5;
    const double expected = -(3.0 * std::exp(-r1 * r1) + 1.5 * std::exp(-r2));
    CHECK(g.values[v] == doctest::Approx(expected).epsilon(1e-14));
    CHECK(g.values[v] < 0.0);
  }
}

TEST_CASE("the deepest vertex sits at the strongest site") {
  SiteModel model;
  model.sites.push_back({{3.0, 2.5, 1.5}, 5.0, 0.6, std::nullopt});
  const ScalarGrid g = rasterize(model, small_spec());
  std::int64_t best = 0;
  for (std::int64_t v = 1; v < g.vertex_count(); ++v)
    if (g.values[v] < g.values[best]) best = v;
  const Eigen::Vector3d p = g.position(best);
  CHECK((p - Eigen::Vector3d(3.0, 2.5, 1.5)).cwiseAbs().maxCoeff() <= 0.5);
}

TEST_CASE("noise is seeded and bounded") {
  SiteModel model;
  model.sites.push_back({{3.0, 3.0, 3.0}, 2.0, 1.0, std::nullopt});
  const ScalarGrid clean = rasterize(model, small_spec());
  const ScalarGrid a = rasterize(model, small_spec(), 1e-3, 7);
  const ScalarGrid b = rasterize(model, small_spec(), 1e-3, 7);
  const ScalarGrid c = rasterize(model, small_spec(), 1e-3, 8);

  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  double max_dev = 0.0;
  for (std::int64_t v = 0; v < clean.vertex_count(); ++v)
    max_dev = std::max(max_dev, std::abs(a.values[v] - clean.values[v]));
  CHECK(max_dev <= 1e-3);
  CHECK(max_dev > 0.0);
}

TEST_CASE("sweep members displace sites linearly") {
  DisplacementEnsemble ens;
  ens.base.sites.push_back({{1.0, 1.0, 1.0}, 1.0, 1.0, std::nullopt});
  ens.base.sites.push_back({{3.0, 1.0, 1.0}, 2.0, 0.5, std::nullopt});
  ens.directions = {{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  ens.steps = 21;
  ens.scale = 0.4;

  // The middle member is the base exactly.
  const SiteModel mid = member_model(ens, 10);
  CHECK(mid.sites[0].position == ens.base.sites[0].position);
  CHECK(mid.sites[1].position == ens.base.sites[1].position);

  const SiteModel lo = member_model(ens, 0);
  CHECK(lo.sites[1].position.y() == doctest::Approx(1.0 - 0.4 * 10.0));
  const SiteModel hi = member_model(ens, 20);
  CHECK(hi.sites[1].position.y() == doctest::Approx(1.0 + 0.4 * 10.0));
  CHECK(lo.sites[0].position == ens.base.sites[0].position);

  CHECK_THROWS_AS(member_model(ens, -1), std::invalid_argument);
  CHECK_THROWS_AS(member_model(ens, 21), std::invalid_argument);

  ens.directions.pop_back();
  CHECK_THROWS_AS(member_model(ens, 0), std::invalid_argument);
}

TEST_CASE("fixture specs parse") {
  const Fixture fx = parse_fixture(kFixtureJson, "demo");
  CHECK(fx.name == "demo");
  CHECK(fx.seed == 42);
  CHECK(fx.noise_amplitude == 0.0);
  CHECK(fx.model.default_kernel == Kernel::Gaussian);
  REQUIRE(fx.model.sites.size() == 2);
  CHECK(fx.model.sites[0].kernel == Kernel::Exponential);
  CHECK_FALSE(fx.model.sites[1].kernel.has_value());
  CHECK(fx.model.sites[0].amplitude == 8.0);
  CHECK(fx.grid.dims == Eigen::Vector3i(12, 12, 12));
  REQUIRE(fx.ensemble.has_value());
  CHECK(fx.ensemble->steps == 5);
  CHECK(fx.ensemble->scale == 0.1);
  CHECK(fx.ensemble->base.sites.size() == 2);

  const std::vector<ScalarGrid> members = fixture_members(fx);
  CHECK(members.size() == 5);
  CHECK(members[0].values != members[1].values);

  // Without the ensemble block there is exactly one member.
  Fixture single = fx;
  single.ensemble.reset();
  CHECK(fixture_members(single).size() == 1);
}

TEST_CASE("malformed fixture specs are rejected with context") {
  CHECK_THROWS_WITH_AS(parse_fixture("{", "x"), doctest::Contains("x"),
                       std::runtime_error);
  CHECK_THROWS_AS(parse_fixture(R"({"sites": []})", "x"), std::runtime_error);
  CHECK_THROWS_WITH_AS(
      parse_fixture(
          R"({"kernel": "triangular", "sites": [{"pos": [0,0,0], "amp": 1, "decay": 1}],
              "grid": {"dims": [4,4,4], "spacing": [1,1,1], "origin": [0,0,0]}})",
          "x"),
      doctest::Contains("kernel"), std::runtime_error);
  CHECK_THROWS_AS(
      parse_fixture(
          R"({"sites": [{"pos": [0,0,0], "amp": -1, "decay": 1}],
              "grid": {"dims": [4,4,4], "spacing": [1,1,1], "origin": [0,0,0]}})",
          "x"),
      std::runtime_error);
  CHECK_THROWS_AS(
      parse_fixture(
          R"({"sites": [{"pos": [0,0,0], "amp": 1, "decay": 0}],
              "grid": {"dims": [4,4,4], "spacing": [1,1,1], "origin": [0,0,0]}})",
          "x"),
      std::runtime_error);
}
