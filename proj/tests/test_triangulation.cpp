#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "bondmatcher/triangulation.hpp"
#include "support/oracles.hpp"

using namespace bondmatcher;
using test::VertexSet;

namespace {

std::int64_t euler(const Triangulation& tri) {
  std::int64_t sum = 0;
  for (int dim = 0; dim <= tri.top_dim(); ++dim)
    sum += (dim % 2 == 0) ? tri.simplex_count(dim) : -tri.simplex_count(dim);
  return sum;
}

// Facets and cofacets recomputed from the brute complex alone.
std::map<VertexSet, std::set<VertexSet>> brute_cofacets(
    const std::set<VertexSet>& complex) {
  std::map<VertexSet, std::set<VertexSet>> out;
  for (const VertexSet& s : complex) {
    out[s];
    if (s.size() == 1) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      VertexSet facet = s;
      facet.erase(facet.begin() + drop);
      out[facet].insert(s);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("simplex census matches the brute-force complex") {
  const std::vector<Eigen::Vector3i> cases = {
      {2, 2, 2}, {3, 3, 3}, {4, 3, 2}, {2, 3, 4}, {2, 2, 1}, {5, 4, 1}};
  for (const Eigen::Vector3i& dims : cases) {
    CAPTURE(dims.x());
    CAPTURE(dims.y());
    CAPTURE(dims.z());
    const Triangulation tri(dims);
    const std::set<VertexSet> brute = test::brute_complex(dims);
    const std::set<VertexSet> mine = test::enumerate_simplices(tri);
    CHECK(mine == brute);

    std::array<std::int64_t, 4> by_dim{0, 0, 0, 0};
    for (const VertexSet& s : brute) ++by_dim[s.size() - 1];
    for (int dim = 0; dim <= tri.top_dim(); ++dim)
      CHECK(tri.simplex_count(dim) == by_dim[dim]);
  }
}

TEST_CASE("hand counts for the smallest cube and square") {
  const Triangulation cube({2, 2, 2});
  CHECK(cube.simplex_count(0) == 8);
  CHECK(cube.simplex_count(1) == 19);
  CHECK(cube.simplex_count(2) == 18);
  CHECK(cube.simplex_count(3) == 6);

  const Triangulation square({2, 2, 1});
  CHECK(square.simplex_count(0) == 4);
  CHECK(square.simplex_count(1) == 5);
  CHECK(square.simplex_count(2) == 2);
}

TEST_CASE("type counts") {
  const Triangulation tri({3, 3, 3});
  CHECK(tri.type_count(0) == 1);
  CHECK(tri.type_count(1) == 7);
  CHECK(tri.type_count(2) == 12);
  CHECK(tri.type_count(3) == 6);

  const Triangulation flat({3, 3, 1});
  CHECK(flat.type_count(0) == 1);
  CHECK(flat.type_count(1) == 3);
  CHECK(flat.type_count(2) == 2);
}

TEST_CASE("euler characteristic of a box is one") {
  CHECK(euler(Triangulation({2, 2, 2})) == 1);
  CHECK(euler(Triangulation({5, 4, 3})) == 1);
  CHECK(euler(Triangulation({16, 16, 16})) == 1);
  CHECK(euler(Triangulation({7, 9, 1})) == 1);
}

TEST_CASE("ids are unique and vertices come out sorted") {
  const Triangulation tri({3, 3, 2});
  const auto index = test::simplex_index(tri);
  std::int64_t total = 0;
  for (int dim = 0; dim <= tri.top_dim(); ++dim) total += tri.simplex_count(dim);
  CHECK(static_cast<std::int64_t>(index.size()) == total);
  for (const auto& [verts, id] : index) {
    CHECK(static_cast<int>(verts.size()) == id.dim + 1);
    for (std::size_t i = 0; i + 1 < verts.size(); ++i)
      CHECK(verts[i] < verts[i + 1]);
    CHECK(id.anchor == verts.front());
  }
}

TEST_CASE("facets and cofacets agree with the brute complex") {
  const std::vector<Eigen::Vector3i> cases = {{4, 4, 4}, {4, 4, 1}, {2, 2, 2}};
  for (const Eigen::Vector3i& dims : cases) {
    CAPTURE(dims.x());
    CAPTURE(dims.z());
    const Triangulation tri(dims);
    const auto index = test::simplex_index(tri);
    const auto cofacet_oracle = brute_cofacets(test::brute_complex(dims));

    for (const auto& [verts, id] : index) {
      SimplexId fac[Triangulation::kMaxFacets];
      const int nf = tri.facets(id, fac);
      std::set<VertexSet> got;
      for (int i = 0; i < nf; ++i) {
        CHECK(tri.valid(fac[i]));
        std::int64_t fv[4];
        const int n = tri.vertices_of(fac[i], fv);
        got.insert(VertexSet(fv, fv + n));
      }
      std::set<VertexSet> expected;
      if (verts.size() > 1)
        for (std::size_t drop = 0; drop < verts.size(); ++drop) {
          VertexSet facet = verts;
          facet.erase(facet.begin() + drop);
          expected.insert(facet);
        }
      CHECK(got == expected);
      CHECK(nf == static_cast<int>(expected.size()));

      SimplexId cof[Triangulation::kMaxCofacets];
      const int nc = tri.cofacets(id, cof);
      std::set<VertexSet> got_cof;
      for (int i = 0; i < nc; ++i) {
        CHECK(tri.valid(cof[i]));
        std::int64_t cv[4];
        const int n = tri.vertices_of(cof[i], cv);
        got_cof.insert(VertexSet(cv, cv + n));
      }
      CHECK(got_cof == cofacet_oracle.at(verts));
      CHECK(nc == static_cast<int>(cofacet_oracle.at(verts).size()));
    }
  }
}

TEST_CASE("an interior triangle has two tetrahedron cofacets") {
  const Triangulation tri({4, 4, 4});
  const auto index = test::simplex_index(tri);
  int two = 0, one = 0;
  for (const auto& [verts, id] : index) {
    if (id.dim != 2) continue;
    SimplexId cof[Triangulation::kMaxCofacets];
    const int nc = tri.cofacets(id, cof);
    CHECK(nc >= 1);
    CHECK(nc <= 2);
    (nc == 2 ? two : one) += 1;
  }
  CHECK(two > 0);
  CHECK(one > 0);
}

TEST_CASE("lower stars partition the complex") {
  const Eigen::Vector3i dims(3, 3, 3);
  const Triangulation tri(dims);
  ScalarGrid g = test::random_grid(dims, 20260825);
  const VertexOrder order(g);

  std::int64_t total = 0;
  for (int dim = 0; dim <= tri.top_dim(); ++dim) total += tri.simplex_count(dim);

  std::set<std::pair<int, std::int64_t>> seen;  // (dim, slot)
  std::vector<SimplexId> star;
  std::int64_t star_sum = 0;
  for (std::int64_t v = 0; v < tri.vertex_count(); ++v) {
    tri.lower_star(v, order, star);
    star_sum += static_cast<std::int64_t>(star.size());
    bool has_vertex = false;
    for (const SimplexId& s : star) {
      CHECK(tri.valid(s));
      CHECK(tri.max_rank_vertex(s, order) == v);
      CHECK(seen.emplace(s.dim, tri.slot(s)).second);
      if (s.dim == 0) {
        has_vertex = true;
        CHECK(s.anchor == v);
      }
    }
    CHECK(has_vertex);
  }
  CHECK(star_sum == total);
}

TEST_CASE("max rank vertex is the rank argmax") {
  const Eigen::Vector3i dims(3, 2, 4);
  const Triangulation tri(dims);
  const ScalarGrid g = test::random_grid(dims, 7);
  const VertexOrder order(g);
  for (int dim = 0; dim <= tri.top_dim(); ++dim)
    for (std::int64_t slot = 0; slot < tri.slot_count(dim); ++slot) {
      const SimplexId s = tri.from_slot(dim, slot);
      if (!tri.valid(s)) continue;
      std::int64_t verts[4];
      const int n = tri.vertices_of(s, verts);
      std::int64_t best = verts[0];
      for (int i = 1; i < n; ++i)
        if (order.rank(verts[i]) > order.rank(best)) best = verts[i];
      CHECK(tri.max_rank_vertex(s, order) == best);
    }
}

TEST_CASE("barycenter averages vertex positions") {
  const Eigen::Vector3i dims(3, 3, 3);
  const Triangulation tri(dims);
  ScalarGrid g = test::random_grid(dims, 3);
  g.spacing = {0.5, 1.0, 2.0};
  g.origin = {-1.0, 0.0, 1.0};

  for (int dim = 0; dim <= tri.top_dim(); ++dim) {
    std::int64_t picked = -1;
    for (std::int64_t slot = 0; slot < tri.slot_count(dim) && picked < 0;
         ++slot)
      if (tri.valid(tri.from_slot(dim, slot))) picked = slot;
    REQUIRE(picked >= 0);
    const SimplexId s = tri.from_slot(dim, picked);
    std::int64_t verts[4];
    const int n = tri.vertices_of(s, verts);
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (int i = 0; i < n; ++i) mean += g.position(verts[i]);
    mean /= double(n);
    CHECK((simplex_barycenter(tri, g, s) - mean).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("invalid ids are rejected") {
  const Triangulation tri({3, 3, 3});
  CHECK_FALSE(tri.valid(SimplexId{}));
  CHECK_FALSE(tri.valid(SimplexId{0, 0, -1}));
  CHECK_FALSE(tri.valid(SimplexId{0, 0, tri.vertex_count()}));
  // The top corner anchors no cube, so no tetrahedron can sit there.
  CHECK_FALSE(tri.valid(SimplexId{3, 0, tri.vertex_count() - 1}));
  CHECK(tri.valid(SimplexId{0, 0, tri.vertex_count() - 1}));
}
