#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubeflip/catalog.hpp"
#include "helpers.hpp"

using namespace cubeflip;

TEST_CASE("classify basics") {
  // all 6 facets of the 3-cube
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < 3; ++a) {
    all.push_back({a, 0});
    all.push_back({a, 1});
  }
  auto c = classify(FacetSubset::make(3, all));
  CHECK(c.x == 0);
  CHECK(c.y == 3);

  c = classify(FacetSubset::make(3, {}));
  CHECK(c.x == 3);
  CHECK(c.y == 0);

  c = classify(FacetSubset::make(4, {{0, 0}, {1, 0}, {1, 1}}));
  CHECK(c.x == 2);
  CHECK(c.y == 1);
}

TEST_CASE("facet subset is deduplicated and ordered") {
  auto s = FacetSubset::make(3, {{2, 1}, {0, 0}, {2, 1}, {1, 0}});
  REQUIRE(s.included.size() == 3);
  CHECK(s.included[0] == std::make_pair(0, 0));
  CHECK(s.included[1] == std::make_pair(1, 0));
  CHECK(s.included[2] == std::make_pair(2, 1));
  CHECK_THROWS_AS(FacetSubset::make(2, {{5, 0}}), Error);
}

TEST_CASE("disk oracle on named subsets") {
  // two adjacent facets of the 3-cube, class (1,0)
  CHECK(is_disk(FacetSubset::make(3, {{1, 0}, {2, 0}})));
  // the whole boundary, class (0,3)
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < 3; ++a) {
    all.push_back({a, 0});
    all.push_back({a, 1});
  }
  CHECK_FALSE(is_disk(FacetSubset::make(3, all)));
  // two opposite edges of the square, class (1,1): disconnected
  CHECK_FALSE(is_disk(FacetSubset::make(2, {{1, 0}, {1, 1}})));
  CHECK_THROWS_AS(is_disk(FacetSubset::make(5, {{0, 0}})), Error);
}

TEST_CASE("disk lemma exhaustively for n in 2..4") {
  for (int n = 2; n <= 4; ++n) {
    for (int mask = 0; mask < (1 << (2 * n)); ++mask) {
      std::vector<std::pair<int, int>> f;
      for (int b = 0; b < 2 * n; ++b)
        if ((mask >> b) & 1) f.push_back({b / 2, b % 2});
      auto s = FacetSubset::make(n, f);
      auto cls = classify(s);
      bool want = mask != 0 && cls.x + cls.y < n;
      CHECK(is_disk(s) == want);
      if (mask == 0) CHECK(cls.x + cls.y == n);
    }
  }
}

TEST_CASE("classify complement swaps X and Y") {
  for (int mask = 0; mask < (1 << 8); ++mask) {
    std::vector<std::pair<int, int>> f;
    for (int b = 0; b < 8; ++b)
      if ((mask >> b) & 1) f.push_back({b / 2, b % 2});
    auto s = FacetSubset::make(4, f);
    auto c = classify(s), cc = classify(s.complement());
    CHECK(c.x == cc.y);
    CHECK(c.y == cc.x);
  }
}

TEST_CASE("class enumeration counts") {
  auto e1 = enumerate_classes(1);
  CHECK(e1.classes.size() == 3);
  CHECK(e1.pairs.size() == 2);
  auto e2 = enumerate_classes(2);
  CHECK(e2.classes.size() == 6);
  CHECK(e2.pairs.size() == 4);
  auto e3 = enumerate_classes(3);
  CHECK(e3.classes.size() == 10);
  CHECK(e3.pairs.size() == 6);
  CHECK_THROWS_AS(enumerate_classes(4), Error);
  // deterministic lexicographic order
  CHECK(e2.classes[0].x == 0);
  CHECK(e2.classes[0].y == 0);
  CHECK(e2.classes[1].y == 1);
}

TEST_CASE("pattern cell counts match the paper's flip sizes") {
  struct Row { int d, x, y, nb, na; };
  std::vector<Row> rows = {
      {2, 2, 0, 1, 5}, {2, 1, 0, 2, 4}, {2, 0, 0, 3, 3}, {2, 1, 1, 3, 3},
      {3, 3, 0, 1, 7}, {3, 2, 0, 2, 6}, {3, 1, 0, 3, 5}, {3, 2, 1, 3, 5},
      {3, 0, 0, 4, 4}, {3, 1, 1, 4, 4},
  };
  for (const auto& r : rows) {
    auto p = generate_pattern(r.d, r.x, r.y);
    CHECK((int)p.before.cells.size() == r.nb);
    CHECK((int)p.after.cells.size() == r.na);
    CHECK(p.cls.before_cells() == r.nb);
    CHECK(p.cls.after_cells() == r.na);
  }
}

TEST_CASE("pattern structure: (1,0) hex cycle and (2,1) hex path") {
  auto cyc = generate_pattern(3, 1, 0);
  REQUIRE(cyc.before.cells.size() == 3);
  // pairwise adjacent in a cycle: every pair shares a quad
  auto fl = derived_faces(cyc.before);
  int shared = 0;
  for (const auto& qc : fl.quad_cells)
    if (qc.size() == 2) ++shared;
  CHECK(shared == 3);

  auto path = generate_pattern(3, 2, 1);
  REQUIRE(path.before.cells.size() == 3);
  fl = derived_faces(path.before);
  shared = 0;
  for (const auto& qc : fl.quad_cells)
    if (qc.size() == 2) ++shared;
  CHECK(shared == 2);
}

TEST_CASE("patterns are valid disks with matching boundaries") {
  for (int d = 2; d <= 3; ++d)
    for (int x = 0; x <= d; ++x)
      for (int y = 0; x + y <= d; ++y) {
        auto p = generate_pattern(d, x, y);
        CHECK(validate(p.before).ok);
        CHECK(validate(p.after).ok);
        auto hb = euler_and_homology(p.before);
        auto ha = euler_and_homology(p.after);
        // topological disk/ball: connected with trivial reduced homology
        CHECK(hb.betti[0] == 1);
        CHECK(ha.betti[0] == 1);
        for (int k = 1; k <= d; ++k) {
          CHECK(hb.betti[k] == 0);
          CHECK(ha.betti[k] == 0);
        }
        CHECK(p.new_vertex_count == (int)p.after_interior.size());
        // boundary map is a bijection touching every boundary vertex
        CHECK(p.boundary_map.size() == p.before.boundary_vertices.size());
        CHECK(p.boundary_map.size() == p.after.boundary_vertices.size());
      }
}

TEST_CASE("before of (X,Y) is isomorphic to after of (Y,X)") {
  for (int d = 2; d <= 3; ++d)
    for (int x = 0; x <= d; ++x)
      for (int y = 0; x + y <= d; ++y) {
        auto p = generate_pattern(d, x, y);
        auto q = generate_pattern(d, y, x);
        CHECK(canonical_key(p.before) == canonical_key(q.after));
        CHECK(cubeflip::testing::find_isomorphism(p.before, q.after));
      }
}

TEST_CASE("cell count delta is 2(X-Y)") {
  for (int d = 2; d <= 3; ++d)
    for (int x = 0; x <= d; ++x)
      for (int y = 0; x + y <= d; ++y) {
        auto p = generate_pattern(d, x, y);
        CHECK((int)p.after.cells.size() - (int)p.before.cells.size() == 2 * (x - y));
      }
}
