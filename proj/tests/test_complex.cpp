#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubeflip/complex.hpp"
#include "helpers.hpp"

using namespace cubeflip;

TEST_CASE("cube boundary validates") {
  auto c = reference_cube();
  auto rep = validate(c);
  CHECK(rep.ok);
  CHECK(is_closed(c));
  CHECK(is_connected(c));
}

TEST_CASE("two quads sharing two non-adjacent edges violate") {
  CubicalComplex c;
  c.dim = 2;
  c.vertex_count = 4;
  c.cells.push_back({0, 1, 2, 3});
  c.cells.push_back({1, 0, 3, 2});  // shares edges (0,1) and (2,3)
  auto rep = validate(c);
  CHECK_FALSE(rep.ok);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.rule == "cell.intersection") found = true;
  CHECK(found);
}

TEST_CASE("bicuboid validates and its boundary counts are right") {
  auto b = reference_bicuboid();
  CHECK(validate(b).ok);
  auto fl = derived_faces(b);
  CHECK(fl.boundary_quads.size() == 10);
  CHECK(fl.boundary_vertex_ids.size() == 12);
  CHECK(fl.boundary_edges.size() == 20);
  // cross-check: boundary is a sphere
  CHECK((int)fl.boundary_vertex_ids.size() - (int)fl.boundary_edges.size() +
            (int)fl.boundary_quads.size() ==
        2);
}

TEST_CASE("derived faces of reference shapes") {
  auto cube = reference_cube();
  auto fl = derived_faces(cube);
  CHECK(fl.vertices.size() == 8);
  CHECK(fl.edges.size() == 12);
  CHECK(fl.quads.size() == 6);
  CHECK(fl.boundary_edges.empty());

  auto hex = reference_hex_cell();
  fl = derived_faces(hex);
  CHECK(fl.vertices.size() == 8);
  CHECK(fl.edges.size() == 12);
  CHECK(fl.quads.size() == 6);
  CHECK(fl.boundary_quads.size() == 6);
}

TEST_CASE("euler and homology") {
  auto cube = reference_cube();
  auto h = euler_and_homology(cube);
  CHECK(h.euler == 2);
  CHECK(h.betti[0] == 1);
  CHECK(h.betti[1] == 0);
  CHECK(h.betti[2] == 1);

  auto q = single_quad();
  h = euler_and_homology(q);
  CHECK(h.euler == 1);
  CHECK(h.betti[0] == 1);
  CHECK(h.betti[1] == 0);
}

TEST_CASE("quad torus has euler characteristic 0") {
  // 3x3 grid torus
  int n = 3;
  CubicalComplex c;
  c.dim = 2;
  c.vertex_count = n * n;
  auto id = [&](int i, int j) { return (i % n) * n + (j % n); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c.cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  CHECK(validate(c).ok);
  auto h = euler_and_homology(c);
  CHECK(h.euler == 0);
  CHECK(h.betti[0] == 1);
  CHECK(h.betti[1] == 2);
  CHECK(h.betti[2] == 1);
}

TEST_CASE("canonical key is invariant under relabeling") {
  auto cube = reference_cube();
  auto key = canonical_key(cube);

  CubicalComplex relabeled = cube;
  std::vector<int> perm = {5, 2, 7, 0, 3, 6, 1, 4};
  for (auto& cell : relabeled.cells)
    for (int& v : cell) v = perm[v];
  CHECK(canonical_key(relabeled) == key);

  // different cell counts give different keys
  auto hexc = reference_hex_cell();
  CHECK(canonical_key(hexc) != key);
}

TEST_CASE("canonical key equals mirror image") {
  auto cube = reference_cube();
  CubicalComplex mirror = cube;
  for (auto& cell : mirror.cells) std::reverse(cell.begin(), cell.end());
  CHECK(canonical_key(mirror) == canonical_key(cube));
}

TEST_CASE("boundary markers distinguish keys") {
  auto q = single_quad();
  auto k1 = canonical_key(q);
  CubicalComplex q2 = q;
  q2.boundary_vertices.clear();
  CHECK_FALSE(canonical_key(q2) == k1);
}

TEST_CASE("canonical key agrees with backtracking matcher on perturbed meshes") {
  // A handful of small meshes; keys equal iff an explicit isomorphism exists.
  std::vector<CubicalComplex> zoo;
  zoo.push_back(reference_cube());
  zoo.push_back(reference_hex_cell());
  zoo.push_back(reference_bicuboid());
  zoo.push_back(single_quad());
  {
    CubicalComplex strip;  // two quads sharing an edge
    strip.dim = 2;
    strip.vertex_count = 6;
    strip.cells.push_back({0, 1, 2, 3});
    strip.cells.push_back({1, 4, 5, 2});
    zoo.push_back(strip);
  }
  for (size_t i = 0; i < zoo.size(); ++i)
    for (size_t j = 0; j < zoo.size(); ++j) {
      bool same_key = canonical_key(zoo[i]) == canonical_key(zoo[j]);
      bool iso = cubeflip::testing::find_isomorphism(zoo[i], zoo[j]);
      CHECK(same_key == iso);
    }
}

TEST_CASE("closed dim-2 complexes satisfy E=2F and V=chi+F") {
  for (auto c : {reference_cube()}) {
    auto fl = derived_faces(c);
    auto h = euler_and_homology(c);
    CHECK((int)fl.edges.size() == 2 * (int)c.cells.size());
    CHECK((long long)fl.vertices.size() == h.euler + (long long)c.cells.size());
  }
}

TEST_CASE("orientation: consistent orientation is found for the cube") {
  auto cube = reference_cube();
  CHECK(orient_consistently(cube));
  CHECK(validate(cube).ok);
}

TEST_CASE("compact_vertices renumbers and preserves structure") {
  CubicalComplex c;
  c.dim = 2;
  c.vertex_count = 10;
  c.cells.push_back({2, 5, 7, 9});
  c.boundary_vertices = {2, 5, 7, 9};
  auto key = canonical_key(c);
  auto remap = compact_vertices(c);
  CHECK(c.vertex_count == 4);
  CHECK(remap[2] == 0);
  CHECK(remap[9] == 3);
  CHECK(canonical_key(c) == key);
}
