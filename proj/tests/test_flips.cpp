#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubeflip/flips.hpp"
#include "helpers.hpp"

using namespace cubeflip;

namespace {

// Brute-force oracle: adjacent face pairs of the cube.
int cube_adjacent_pairs() {
  auto cube = reference_cube();
  int count = 0;
  for (size_t i = 0; i < cube.cells.size(); ++i)
    for (size_t j = i + 1; j < cube.cells.size(); ++j) {
      std::set<int> a(cube.cells[i].begin(), cube.cells[i].end());
      int shared = 0;
      for (int v : cube.cells[j])
        if (a.count(v)) ++shared;
      if (shared == 2) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("site counts on the cube") {
  auto cube = reference_cube();
  CHECK(cube_adjacent_pairs() == 12);
  CHECK(find_sites(cube, {2, 1, 0}).size() == 12);
  CHECK(find_sites(cube, {2, 2, 0}).size() == 6);
  CHECK(find_sites(cube, {2, 0, 2}).size() == 0);
}

TEST_CASE("(2,0) flip on the cube gives a 10-quad sphere with 12 vertices") {
  auto cube = reference_cube();
  auto sites = find_sites(cube, {2, 2, 0});
  REQUIRE(sites.size() == 6);
  auto r = apply_flip(cube, sites[0]);
  CHECK(r.mesh.cells.size() == 10);
  CHECK(r.mesh.vertex_count == 12);
  CHECK(validate(r.mesh).ok);
  auto h = euler_and_homology(r.mesh);
  CHECK(h.euler == 2);

  // inverse returns a mesh with the cube's key
  auto back = apply_flip(r.mesh, r.inverse_site);
  CHECK(canonical_key(back.mesh) == canonical_key(cube));
}

TEST_CASE("single hex pillowing gives 7 hexes") {
  auto hex = reference_hex_cell();
  auto sites = find_sites(hex, {3, 3, 0});
  REQUIRE(sites.size() == 1);
  auto r = apply_flip(hex, sites[0]);
  CHECK(r.mesh.cells.size() == 7);
  CHECK(validate(r.mesh).ok);

  auto p = pillow(hex, 0);
  CHECK(canonical_key(p.mesh) == canonical_key(r.mesh));
  auto back = apply_flip(p.mesh, p.inverse_site);
  CHECK(canonical_key(back.mesh) == canonical_key(hex));
}

TEST_CASE("pillowing both cells of a bicuboid gives 14 hexes") {
  auto b = reference_bicuboid();
  auto r1 = pillow(b, 0);
  // the surviving original cell sits at index 0 after the first pillow
  auto r2 = pillow(r1.mesh, 0);
  CHECK(r2.mesh.cells.size() == 14);
  CHECK(validate(r2.mesh).ok);
}

TEST_CASE("parity change on the cube") {
  auto cube = reference_cube();
  auto sites = find_parity_sites(cube);
  CHECK(sites.size() == 12);
  auto r = apply_parity_change(cube, sites[0]);
  CHECK(r.mesh.cells.size() == 7);
  CHECK(validate(r.mesh).ok);
  CHECK(euler_and_homology(r.mesh).euler == 2);

  // a second parity change gives 8 quads: parity back to even
  auto sites2 = find_parity_sites(r.mesh);
  REQUIRE(!sites2.empty());
  auto r2 = apply_parity_change(r.mesh, sites2[0]);
  CHECK(r2.mesh.cells.size() == 8);
  CHECK(validate(r2.mesh).ok);
}

TEST_CASE("1-quad disk has no parity site") {
  auto q = single_quad();
  CHECK(find_parity_sites(q).empty());
}

TEST_CASE("parity inverse undoes parity change") {
  auto cube = reference_cube();
  auto r = apply_parity_change(cube, find_parity_sites(cube)[0]);
  auto inv_sites = find_parity_inverse_sites(r.mesh);
  REQUIRE(!inv_sites.empty());
  bool recovered = false;
  for (const auto& s : inv_sites) {
    try {
      auto back = apply_parity_change_inverse(r.mesh, s);
      if (canonical_key(back.mesh) == canonical_key(cube)) recovered = true;
    } catch (const Error&) {
    }
  }
  CHECK(recovered);
}

TEST_CASE("grid refinement") {
  auto cube = reference_cube();
  auto r3 = grid_refine(cube, 3);
  CHECK(r3.cells.size() == 54);
  CHECK(validate(r3).ok);
  CHECK(euler_and_homology(r3).euler == 2);

  auto hex = reference_hex_cell();
  auto h2 = grid_refine(hex, 2);
  CHECK(h2.cells.size() == 8);
  CHECK(validate(h2).ok);

  auto same = grid_refine(cube, 1);
  CHECK(same.cells == cube.cells);

  auto bi = grid_refine(reference_bicuboid(), 2);
  CHECK(bi.cells.size() == 16);
  CHECK(validate(bi).ok);
}

TEST_CASE("grid refinement carries coordinates") {
  MeshFile m;
  m.complex = reference_hex_cell();
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  m.coords = pts;
  auto r = grid_refine(m, 2);
  REQUIRE(r.coords.has_value());
  CHECK(r.coords->size() == (size_t)r.complex.vertex_count);
  bool center = false;
  for (const auto& p : *r.coords)
    if (std::abs(p.x - 0.5) < 1e-12 && std::abs(p.y - 0.5) < 1e-12 && std::abs(p.z - 0.5) < 1e-12)
      center = true;
  CHECK(center);
}

TEST_CASE("flip invariants on cube and refined cube") {
  std::vector<CubicalComplex> meshes = {reference_cube(), grid_refine(reference_cube(), 2)};
  for (const auto& m : meshes) {
    auto h0 = euler_and_homology(m);
    auto e = enumerate_classes(m.dim);
    for (const auto& cls : e.classes) {
      for (const auto& site : find_sites(m, cls)) {
        auto r = apply_flip(m, site);
        CHECK(validate(r.mesh).ok);
        auto h1 = euler_and_homology(r.mesh);
        CHECK(h0.euler == h1.euler);
        CHECK(h0.betti == h1.betti);
        CHECK((int)(m.cells.size() % 2) == (int)(r.mesh.cells.size() % 2));
        auto back = apply_flip(r.mesh, r.inverse_site);
        CHECK(canonical_key(back.mesh) == canonical_key(m));
      }
    }
  }
}

TEST_CASE("boundary complex is preserved by flips on a disk mesh") {
  auto disk = grid_refine(single_quad(), 2);
  REQUIRE(disk.boundary_vertices.size() == 8);
  auto fl0 = derived_faces(disk);
  for (const auto& cls : enumerate_classes(2).classes) {
    for (const auto& site : find_sites(disk, cls)) {
      auto r = apply_flip(disk, site);
      CHECK(validate(r.mesh).ok);
      auto fl1 = derived_faces(r.mesh);
      CHECK(fl0.boundary_edges == fl1.boundary_edges);
      CHECK(r.mesh.boundary_vertices == disk.boundary_vertices);
    }
  }
}

TEST_CASE("flip sequence json round trip and replay") {
  auto cube = reference_cube();
  FlipSequence seq;
  seq.initial_key = canonical_key(cube);

  auto s1 = find_sites(cube, {2, 2, 0})[0];
  auto r1 = apply_flip(cube, s1);
  seq.steps.push_back(r1.step);
  auto ps = find_parity_sites(r1.mesh)[0];
  auto r2 = apply_parity_change(r1.mesh, ps);
  seq.steps.push_back(r2.step);

  auto text = flip_sequence_to_json(seq);
  auto parsed = flip_sequence_from_json(text);
  CHECK(flip_sequence_to_json(parsed) == text);

  auto final_mesh = replay(cube, parsed);
  CHECK(canonical_key(final_mesh) == canonical_key(r2.mesh));
}

TEST_CASE("stale sites are rejected") {
  auto cube = reference_cube();
  auto site = find_sites(cube, {2, 2, 0})[0];
  auto r = apply_flip(cube, site);
  bool threw = false;
  try {
    auto s2 = site;
    s2.cells = {(int)r.mesh.cells.size() - 1};
    apply_flip(r.mesh, s2);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == Errc::SiteStale);
  }
  CHECK(threw);
}
