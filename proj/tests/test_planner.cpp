#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cubeflip/planner.hpp"
#include "helpers.hpp"

using namespace cubeflip;

namespace {

// Deterministic random flip products from a seed mesh.
CubicalComplex random_flip_product(CubicalComplex m, int steps, uint64_t seed, int max_cells) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < steps; ++i) {
    std::vector<MatchSite> all;
    for (const auto& cls : enumerate_classes(m.dim).classes) {
      int delta = cls.after_cells() - cls.before_cells();
      if ((int)m.cells.size() + delta > max_cells) continue;
      auto s = find_sites(m, cls);
      all.insert(all.end(), s.begin(), s.end());
    }
    if (all.empty()) break;
    auto& site = all[rng() % all.size()];
    m = apply_flip(m, site).mesh;
  }
  return m;
}

void check_plan(const CubicalComplex& m) {
  auto plan = plan_reduction(m);
  REQUIRE(plan.phase.size() == plan.seq.steps.size());
  auto end = replay(m, plan.seq);
  CHECK(canonical_key(end) == canonical_key(reference_cube()));
}

}  // namespace

TEST_CASE("plan_reduction endpoint for the cube itself") { check_plan(reference_cube()); }

TEST_CASE("plan_reduction for cube plus one (2,0) flip") {
  auto cube = reference_cube();
  auto ten = apply_flip(cube, find_sites(cube, {2, 2, 0})[0]).mesh;
  check_plan(ten);
}

TEST_CASE("plan_reduction for the refined cube m=2") {
  check_plan(grid_refine(reference_cube(), 2));
}

TEST_CASE("plan_reduction for random flip products") {
  auto cube = reference_cube();
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    auto m = random_flip_product(cube, 5, seed, 26);
    if (m.cells.size() % 2 != 0) continue;
    check_plan(m);
  }
}

TEST_CASE("plan_reduction rejects odd and non-sphere meshes") {
  auto cube = reference_cube();
  auto seven = apply_parity_change(cube, find_parity_sites(cube)[0]).mesh;
  CHECK_THROWS_AS(plan_reduction(seven), Error);
  CHECK_THROWS_AS(plan_reduction(single_quad()), Error);
}

TEST_CASE("find_path: identical meshes give the empty sequence") {
  auto cube = reference_cube();
  SearchBudget b;
  auto r = find_path(cube, cube, b, false);
  CHECK(r.status == PathResult::Found);
  CHECK(r.seq.steps.empty());
}

TEST_CASE("find_path: parity obstruction is reported without search") {
  auto cube = reference_cube();
  auto seven = apply_parity_change(cube, find_parity_sites(cube)[0]).mesh;
  SearchBudget b;
  b.max_cells = 12;
  auto r = find_path(cube, seven, b, false);
  CHECK(r.status == PathResult::NoPath);
  CHECK(r.reason == "parity");

  // with parity ops enabled a path exists
  auto r2 = find_path(cube, seven, b, true);
  CHECK(r2.status == PathResult::Found);
  auto end = replay(cube, r2.seq);
  CHECK(canonical_key(end) == canonical_key(seven));
}

TEST_CASE("find_path reconnects random flip products") {
  auto cube = reference_cube();
  for (uint64_t seed = 11; seed <= 13; ++seed) {
    auto m = random_flip_product(cube, 4, seed, 20);
    if ((m.cells.size() % 2) != 0) continue;
    SearchBudget b;
    b.max_cells = 20;
    b.max_states = 400000;
    auto r = find_path(cube, m, b, false);
    REQUIRE(r.status == PathResult::Found);
    CHECK(r.seq.steps.size() <= 8);
    auto end = replay(cube, r.seq);
    CHECK(canonical_key(end) == canonical_key(m));
  }
}

TEST_CASE("census over the 4-gon: two components, parity-aligned") {
  SearchBudget b;
  b.max_cells = 9;
  auto rep = component_census(4, b, false);
  CHECK(rep.components == 2);
  CHECK_FALSE(rep.truncated);
  // parities are constant per component and differ between the two
  std::map<int, std::set<int>> parities;
  for (const auto& e : rep.states) parities[e.component].insert(e.parity);
  REQUIRE(parities.size() == 2);
  for (auto& [comp, ps] : parities) CHECK(ps.size() == 1);
  CHECK(*parities[0].begin() != *parities[1].begin());

  auto rep2 = component_census(4, b, true);
  CHECK(rep2.components == 1);
}

TEST_CASE("census rejects non-disk seeds") {
  // quad torus is not simply connected
  int n = 3;
  CubicalComplex torus;
  torus.dim = 2;
  torus.vertex_count = n * n;
  auto id = [&](int i, int j) { return (i % n) * n + (j % n); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      torus.cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  SearchBudget b;
  try {
    census_over({torus}, b, false);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotSimplyConnected);
  }
}

TEST_CASE("flip simulation by parity ops and (2,0)-(0,2) alone") {
  // Every (0,0), (1,0)-(0,1) and (1,1) flip outcome is reachable using only
  // parity changes and (2,0)-(0,2) flips.
  auto cube = reference_cube();
  std::vector<CubicalComplex> corpus = {cube,
                                        apply_flip(cube, find_sites(cube, {2, 2, 0})[0]).mesh};
  PathOptions opts;
  opts.allow_parity = true;
  opts.allowed_classes = std::vector<std::pair<int, int>>{{2, 0}, {0, 2}};
  for (const auto& m : corpus) {
    for (auto cls : {FlipClass{2, 0, 0}, FlipClass{2, 1, 0}, FlipClass{2, 0, 1},
                     FlipClass{2, 1, 1}}) {
      auto sites = find_sites(m, cls);
      for (size_t i = 0; i < std::min<size_t>(sites.size(), 2); ++i) {
        auto target = apply_flip(m, sites[i]).mesh;
        SearchBudget b;
        b.max_cells = (int)std::max(m.cells.size(), target.cells.size()) + 6;
        b.max_states = 300000;
        auto r = find_path(m, target, b, opts);
        CHECK(r.status == PathResult::Found);
      }
    }
  }
}

TEST_CASE("plans are deterministic") {
  auto m = grid_refine(reference_cube(), 2);
  auto p1 = plan_reduction(m);
  auto p2 = plan_reduction(m);
  CHECK(flip_sequence_to_json(p1.seq) == flip_sequence_to_json(p2.seq));
}
