#include "cubeflip/planner.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <iostream>
#include <map>
#include <set>

namespace cubeflip {

const char* plan_phase_name(PlanPhase p) {
  switch (p) {
    case PlanPhase::BubbleWrap: return "bubble_wrap";
    case PlanPhase::LoopCreation: return "loop_creation";
    case PlanPhase::LoopPairing: return "loop_pairing";
    case PlanPhase::Whitney: return "whitney";
    case PlanPhase::BubbleRemoval: return "bubble_removal";
  }
  return "?";
}

namespace {

// A lens between two crossings t,u: the two bounding arcs (on strands b and c)
// and the face region of the chosen side.
struct Lens {
  int t = -1, u = -1;
  std::vector<int> arc_b;  // crossings strictly between t and u along b
  std::vector<int> arc_c;
  std::vector<Dart> arc_b_darts;  // entering darts from t toward u (inclusive walk)
  std::vector<Dart> arc_c_darts;
  std::set<int> region_faces;
  int interior = 0;  // crossings strictly inside the region
  int score = 0;
};

struct Passage {
  // entering darts of the two strand passages at a crossing
  Dart a, b;
};

// Walk along the strand starting with entering dart d; returns the sequence of
// entering darts until the walk returns to d.
std::vector<Dart> strand_from(const CurveArrangement& a, Dart d) {
  std::vector<Dart> walk;
  Dart cur = d;
  do {
    walk.push_back(cur);
    cur = a.twin(Dart{cur.crossing, (cur.port + 2) % 4});
  } while (!(cur == d));
  return walk;
}

// Faces adjacency ignoring a set of blocked (undirected) edges.
std::set<int> face_flood(const CurveArrangement& a, const ArrangementFaces& faces, int seed,
                         const std::set<std::pair<int, int>>& blocked_darts) {
  std::set<int> region;
  std::deque<int> q{seed};
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    if (!region.insert(f).second) continue;
    for (const auto& d : faces.walks[f]) {
      if (blocked_darts.count({d.crossing, d.port})) continue;
      Dart t = a.twin(d);
      int g = faces.face_of[t.crossing][t.port];
      if (!region.count(g)) q.push_back(g);
    }
  }
  return region;
}

struct LensFinder {
  const CurveArrangement& a;
  ArrangementFaces faces;

  explicit LensFinder(const CurveArrangement& arr) : a(arr) { faces = arrangement_faces(a); }

  // Candidate lenses: pairs (t,u) joined by a b-arc and a c-arc such that no
  // other b&c crossing lies inside either arc.
  std::vector<Lens> enumerate() {
    std::vector<Lens> out;
    int n = a.crossings();
    for (int t = 0; t < n; ++t) {
      for (int pb = 0; pb < 4; ++pb) {
        // walk along the strand leaving t via port pb+2 (entering dart (t,pb))
        Dart db{t, pb};
        auto bwalk = strand_from(a, db);
        // find the first return to a crossing也 reachable along the other
        // strand; we simply try every crossing u on the b-walk
        for (size_t bi = 1; bi < bwalk.size(); ++bi) {
          int u = bwalk[bi].crossing;
          if (u == t) break;  // closed back; self-return ends candidates
          // c-arc: try both directions of the other strand at t
          for (int pc : {(pb + 1) % 4, (pb + 3) % 4}) {
            Dart dc{t, pc};
            auto cwalk = strand_from(a, dc);
            size_t cj = 0;
            bool found = false;
            for (size_t k = 1; k < cwalk.size(); ++k) {
              if (cwalk[k].crossing == t) break;
              if (cwalk[k].crossing == u) {
                cj = k;
                found = true;
                break;
              }
            }
            if (!found) continue;
            Lens L;
            L.t = t;
            L.u = u;
            for (size_t k = 1; k < bi; ++k) L.arc_b.push_back(bwalk[k].crossing);
            for (size_t k = 1; k < cj; ++k) L.arc_c.push_back(cwalk[k].crossing);
            for (size_t k = 0; k <= bi; ++k) L.arc_b_darts.push_back(bwalk[k]);
            for (size_t k = 0; k <= cj; ++k) L.arc_c_darts.push_back(cwalk[k]);
            // no shared crossings between open arcs and endpoints
            std::set<int> seen = {t, u};
            bool clean = true;
            for (int x : L.arc_b)
              if (!seen.insert(x).second) clean = false;
            for (int x : L.arc_c)
              if (!seen.insert(x).second) clean = false;
            if (!clean) continue;
            finish_lens(L);
            out.push_back(std::move(L));
          }
        }
      }
    }
    std::sort(out.begin(), out.end(), [](const Lens& x, const Lens& y) {
      if (x.score != y.score) return x.score < y.score;
      if (x.t != y.t) return x.t < y.t;
      return x.u < y.u;
    });
    return out;
  }

  void finish_lens(Lens& L) {
    // blocked edges: all darts along both arcs (and twins)
    std::set<std::pair<int, int>> blocked;
    auto block_walk = [&](const std::vector<Dart>& walk) {
      for (size_t i = 0; i + 1 < walk.size(); ++i) {
        Dart exitp{walk[i].crossing, (walk[i].port + 2) % 4};
        Dart ent = walk[i + 1];
        blocked.insert({exitp.crossing, exitp.port});
        blocked.insert({ent.crossing, ent.port});
      }
    };
    block_walk(L.arc_b_darts);
    block_walk(L.arc_c_darts);

    // two sides: seed from the faces on either side of the first b-edge
    Dart e{L.arc_b_darts[0].crossing, (L.arc_b_darts[0].port + 2) % 4};
    int f1 = faces.face_of[e.crossing][e.port];
    Dart tw = a.twin(e);
    int f2 = faces.face_of[tw.crossing][tw.port];
    auto r1 = face_flood(a, faces, f1, blocked);
    std::set<int> on_boundary(L.arc_b.begin(), L.arc_b.end());
    on_boundary.insert(L.arc_c.begin(), L.arc_c.end());
    on_boundary.insert(L.t);
    on_boundary.insert(L.u);
    auto count_interior = [&](const std::set<int>& region) {
      int k = 0;
      for (int c = 0; c < a.crossings(); ++c) {
        if (on_boundary.count(c)) continue;
        bool inside = true;
        for (int p = 0; p < 4; ++p)
          if (!region.count(faces.face_of[c][p])) inside = false;
        if (inside) ++k;
      }
      return k;
    };
    int i1 = count_interior(r1);
    std::set<int> r2;
    int i2 = 0;
    if ((int)r1.size() < (int)faces.walks.size()) {
      r2 = face_flood(a, faces, f2, blocked);
      i2 = count_interior(r2);
    }
    if (r2.empty() || i1 <= i2) {
      L.region_faces = r1;
      L.interior = i1;
    } else {
      L.region_faces = r2;
      L.interior = i2;
    }
    L.score = 4 * L.interior + (int)L.arc_b.size() + (int)L.arc_c.size();
  }
};

CanonicalKey cube_key() {
  static CanonicalKey k = canonical_key(reference_cube());
  return k;
}

struct Planner {
  CubicalComplex mesh;
  ReductionPlan plan;
  std::set<std::string> visited;

  bool try_apply_flip(const MatchSite& site, PlanPhase phase) {
    FlipResult r;
    try {
      r = apply_flip(mesh, site);
    } catch (const Error&) {
      return false;
    }
    auto key = canonical_key(r.mesh);
    if (!visited.insert(key.bytes).second) return false;
    mesh = r.mesh;
    plan.seq.steps.push_back(r.step);
    plan.phase.push_back(phase);
    return true;
  }

  bool try_site_at(const FlipClass& cls, std::vector<int> cells, PlanPhase phase) {
    auto site = find_site_at(mesh, cls, cells);
    if (!site) return false;
    return try_apply_flip(*site, phase);
  }

  // Reducing flips first: (0,2) removes a circle, (0,1) cancels a lens.
  bool greedy_reduce() {
    for (const auto& s : find_sites(mesh, {2, 0, 2}))
      if (try_apply_flip(s, PlanPhase::BubbleRemoval)) return true;
    for (const auto& s : find_sites(mesh, {2, 0, 1}))
      if (try_apply_flip(s, PlanPhase::Whitney)) return true;
    return false;
  }

  // Directed work on the cheapest lenses: corner inversions shrink a lens,
  // corner swaps expel the first transversal over a lens corner.
  bool lens_step() {
    CurveArrangement a = dualize(mesh);
    LensFinder lf(a);
    auto lenses = lf.enumerate();
    int considered = 0;
    for (const auto& L : lenses) {
      if (considered++ > 24) break;
      // corner triangles inside the region at t and u
      for (int corner : {L.t, L.u}) {
        for (int p = 0; p < 4; ++p) {
          int f = lf.faces.face_of[corner][p];
          if (!L.region_faces.count(f)) continue;
          const auto& walk = lf.faces.walks[f];
          if (walk.size() != 3) continue;
          std::set<int> cs;
          for (const auto& d : walk) cs.insert(d.crossing);
          if (cs.size() != 3 || !cs.count(corner)) continue;
          std::vector<int> cells(cs.begin(), cs.end());
          if (try_site_at({2, 0, 0}, cells, PlanPhase::LoopPairing)) return true;
        }
      }
      // corner swaps: pull the corner past the first crossing of either arc
      std::vector<std::pair<int, int>> swaps;
      if (!L.arc_c.empty()) {
        swaps.push_back({L.t, L.arc_c.front()});
        swaps.push_back({L.u, L.arc_c.back()});
      }
      if (!L.arc_b.empty()) {
        swaps.push_back({L.t, L.arc_b.front()});
        swaps.push_back({L.u, L.arc_b.back()});
      }
      for (auto& [x, y] : swaps)
        if (x != y && try_site_at({2, 1, 0}, {x, y}, PlanPhase::LoopCreation)) return true;
    }
    return false;
  }

  // Any triangle inversion or adjacent swap that reaches a new state.
  bool shuffle_step() {
    for (const auto& s : find_sites(mesh, {2, 0, 0}))
      if (try_apply_flip(s, PlanPhase::LoopPairing)) return true;
    for (const auto& s : find_sites(mesh, {2, 1, 1}))
      if (try_apply_flip(s, PlanPhase::LoopPairing)) return true;
    for (const auto& s : find_sites(mesh, {2, 1, 0}))
      if (try_apply_flip(s, PlanPhase::LoopCreation)) return true;
    return false;
  }
};

}  // namespace

ReductionPlan plan_reduction(const CubicalComplex& input) {
  if (input.dim != 2) fail(Errc::DimensionMismatch, "plan_reduction needs a quad mesh");
  if (!validate(input).ok) fail(Errc::InvalidComplex, "plan_reduction needs a valid mesh");
  if (!is_closed(input)) fail(Errc::NotClosedSphere, "plan_reduction needs a closed mesh");
  auto h = euler_and_homology(input);
  if (h.euler != 2 || h.betti[0] != 1)
    fail(Errc::NotClosedSphere, "plan_reduction needs a sphere mesh");
  if (input.cells.size() % 2 != 0)
    fail(Errc::OddParity, "plan_reduction handles even meshes only");

  Planner pl;
  pl.mesh = input;
  pl.plan.seq.initial_key = canonical_key(input);
  pl.visited.insert(pl.plan.seq.initial_key.bytes);

  static const bool trace = std::getenv("CUBEFLIP_PLANNER_TRACE") != nullptr;
  const int step_limit = 20000;
  while ((int)pl.plan.seq.steps.size() < step_limit) {
    if (trace)
      std::cerr << "[planner] step " << pl.plan.seq.steps.size() << " cells "
                << pl.mesh.cells.size() << "\n";
    if (canonical_key(pl.mesh) == cube_key()) return pl.plan;
    if (pl.greedy_reduce()) continue;
    if (pl.lens_step()) continue;
    // endgame: small meshes are finished off by search
    if ((int)pl.mesh.cells.size() <= 16) {
      SearchBudget b;
      b.max_cells = (int)pl.mesh.cells.size() + 6;
      b.max_states = 500000;
      b.max_depth = 64;
      auto r = find_path(pl.mesh, reference_cube(), b, false);
      if (r.status == PathResult::Found) {
        for (size_t i = 0; i < r.seq.steps.size(); ++i) {
          pl.plan.seq.steps.push_back(r.seq.steps[i]);
          pl.plan.phase.push_back(PlanPhase::BubbleRemoval);
        }
        return pl.plan;
      }
    }
    if (pl.shuffle_step()) continue;
    fail(Errc::PlannerStuck, "no applicable move at " + std::to_string(pl.mesh.cells.size()) +
                                 " cells after " + std::to_string(pl.plan.seq.steps.size()) +
                                 " steps");
  }
  fail(Errc::PlannerStuck, "step limit exceeded");
}

namespace {

struct SearchNode {
  CubicalComplex mesh;
  int parent = -1;
  FlipStep step;          // step applied at the parent to reach this node
  FlipStep reverse_step;  // step applied here to return to the parent
  bool has_step = false;
};

struct Frontier {
  std::vector<SearchNode> nodes;
  std::map<std::string, int> by_key;
  std::deque<int> queue;
  std::vector<int> depth;
};

struct Successor {
  CubicalComplex mesh;
  FlipStep step;
  FlipStep reverse_step;
};

std::vector<Successor> successors(const CubicalComplex& m, const PathOptions& opts,
                                  int max_cells) {
  std::vector<Successor> out;
  auto cls_allowed = [&](const FlipClass& c) {
    if (!opts.allowed_classes) return true;
    for (auto& [x, y] : *opts.allowed_classes)
      if (c.x == x && c.y == y) return true;
    return false;
  };
  for (const auto& cls : enumerate_classes(m.dim).classes) {
    if (!cls_allowed(cls)) continue;
    int delta = cls.after_cells() - cls.before_cells();
    if ((int)m.cells.size() + delta > max_cells) continue;
    for (const auto& site : find_sites(m, cls)) {
      auto r = apply_flip(m, site);
      Successor s;
      s.mesh = std::move(r.mesh);
      s.step = r.step;
      // reverse: a flip at the inverse site
      s.reverse_step.kind = FlipStep::Flip;
      s.reverse_step.cls = r.inverse_site.cls;
      s.reverse_step.map = r.inverse_site.vertex_map;
      out.push_back(std::move(s));
    }
  }
  if (opts.allow_parity && m.dim == 2) {
    if ((int)m.cells.size() + 1 <= max_cells)
      for (const auto& ps : find_parity_sites(m)) {
        auto r = apply_parity_change(m, ps);
        Successor s;
        s.mesh = r.mesh;
        s.step = r.step;
        s.reverse_step.kind = FlipStep::Parity32;
        s.reverse_step.map[0] = r.step.new_vertices[0];
        for (int i = 0; i < 6; ++i) s.reverse_step.map[i + 1] = r.step.map.at(i);
        out.push_back(std::move(s));
      }
    for (const auto& ps : find_parity_inverse_sites(m)) {
      ParityResult r;
      try {
        r = apply_parity_change_inverse(m, ps);
      } catch (const Error&) {
        continue;
      }
      Successor s;
      s.mesh = r.mesh;
      s.step = r.step;
      s.reverse_step.kind = FlipStep::Parity23;
      // the removed apex shifts higher ids down by one in the result
      int w = ps.apex;
      for (int i = 0; i < 6; ++i) {
        int h = r.step.map.at(i + 1);
        s.reverse_step.map[i] = h > w ? h - 1 : h;
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

void require_matching_boundary(const CubicalComplex& a, const CubicalComplex& b) {
  if (a.dim != b.dim) fail(Errc::BoundaryMismatch, "meshes have different dimensions");
  auto fa = derived_faces(a);
  auto fb = derived_faces(b);
  if (fa.boundary_edges != fb.boundary_edges || fa.boundary_vertex_ids != fb.boundary_vertex_ids)
    fail(Errc::BoundaryMismatch, "boundary complexes differ");
  if (a.boundary_vertices != b.boundary_vertices)
    fail(Errc::BoundaryMismatch, "boundary markers differ");
}

}  // namespace

PathResult find_path(const CubicalComplex& m1, const CubicalComplex& m2,
                     const SearchBudget& budget, bool allow_parity) {
  PathOptions o;
  o.allow_parity = allow_parity;
  return find_path(m1, m2, budget, o);
}

PathResult find_path(const CubicalComplex& m1, const CubicalComplex& m2,
                     const SearchBudget& budget, const PathOptions& opts) {
  if (!validate(m1).ok || !validate(m2).ok) fail(Errc::InvalidComplex, "invalid input mesh");
  require_matching_boundary(m1, m2);

  PathResult res;
  auto k1 = canonical_key(m1), k2 = canonical_key(m2);
  res.seq.initial_key = k1;
  if (k1 == k2) {
    res.status = PathResult::Found;
    return res;
  }
  if (!opts.allow_parity && (m1.cells.size() % 2) != (m2.cells.size() % 2)) {
    res.status = PathResult::NoPath;
    res.reason = "parity";
    return res;
  }

  Frontier fw, bw;
  auto init = [&](Frontier& f, const CubicalComplex& m, const CanonicalKey& k) {
    SearchNode n;
    n.mesh = m;
    f.nodes.push_back(n);
    f.by_key[k.bytes] = 0;
    f.queue.push_back(0);
    f.depth.push_back(0);
  };
  init(fw, m1, k1);
  init(bw, m2, k2);

  long long states = 2;
  int meet_fw = -1, meet_bw = -1;
  bool exhausted = false;

  while (meet_fw < 0) {
    Frontier& f = fw.queue.size() <= bw.queue.size() ? fw : bw;
    Frontier& other = (&f == &fw) ? bw : fw;
    bool forward = (&f == &fw);
    if (f.queue.empty() && other.queue.empty()) {
      exhausted = true;
      break;
    }
    if (f.queue.empty()) {
      // expand the other side instead
      if (other.queue.empty()) {
        exhausted = true;
        break;
      }
    }
    Frontier& cur = f.queue.empty() ? other : f;
    bool cur_forward = (&cur == &fw);
    int ni = cur.queue.front();
    cur.queue.pop_front();
    if (cur.depth[ni] >= budget.max_depth) continue;

    for (auto& s : successors(cur.nodes[ni].mesh, opts, budget.max_cells)) {
      auto key = canonical_key(s.mesh);
      if (cur.by_key.count(key.bytes)) continue;
      SearchNode n;
      n.mesh = std::move(s.mesh);
      n.parent = ni;
      n.step = s.step;
      n.reverse_step = s.reverse_step;
      n.has_step = true;
      int id = (int)cur.nodes.size();
      cur.nodes.push_back(n);
      cur.by_key[key.bytes] = id;
      cur.queue.push_back(id);
      cur.depth.push_back(cur.depth[ni] + 1);
      ++states;
      if (states > budget.max_states) {
        res.status = PathResult::BudgetExhausted;
        res.reason = "states";
        res.states_explored = states;
        return res;
      }
      auto hit = (cur_forward ? bw : fw).by_key.find(key.bytes);
      if (hit != (cur_forward ? bw : fw).by_key.end()) {
        meet_fw = cur_forward ? id : hit->second;
        meet_bw = cur_forward ? hit->second : id;
        break;
      }
    }
    (void)forward;
  }

  res.states_explored = states;
  if (meet_fw < 0) {
    res.status = PathResult::NoPath;
    res.reason = exhausted ? "exhausted" : "unknown";
    return res;
  }

  // forward chain
  std::vector<FlipStep> steps;
  {
    std::vector<FlipStep> rev;
    for (int i = meet_fw; fw.nodes[i].has_step; i = fw.nodes[i].parent)
      rev.push_back(fw.nodes[i].step);
    std::reverse(rev.begin(), rev.end());
    steps = rev;
  }
  // Backward chain: the meeting meshes agree only up to isomorphism, so
  // re-derive concrete steps by walking the backward key sequence from the
  // forward meeting mesh.
  {
    std::vector<std::string> target_keys;
    for (int i = meet_bw; bw.nodes[i].has_step; i = bw.nodes[i].parent)
      target_keys.push_back(canonical_key(bw.nodes[bw.nodes[i].parent].mesh).bytes);
    CubicalComplex cur = fw.nodes[meet_fw].mesh;
    for (const auto& tk : target_keys) {
      bool advanced = false;
      for (auto& s : successors(cur, opts, budget.max_cells + 8)) {
        if (canonical_key(s.mesh).bytes == tk) {
          steps.push_back(s.step);
          cur = std::move(s.mesh);
          advanced = true;
          break;
        }
      }
      if (!advanced) fail(Errc::PlannerStuck, "path reconstruction lost the trail");
    }
  }

  res.seq.steps = steps;
  // verify by replay
  auto end = replay(m1, res.seq);
  if (!(canonical_key(end) == k2)) fail(Errc::PlannerStuck, "path replay verification failed");
  res.status = PathResult::Found;
  return res;
}

std::vector<CubicalComplex> census_seeds(int k) {
  if (k < 4 || k % 2 != 0) fail(Errc::ParamOutOfRange, "boundary must be an even K-gon, K >= 4");
  std::vector<CubicalComplex> seeds;
  if (k == 4) {
    auto odd = single_quad();
    seeds.push_back(odd);
    // even seed: (2,0) flip then a parity change
    auto five = apply_flip(odd, find_sites(odd, {2, 2, 0})[0]).mesh;
    auto six = apply_parity_change(five, find_parity_sites(five)[0]).mesh;
    seeds.push_back(six);
    return seeds;
  }
  // strip of k/2 - 1 quads over the K-gon
  int n = k / 2 - 1;
  CubicalComplex strip;
  strip.dim = 2;
  strip.vertex_count = k;
  // boundary cycle 0..k-1; quads (i, i+1, k-2-i, k-1-i)
  for (int i = 0; i < n; ++i) strip.cells.push_back({i, i + 1, k - 2 - i, k - 1 - i});
  for (int v = 0; v < k; ++v) strip.boundary_vertices.push_back(v);
  if (!validate(strip).ok) fail(Errc::InvalidComplex, "census strip seed invalid");
  seeds.push_back(strip);
  auto ps = find_parity_sites(strip);
  if (ps.empty()) fail(Errc::InvalidComplex, "census strip has no parity site");
  seeds.push_back(apply_parity_change(strip, ps[0]).mesh);
  return seeds;
}

CensusReport census_over(const std::vector<CubicalComplex>& seeds, const SearchBudget& budget,
                         bool allow_parity) {
  CensusReport rep;
  std::map<std::string, int> comp_of;  // key -> component id
  std::vector<int> comp_parent;
  std::function<int(int)> find = [&](int x) {
    while (comp_parent[x] != x) x = comp_parent[x] = comp_parent[comp_parent[x]];
    return x;
  };

  std::deque<std::pair<CubicalComplex, int>> queue;
  std::map<std::string, CensusEntry> entries;

  for (const auto& seed : seeds) {
    if (seed.dim != 2) fail(Errc::DimensionMismatch, "census seeds must be quad meshes");
    if (!validate(seed).ok) fail(Errc::InvalidComplex, "census seed invalid");
    auto h = euler_and_homology(seed);
    if (h.euler != 1 || h.betti[0] != 1 || h.betti[1] != 0)
      fail(Errc::NotSimplyConnected, "census seeds must be simply-connected disk meshes");
    auto key = canonical_key(seed);
    if (comp_of.count(key.bytes)) continue;
    int id = (int)comp_parent.size();
    comp_parent.push_back(id);
    comp_of[key.bytes] = id;
    entries[key.bytes] = {key, id, (int)(seed.cells.size() % 2), (int)seed.cells.size()};
    queue.push_back({seed, id});
  }

  PathOptions opts;
  opts.allow_parity = allow_parity;
  long long states = (long long)entries.size();
  while (!queue.empty()) {
    auto [m, comp] = queue.front();
    queue.pop_front();
    comp = find(comp);
    for (auto& s : successors(m, opts, budget.max_cells)) {
      auto key = canonical_key(s.mesh);
      auto it = comp_of.find(key.bytes);
      if (it != comp_of.end()) {
        int other = find(it->second);
        if (other != comp) comp_parent[other] = comp;
        continue;
      }
      comp_of[key.bytes] = comp;
      entries[key.bytes] = {key, comp, (int)(s.mesh.cells.size() % 2), (int)s.mesh.cells.size()};
      ++states;
      if (states > budget.max_states) {
        rep.truncated = true;
        queue.clear();
        break;
      }
      queue.push_back({std::move(s.mesh), comp});
    }
  }

  // normalize component ids
  std::map<int, int> norm;
  for (auto& [key, e] : entries) {
    int root = find(e.component);
    if (!norm.count(root)) norm[root] = (int)norm.size();
    e.component = norm[root];
    rep.states.push_back(e);
  }
  rep.components = (int)norm.size();
  std::sort(rep.states.begin(), rep.states.end(), [](const CensusEntry& a, const CensusEntry& b) {
    if (a.component != b.component) return a.component < b.component;
    if (a.cells != b.cells) return a.cells < b.cells;
    return a.key.bytes < b.key.bytes;
  });
  return rep;
}

CensusReport component_census(int boundary_k, const SearchBudget& budget, bool allow_parity) {
  return census_over(census_seeds(boundary_k), budget, allow_parity);
}

}  // namespace cubeflip
