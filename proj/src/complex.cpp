#include "cubeflip/complex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace cubeflip {

bool CubicalComplex::is_boundary_vertex(int v) const {
  return std::binary_search(boundary_vertices.begin(), boundary_vertices.end(), v);
}

std::array<int, 4> quad_key(const std::array<int, 4>& q) {
  std::array<int, 4> best = q;
  for (int refl = 0; refl < 2; ++refl) {
    std::array<int, 4> cyc = q;
    if (refl) std::reverse(cyc.begin(), cyc.end());
    for (int r = 0; r < 4; ++r) {
      std::array<int, 4> cand = {cyc[r], cyc[(r + 1) % 4], cyc[(r + 2) % 4], cyc[(r + 3) % 4]};
      if (cand < best) best = cand;
    }
  }
  return best;
}

static std::vector<std::array<int, 2>> cell_edges(const CubicalComplex& c, int ci) {
  const auto& t = c.cells[ci];
  std::vector<std::array<int, 2>> out;
  if (c.dim == 2) {
    for (int i = 0; i < 4; ++i) {
      int a = t[i], b = t[(i + 1) % 4];
      out.push_back({std::min(a, b), std::max(a, b)});
    }
  } else {
    for (const auto& e : kHexEdges) {
      int a = t[e[0]], b = t[e[1]];
      out.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  return out;
}

static std::vector<std::array<int, 4>> cell_quads(const CubicalComplex& c, int ci) {
  const auto& t = c.cells[ci];
  std::vector<std::array<int, 4>> out;
  if (c.dim == 2) {
    out.push_back({t[0], t[1], t[2], t[3]});
  } else {
    for (const auto& f : kHexFaces) out.push_back({t[f[0]], t[f[1]], t[f[2]], t[f[3]]});
  }
  return out;
}

static bool is_edge_of_cell(const CubicalComplex& c, int ci, int a, int b) {
  for (const auto& e : cell_edges(c, ci))
    if (e[0] == std::min(a, b) && e[1] == std::max(a, b)) return true;
  return false;
}

namespace {

// Shared pairwise-intersection rule. `shared` is the vertex intersection.
bool pair_intersection_ok(const CubicalComplex& c, int ca, int cb,
                          const std::vector<int>& shared) {
  size_t n = shared.size();
  if (n <= 1) return true;
  if (n == 2)
    return is_edge_of_cell(c, ca, shared[0], shared[1]) &&
           is_edge_of_cell(c, cb, shared[0], shared[1]);
  if (n == 3 && c.dim == 2) {
    for (int mid = 0; mid < 3; ++mid) {
      int p = shared[(mid + 1) % 3], q = shared[mid], r = shared[(mid + 2) % 3];
      if (is_edge_of_cell(c, ca, p, q) && is_edge_of_cell(c, cb, p, q) &&
          is_edge_of_cell(c, ca, q, r) && is_edge_of_cell(c, cb, q, r))
        return true;
    }
    return false;
  }
  if (n == 4 && c.dim == 3) {
    std::array<int, 4> want{};
    bool found_a = false;
    std::set<int> ss(shared.begin(), shared.end());
    for (const auto& q : cell_quads(c, ca)) {
      std::set<int> qs(q.begin(), q.end());
      if (qs == ss) {
        want = quad_key(q);
        found_a = true;
      }
    }
    if (!found_a) return false;
    for (const auto& q : cell_quads(c, cb))
      if (quad_key(q) == want) return true;
    return false;
  }
  return false;
}

// Vertex fan rule for quad complexes: edges at v chained by incident quads
// must form one path or one cycle.
bool vertex_fan_ok(const CubicalComplex& c, int v, const std::vector<int>& incident) {
  if (incident.empty()) return true;
  std::map<int, std::vector<int>> nbr;
  for (int ci : incident) {
    const auto& t = c.cells[ci];
    int pos = (int)(std::find(t.begin(), t.end(), v) - t.begin());
    int prev = t[(pos + 3) % 4], next = t[(pos + 1) % 4];
    nbr[prev].push_back(next);
    nbr[next].push_back(prev);
  }
  int odd = 0;
  for (auto& [u, ns] : nbr) {
    if (ns.size() > 2) return false;
    if (ns.size() == 1) ++odd;
  }
  std::set<int> vis;
  std::deque<int> q{nbr.begin()->first};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (!vis.insert(u).second) continue;
    for (int w : nbr[u]) q.push_back(w);
  }
  if (vis.size() != nbr.size()) return false;
  return odd == 0 || odd == 2;
}

}  // namespace

bool locally_valid(const CubicalComplex& c, const std::vector<int>& touched_cells) {
  int k = c.cells_per();
  std::vector<std::vector<int>> at_vertex(c.vertex_count);
  for (int i = 0; i < (int)c.cells.size(); ++i)
    for (int v : c.cells[i]) at_vertex[v].push_back(i);

  std::set<int> affected;
  for (int ci : touched_cells) {
    if (ci < 0 || ci >= (int)c.cells.size()) return false;
    const auto& t = c.cells[ci];
    if ((int)t.size() != k) return false;
    std::set<int> s(t.begin(), t.end());
    if ((int)s.size() != k) return false;
    for (int v : t) {
      if (v < 0 || v >= c.vertex_count) return false;
      for (int cj : at_vertex[v]) affected.insert(cj);
    }
  }

  // face sharing for faces of affected cells
  for (int ci : affected) {
    if (c.dim == 2) {
      for (const auto& e : cell_edges(c, ci)) {
        int cnt = 0;
        for (int cj : at_vertex[e[0]])
          if (is_edge_of_cell(c, cj, e[0], e[1])) ++cnt;
        if (cnt > 2) return false;
      }
    } else {
      for (const auto& q : cell_quads(c, ci)) {
        auto key = quad_key(q);
        int cnt = 0;
        for (int cj : at_vertex[key[0]])
          for (const auto& q2 : cell_quads(c, cj))
            if (quad_key(q2) == key) ++cnt;
        if (cnt > 2) return false;
      }
    }
  }

  // pairwise intersections around affected cells
  for (int ci : affected) {
    std::set<int> partners;
    for (int v : c.cells[ci])
      for (int cj : at_vertex[v])
        if (cj != ci) partners.insert(cj);
    std::set<int> sa(c.cells[ci].begin(), c.cells[ci].end());
    for (int cj : partners) {
      std::vector<int> shared;
      for (int u : c.cells[cj])
        if (sa.count(u)) shared.push_back(u);
      if (!pair_intersection_ok(c, ci, cj, shared)) return false;
    }
  }

  // vertex fans
  if (c.dim == 2) {
    std::set<int> verts;
    for (int ci : touched_cells)
      for (int v : c.cells[ci]) verts.insert(v);
    for (int v : verts)
      if (!vertex_fan_ok(c, v, at_vertex[v])) return false;
  }
  return true;
}

ValidityReport validate(const CubicalComplex& c) {
  ValidityReport rep;
  auto add = [&](const std::string& rule, std::vector<int> cells, std::vector<int> verts,
                 const std::string& detail) {
    rep.ok = false;
    rep.violations.push_back({rule, std::move(cells), std::move(verts), detail});
  };

  if (c.dim != 2 && c.dim != 3) {
    add("complex.dim", {}, {}, "dim must be 2 or 3");
    return rep;
  }
  int k = c.cells_per();
  for (int i = 0; i < (int)c.cells.size(); ++i) {
    const auto& t = c.cells[i];
    if ((int)t.size() != k) {
      add("cell.arity", {i}, {}, "cell has wrong vertex count");
      return rep;
    }
    std::set<int> s(t.begin(), t.end());
    for (int v : t)
      if (v < 0 || v >= c.vertex_count) {
        add("cell.vertex_range", {i}, {v}, "vertex id out of range");
        return rep;
      }
    if ((int)s.size() != k) add("cell.duplicate_vertex", {i}, {}, "repeated vertex in cell");
  }
  if (!rep.ok) return rep;

  // (dim-1)-face sharing.
  if (c.dim == 2) {
    std::map<std::array<int, 2>, std::vector<int>> edge_cells;
    for (int i = 0; i < (int)c.cells.size(); ++i)
      for (const auto& e : cell_edges(c, i)) edge_cells[e].push_back(i);
    for (const auto& [e, cs] : edge_cells)
      if ((int)cs.size() > 2)
        add("face.overshared", cs, {e[0], e[1]}, "edge in more than two quads");
  } else {
    std::map<std::array<int, 4>, std::vector<int>> quad_cells;
    for (int i = 0; i < (int)c.cells.size(); ++i)
      for (const auto& q : cell_quads(c, i)) quad_cells[quad_key(q)].push_back(i);
    for (const auto& [q, cs] : quad_cells)
      if ((int)cs.size() > 2)
        add("face.overshared", cs, {q[0], q[1], q[2], q[3]}, "quad in more than two hexes");
  }

  // Pairwise cell intersections must be a single shared face or empty.
  std::vector<std::vector<int>> at_vertex(c.vertex_count);
  for (int i = 0; i < (int)c.cells.size(); ++i)
    for (int v : c.cells[i]) at_vertex[v].push_back(i);
  std::set<std::pair<int, int>> seen;
  for (int v = 0; v < c.vertex_count; ++v) {
    const auto& inc = at_vertex[v];
    for (size_t a = 0; a < inc.size(); ++a)
      for (size_t b = a + 1; b < inc.size(); ++b) {
        int ca = inc[a], cb = inc[b];
        if (!seen.insert({ca, cb}).second) continue;
        std::set<int> sa(c.cells[ca].begin(), c.cells[ca].end());
        std::vector<int> shared;
        for (int u : c.cells[cb])
          if (sa.count(u)) shared.push_back(u);
        if (!pair_intersection_ok(c, ca, cb, shared))
          add("cell.intersection", {ca, cb}, shared, "intersection is not a single shared face");
      }
  }

  // Vertex links for quad complexes: edge fan at each vertex must be a single
  // path (boundary) or cycle (interior).
  if (c.dim == 2) {
    for (int v = 0; v < c.vertex_count; ++v) {
      if (at_vertex[v].empty()) continue;
      if (!vertex_fan_ok(c, v, at_vertex[v]))
        add("link.not_fan", at_vertex[v], {v}, "vertex link is not a single path or cycle");
    }
  }

  // Orientability.
  {
    CubicalComplex tmp = c;
    if (!orient_consistently(tmp)) add("orientation", {}, {}, "no consistent orientation exists");
  }
  return rep;
}

FaceLattice derived_faces(const CubicalComplex& c) {
  FaceLattice fl;
  std::set<int> verts;
  std::map<std::array<int, 2>, std::vector<int>> edge_cells;
  std::map<std::array<int, 4>, std::vector<int>> quad_cells;
  for (int i = 0; i < (int)c.cells.size(); ++i) {
    for (int v : c.cells[i]) verts.insert(v);
    for (const auto& e : cell_edges(c, i)) edge_cells[e].push_back(i);
    for (const auto& q : cell_quads(c, i)) quad_cells[quad_key(q)].push_back(i);
  }
  fl.vertices.assign(verts.begin(), verts.end());
  for (auto& [e, cs] : edge_cells) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    fl.edges.push_back(e);
    fl.edge_cells.push_back(cs);
  }
  for (auto& [q, cs] : quad_cells) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    fl.quads.push_back(q);
    fl.quad_cells.push_back(cs);
  }
  std::set<int> bverts;
  if (c.dim == 2) {
    for (size_t i = 0; i < fl.edges.size(); ++i)
      if (fl.edge_cells[i].size() == 1) {
        fl.boundary_edges.push_back(fl.edges[i]);
        bverts.insert(fl.edges[i][0]);
        bverts.insert(fl.edges[i][1]);
      }
  } else {
    std::set<std::array<int, 2>> bedges;
    for (size_t i = 0; i < fl.quads.size(); ++i)
      if (fl.quad_cells[i].size() == 1) {
        fl.boundary_quads.push_back(fl.quads[i]);
        const auto& q = fl.quads[i];
        for (int j = 0; j < 4; ++j) {
          int a = q[j], b = q[(j + 1) % 4];
          bedges.insert({std::min(a, b), std::max(a, b)});
          bverts.insert(a);
        }
      }
    fl.boundary_edges.assign(bedges.begin(), bedges.end());
  }
  fl.boundary_vertex_ids.assign(bverts.begin(), bverts.end());
  return fl;
}

Homology euler_and_homology(const CubicalComplex& c) {
  FaceLattice fl = derived_faces(c);
  std::map<int, int> vid;
  for (size_t i = 0; i < fl.vertices.size(); ++i) vid[fl.vertices[i]] = (int)i;
  std::map<std::array<int, 2>, int> eid;
  for (size_t i = 0; i < fl.edges.size(); ++i) eid[fl.edges[i]] = (int)i;
  std::map<std::array<int, 4>, int> qid;
  for (size_t i = 0; i < fl.quads.size(); ++i) qid[fl.quads[i]] = (int)i;

  long long nv = (long long)fl.vertices.size();
  long long ne = (long long)fl.edges.size();
  long long nq = (long long)fl.quads.size();
  long long nh = c.dim == 3 ? (long long)c.cells.size() : 0;

  Homology h;
  h.euler = nv - ne + nq - nh;

  std::vector<std::vector<int>> d1(ne), d2(nq), d3(nh);
  for (size_t i = 0; i < fl.edges.size(); ++i)
    d1[i] = {vid[fl.edges[i][0]], vid[fl.edges[i][1]]};
  for (size_t i = 0; i < fl.quads.size(); ++i) {
    const auto& q = fl.quads[i];
    for (int j = 0; j < 4; ++j) {
      int a = q[j], b = q[(j + 1) % 4];
      d2[i].push_back(eid[{std::min(a, b), std::max(a, b)}]);
    }
  }
  if (c.dim == 3)
    for (size_t i = 0; i < c.cells.size(); ++i) {
      for (const auto& q : cell_quads(c, (int)i)) d3[i].push_back(qid[quad_key(q)]);
    }

  int r1 = gf2_rank(d1, (int)nv);
  int r2 = gf2_rank(d2, (int)ne);
  int r3 = c.dim == 3 ? gf2_rank(d3, (int)nq) : 0;

  h.betti.resize(c.dim + 1);
  h.betti[0] = (int)(nv - r1);
  h.betti[1] = (int)(ne - r1 - r2);
  h.betti[2] = (int)(nq - r2 - r3);
  if (c.dim == 3) h.betti[3] = (int)(nh - r3);
  return h;
}

std::vector<std::vector<int>> cell_symmetries(int dim) {
  std::vector<std::vector<int>> out;
  if (dim == 2) {
    for (int refl = 0; refl < 2; ++refl)
      for (int r = 0; r < 4; ++r) {
        std::vector<int> perm(4);
        for (int i = 0; i < 4; ++i) {
          int j = refl ? (4 - i) % 4 : i;
          perm[i] = (j + r) % 4;
        }
        out.push_back(perm);
      }
    return out;
  }
  int ps[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& p : ps)
    for (int f = 0; f < 8; ++f) {
      // sigma(i): bit j of i moves to axis p[j], xor flip.
      std::vector<int> sigma(8), perm(8);
      for (int i = 0; i < 8; ++i) {
        int img = 0;
        for (int j = 0; j < 3; ++j) {
          int bit = ((i >> j) & 1) ^ ((f >> j) & 1);
          img |= bit << p[j];
        }
        sigma[i] = img;
      }
      for (int i = 0; i < 8; ++i) perm[sigma[i]] = i;  // tuple2[k] = tuple[perm[k]]
      out.push_back(perm);
    }
  return out;
}

namespace {

struct FaceMaps {
  std::map<std::array<int, 2>, std::vector<int>> edge_cells;   // dim 2
  std::map<std::array<int, 4>, std::vector<int>> quad_cells;   // dim 3
};

FaceMaps build_face_maps(const CubicalComplex& c) {
  FaceMaps fm;
  for (int i = 0; i < (int)c.cells.size(); ++i) {
    if (c.dim == 2)
      for (const auto& e : cell_edges(c, i)) fm.edge_cells[e].push_back(i);
    else
      for (const auto& q : cell_quads(c, i)) fm.quad_cells[quad_key(q)].push_back(i);
  }
  return fm;
}

void append16(std::string& s, int v) {
  s.push_back((char)((v >> 8) & 0xff));
  s.push_back((char)(v & 0xff));
}

// One rooted BFS labeling; returns the label string for this start.
std::string labeling_from(const CubicalComplex& c, const FaceMaps& fm,
                          const std::vector<int>& comp_cells, int root,
                          const std::vector<int>& rootperm) {
  std::map<int, int> label;
  int next = 0;
  auto get = [&](int v) {
    auto it = label.find(v);
    if (it != label.end()) return it->second;
    label[v] = next;
    return next++;
  };

  std::string out;
  std::set<int> visited;
  struct Gate {
    std::vector<int> face;  // ordered old-vertex tuple expected at entry
  };
  std::deque<Gate> gates;

  auto emit_cell = [&](int ci, const std::vector<int>& tuple) {
    visited.insert(ci);
    for (int v : tuple) append16(out, get(v));
    if (c.dim == 2) {
      // Gates across each directed edge, reversed for the neighbor.
      for (int i = 0; i < 4; ++i) {
        int a = tuple[i], b = tuple[(i + 1) % 4];
        gates.push_back({{b, a}});
      }
    } else {
      for (const auto& f : kHexFaces) {
        std::vector<int> q = {tuple[f[0]], tuple[f[3]], tuple[f[2]], tuple[f[1]]};
        gates.push_back({q});
      }
    }
  };

  // Root.
  {
    const auto& t = c.cells[root];
    std::vector<int> tuple(t.size());
    for (size_t i = 0; i < t.size(); ++i) tuple[i] = t[rootperm[i]];
    emit_cell(root, tuple);
  }

  static std::vector<std::vector<int>> sym2 = cell_symmetries(2);
  static std::vector<std::vector<int>> sym3 = cell_symmetries(3);
  const auto& syms = c.dim == 2 ? sym2 : sym3;

  while (!gates.empty()) {
    Gate g = gates.front();
    gates.pop_front();
    int target = -1;
    if (c.dim == 2) {
      std::array<int, 2> key = {std::min(g.face[0], g.face[1]), std::max(g.face[0], g.face[1])};
      auto it = fm.edge_cells.find(key);
      if (it == fm.edge_cells.end()) continue;
      for (int ci : it->second)
        if (!visited.count(ci)) target = ci;
    } else {
      std::array<int, 4> key = quad_key({g.face[0], g.face[1], g.face[2], g.face[3]});
      auto it = fm.quad_cells.find(key);
      if (it == fm.quad_cells.end()) continue;
      for (int ci : it->second)
        if (!visited.count(ci)) target = ci;
    }
    if (target < 0) continue;

    const auto& t = c.cells[target];
    bool placed = false;
    for (const auto& perm : syms) {
      std::vector<int> tuple(t.size());
      for (size_t i = 0; i < t.size(); ++i) tuple[i] = t[perm[i]];
      bool match;
      if (c.dim == 2)
        match = tuple[0] == g.face[0] && tuple[1] == g.face[1];
      else
        match = tuple[0] == g.face[0] && tuple[1] == g.face[1] && tuple[3] == g.face[2] &&
                tuple[2] == g.face[3];
      if (match) {
        emit_cell(target, tuple);
        placed = true;
        break;
      }
    }
    if (!placed) fail(Errc::InvalidComplex, "cell cannot be aligned to its entry face");
  }

  if ((int)visited.size() != (int)comp_cells.size())
    fail(Errc::InvalidComplex, "facet component not reachable by face gates");

  // Boundary markers in label order.
  std::vector<int> by_label(next, 0);
  for (const auto& [v, l] : label) by_label[l] = c.is_boundary_vertex(v) ? 1 : 0;
  for (int m : by_label) out.push_back((char)m);
  return out;
}

}  // namespace

CanonicalKey canonical_key(const CubicalComplex& c) {
  if (c.cells.empty()) {
    CanonicalKey k;
    k.bytes = std::string("\x00", 1);
    return k;
  }
  FaceMaps fm = build_face_maps(c);

  // Facet-connected components.
  std::vector<int> comp(c.cells.size(), -1);
  int ncomp = 0;
  for (int i = 0; i < (int)c.cells.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::deque<int> q{i};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      if (comp[u] >= 0) continue;
      comp[u] = ncomp;
      if (c.dim == 2) {
        for (const auto& e : cell_edges(c, u))
          for (int v : fm.edge_cells[e])
            if (comp[v] < 0) q.push_back(v);
      } else {
        for (const auto& qq : cell_quads(c, u))
          for (int v : fm.quad_cells[quad_key(qq)])
            if (comp[v] < 0) q.push_back(v);
      }
    }
    ++ncomp;
  }

  auto syms = cell_symmetries(c.dim);
  std::vector<std::string> keys;
  for (int cc = 0; cc < ncomp; ++cc) {
    std::vector<int> cells;
    for (int i = 0; i < (int)c.cells.size(); ++i)
      if (comp[i] == cc) cells.push_back(i);
    std::string best;
    for (int root : cells)
      for (const auto& perm : syms) {
        std::string s = labeling_from(c, fm, cells, root, perm);
        if (best.empty() || s < best) best = std::move(s);
      }
    std::string head;
    append16(head, (int)cells.size());
    keys.push_back(head + best);
  }
  std::sort(keys.begin(), keys.end());

  CanonicalKey k;
  k.bytes.push_back((char)c.dim);
  append16(k.bytes, ncomp);
  for (auto& s : keys) {
    append16(k.bytes, (int)s.size());
    k.bytes += s;
  }
  return k;
}

std::string CanonicalKey::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char ch : bytes) {
    out.push_back(digits[ch >> 4]);
    out.push_back(digits[ch & 15]);
  }
  return out;
}

bool is_closed(const CubicalComplex& c) {
  FaceLattice fl = derived_faces(c);
  if (c.dim == 2) {
    for (const auto& cs : fl.edge_cells)
      if (cs.size() != 2) return false;
  } else {
    for (const auto& cs : fl.quad_cells)
      if (cs.size() != 2) return false;
  }
  return !c.cells.empty();
}

bool is_connected(const CubicalComplex& c) {
  if (c.cells.empty()) return true;
  std::vector<std::vector<int>> at_vertex(c.vertex_count);
  for (int i = 0; i < (int)c.cells.size(); ++i)
    for (int v : c.cells[i]) at_vertex[v].push_back(i);
  std::vector<char> vis(c.cells.size(), 0);
  std::deque<int> q{0};
  size_t n = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (vis[u]) continue;
    vis[u] = 1;
    ++n;
    for (int v : c.cells[u])
      for (int w : at_vertex[v])
        if (!vis[w]) q.push_back(w);
  }
  return n == c.cells.size();
}

static bool same_cyclic_orientation(const std::array<int, 4>& a, const std::array<int, 4>& b) {
  for (int r = 0; r < 4; ++r)
    if (a[0] == b[r] && a[1] == b[(r + 1) % 4] && a[2] == b[(r + 2) % 4] && a[3] == b[(r + 3) % 4])
      return true;
  return false;
}

bool orient_consistently(CubicalComplex& c) {
  int n = (int)c.cells.size();
  std::vector<int> sign(n, 0);
  // Face adjacency.
  std::map<std::vector<int>, std::vector<int>> face_cells;
  for (int i = 0; i < n; ++i) {
    if (c.dim == 2)
      for (const auto& e : cell_edges(c, i)) face_cells[{e[0], e[1]}].push_back(i);
    else
      for (const auto& q : cell_quads(c, i)) {
        auto k = quad_key(q);
        face_cells[{k[0], k[1], k[2], k[3]}].push_back(i);
      }
  }
  auto oriented_face = [&](int ci, const std::vector<int>& key, int s) -> std::array<int, 4> {
    // Returns the cyclic walk this cell induces on the given face, with the
    // cell's sign applied (dim 2: edge as a 2-cycle padded).
    if (c.dim == 2) {
      const auto& t = c.cells[ci];
      for (int j = 0; j < 4; ++j) {
        int a = t[j], b = t[(j + 1) % 4];
        if (std::min(a, b) == key[0] && std::max(a, b) == key[1]) {
          if (s < 0) std::swap(a, b);
          return {a, b, -1, -1};
        }
      }
    } else {
      for (const auto& q : cell_quads(c, ci)) {
        auto k = quad_key(q);
        if (std::vector<int>(k.begin(), k.end()) == key) {
          std::array<int, 4> w = q;
          if (s < 0) std::reverse(w.begin(), w.end());
          return w;
        }
      }
    }
    fail(Errc::InvalidComplex, "face not found in cell");
  };

  for (int start = 0; start < n; ++start) {
    if (sign[start] != 0) continue;
    sign[start] = 1;
    std::deque<int> q{start};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      std::vector<std::vector<int>> keys;
      if (c.dim == 2)
        for (const auto& e : cell_edges(c, u)) keys.push_back({e[0], e[1]});
      else
        for (const auto& qq : cell_quads(c, u)) {
          auto k = quad_key(qq);
          keys.push_back({k[0], k[1], k[2], k[3]});
        }
      for (const auto& key : keys) {
        for (int v : face_cells[key]) {
          if (v == u) continue;
          auto fu = oriented_face(u, key, sign[u]);
          auto fv_pos = oriented_face(v, key, 1);
          bool same;
          if (c.dim == 2)
            same = fu[0] == fv_pos[0] && fu[1] == fv_pos[1];
          else
            same = same_cyclic_orientation(fu, fv_pos);
          int want = same ? -1 : 1;
          if (sign[v] == 0) {
            sign[v] = want;
            q.push_back(v);
          } else if (sign[v] != want) {
            return false;
          }
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (sign[i] < 0) {
      auto& t = c.cells[i];
      if (c.dim == 2)
        std::reverse(t.begin(), t.end());
      else {
        std::vector<int> t2(8);
        for (int k = 0; k < 8; ++k) t2[k] = t[k ^ 1];  // mirror along x
        t = t2;
      }
    }
  }
  return true;
}

CubicalComplex reference_cube() {
  CubicalComplex c;
  c.dim = 2;
  c.vertex_count = 8;
  for (const auto& f : kHexFaces) c.cells.push_back({f[0], f[1], f[2], f[3]});
  return c;
}

CubicalComplex reference_hex_cell() {
  CubicalComplex c;
  c.dim = 3;
  c.vertex_count = 8;
  c.cells.push_back({0, 1, 2, 3, 4, 5, 6, 7});
  return c;
}

CubicalComplex reference_bicuboid() {
  CubicalComplex c;
  c.dim = 3;
  c.vertex_count = 12;
  c.cells.push_back({0, 1, 2, 3, 4, 5, 6, 7});
  c.cells.push_back({4, 5, 6, 7, 8, 9, 10, 11});
  return c;
}

CubicalComplex single_quad() {
  CubicalComplex c;
  c.dim = 2;
  c.vertex_count = 4;
  c.cells.push_back({0, 1, 2, 3});
  c.boundary_vertices = {0, 1, 2, 3};
  return c;
}

std::vector<int> compact_vertices(CubicalComplex& c) {
  std::vector<char> used(c.vertex_count, 0);
  for (const auto& t : c.cells)
    for (int v : t) used[v] = 1;
  std::vector<int> remap(c.vertex_count, -1);
  int next = 0;
  for (int v = 0; v < c.vertex_count; ++v)
    if (used[v]) remap[v] = next++;
  for (auto& t : c.cells)
    for (int& v : t) v = remap[v];
  std::vector<int> bd;
  for (int v : c.boundary_vertices)
    if (v < (int)remap.size() && remap[v] >= 0) bd.push_back(remap[v]);
  std::sort(bd.begin(), bd.end());
  c.boundary_vertices = bd;
  c.vertex_count = next;
  return remap;
}

}  // namespace cubeflip
