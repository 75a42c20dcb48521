#include "cubeflip/arrangement.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include <json.hpp>

namespace cubeflip {

namespace {

int mod4(int x) { return ((x % 4) + 4) % 4; }

}  // namespace

void check_arrangement(const CurveArrangement& a) {
  int n = a.crossings();
  if (n == 0) fail(Errc::NoCrossings, "arrangement has no crossings");
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) {
      Dart d = a.adj[c][p];
      if (d.crossing < 0 || d.crossing >= n || d.port < 0 || d.port > 3)
        fail(Errc::ParseError, "arrangement adjacency out of range");
      if (d.crossing == c && d.port == p)
        fail(Errc::ParseError, "arrangement has a fixed-point dart");
      Dart back = a.adj[d.crossing][d.port];
      if (!(back == Dart{c, p})) fail(Errc::ParseError, "arrangement adjacency not an involution");
    }
  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  int cnt = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    if (seen[u]) continue;
    seen[u] = 1;
    ++cnt;
    for (int p = 0; p < 4; ++p)
      if (!seen[a.adj[u][p].crossing]) q.push_back(a.adj[u][p].crossing);
  }
  if (cnt != n) fail(Errc::Disconnected, "arrangement is disconnected");
  auto faces = arrangement_faces(a);
  long long V = n, E = 2LL * n, F = (long long)faces.walks.size();
  if (V - E + F != 2) fail(Errc::ParseError, "arrangement does not embed in the sphere");
}

ArrangementFaces arrangement_faces(const CurveArrangement& a) {
  int n = a.crossings();
  ArrangementFaces out;
  out.face_of.assign(n, {-1, -1, -1, -1});
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) {
      if (out.face_of[c][p] >= 0) continue;
      int id = (int)out.walks.size();
      std::vector<Dart> walk;
      Dart d{c, p};
      while (out.face_of[d.crossing][d.port] < 0) {
        out.face_of[d.crossing][d.port] = id;
        walk.push_back(d);
        Dart t = a.twin(d);
        d = Dart{t.crossing, mod4(t.port + 1)};
      }
      out.walks.push_back(walk);
    }
  return out;
}

std::vector<std::vector<Dart>> curves(const CurveArrangement& a) {
  int n = a.crossings();
  std::vector<std::array<char, 4>> entered(n, {0, 0, 0, 0});
  std::vector<std::vector<Dart>> out;
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p) {
      if (entered[c][p]) continue;
      std::vector<Dart> walk;
      Dart d{c, p};
      while (!entered[d.crossing][d.port]) {
        entered[d.crossing][d.port] = 1;
        walk.push_back(d);
        Dart exitp{d.crossing, mod4(d.port + 2)};
        d = a.twin(exitp);
      }
      // mark the reverse traversal as covered too
      for (const auto& e : walk) {
        Dart exitp{e.crossing, mod4(e.port + 2)};
        Dart back = a.twin(exitp);
        (void)back;
        entered[exitp.crossing][exitp.port] = 1;
      }
      out.push_back(walk);
    }
  return out;
}

CurveArrangement dualize(const CubicalComplex& mesh) {
  if (mesh.dim != 2) fail(Errc::DimensionMismatch, "dual arrangements are for quad meshes");
  if (!validate(mesh).ok) fail(Errc::InvalidComplex, "dualize needs a valid mesh");
  if (!is_closed(mesh)) fail(Errc::NotClosedSphere, "dualize needs a closed mesh");
  Homology h = euler_and_homology(mesh);
  if (h.euler != 2 || h.betti[0] != 1) fail(Errc::NotClosedSphere, "dualize needs a sphere mesh");

  CubicalComplex m = mesh;
  if (!orient_consistently(m)) fail(Errc::NotClosedSphere, "mesh is not orientable");

  std::map<std::pair<int, int>, Dart> by_directed;
  for (int i = 0; i < (int)m.cells.size(); ++i)
    for (int p = 0; p < 4; ++p) {
      int u = m.cells[i][p], v = m.cells[i][(p + 1) % 4];
      by_directed[{u, v}] = Dart{i, p};
    }
  CurveArrangement a;
  a.adj.resize(m.cells.size());
  for (int i = 0; i < (int)m.cells.size(); ++i)
    for (int p = 0; p < 4; ++p) {
      int u = m.cells[i][p], v = m.cells[i][(p + 1) % 4];
      auto it = by_directed.find({v, u});
      if (it == by_directed.end()) fail(Errc::NotClosedSphere, "unpaired mesh edge");
      a.adj[i][p] = it->second;
    }
  check_arrangement(a);
  return a;
}

CubicalComplex primalize(const CurveArrangement& a) {
  check_arrangement(a);
  auto w = is_three_connected(a);
  if (!w.three_connected)
    fail(Errc::NotThreeConnected, "arrangement is not 3-connected (separating pair " +
                                      std::to_string(w.cut_a) + "," + std::to_string(w.cut_b) +
                                      ")");
  auto faces = arrangement_faces(a);
  CubicalComplex c;
  c.dim = 2;
  c.vertex_count = (int)faces.walks.size();
  for (int i = 0; i < a.crossings(); ++i) {
    std::vector<int> quad(4);
    for (int p = 0; p < 4; ++p) quad[p] = faces.face_of[i][p];
    c.cells.push_back(quad);
  }
  if (!validate(c).ok) fail(Errc::NotThreeConnected, "primal complex is invalid");
  return c;
}

ConnectivityWitness is_three_connected(const CurveArrangement& a) {
  int n = a.crossings();
  ConnectivityWitness w;
  if (n < 4) {
    w.three_connected = false;
    w.cut_a = 0;
    w.cut_b = n > 1 ? 1 : 0;
    return w;
  }
  std::vector<std::set<int>> nbr(n);
  for (int c = 0; c < n; ++c)
    for (int p = 0; p < 4; ++p)
      if (a.adj[c][p].crossing != c) nbr[c].insert(a.adj[c][p].crossing);

  for (int rm = 0; rm < n; ++rm) {
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), child_count(n, 0);
    int timer = 0;
    int root = rm == 0 ? 1 : 0;
    std::function<void(int)> dfs = [&](int u) {
      disc[u] = low[u] = timer++;
      for (int v : nbr[u]) {
        if (v == rm) continue;
        if (disc[v] < 0) {
          parent[v] = u;
          ++child_count[u];
          dfs(v);
          low[u] = std::min(low[u], low[v]);
          if (parent[u] != -1 && low[v] >= disc[u] && w.three_connected) {
            w.three_connected = false;
            w.cut_a = rm;
            w.cut_b = u;
          }
        } else if (v != parent[u]) {
          low[u] = std::min(low[u], disc[v]);
        }
      }
    };
    dfs(root);
    if (child_count[root] > 1 && w.three_connected) {
      w.three_connected = false;
      w.cut_a = rm;
      w.cut_b = root;
    }
    int visited = 0;
    for (int i = 0; i < n; ++i)
      if (disc[i] >= 0) ++visited;
    if (visited != n - 1 && w.three_connected) {
      w.three_connected = false;
      w.cut_a = rm;
      w.cut_b = rm;
    }
    if (!w.three_connected) return w;
  }
  return w;
}

namespace {

// Surgery helper: removes crossings, adds new ones, rewires germ darts.
struct Surgery {
  const CurveArrangement& in;
  CurveArrangement out;
  std::vector<int> old2new;
  std::map<Dart, Dart> germ_map;

  Surgery(const CurveArrangement& a, const std::set<int>& removed, int added) : in(a) {
    old2new.assign(a.crossings(), -1);
    int next = 0;
    for (int c = 0; c < a.crossings(); ++c)
      if (!removed.count(c)) old2new[c] = next++;
    out.adj.resize(next + added);
  }

  // germ_map keys are darts of removed crossings carrying a connection out of
  // the removed region; values are the new darts those connections attach to.
  void finish() {
    // surviving-to-surviving adjacency
    for (int c = 0; c < in.crossings(); ++c) {
      if (old2new[c] < 0) continue;
      for (int p = 0; p < 4; ++p) {
        Dart t = in.adj[c][p];
        if (old2new[t.crossing] >= 0)
          out.adj[old2new[c]][p] = Dart{old2new[t.crossing], t.port};
      }
    }
    // germ connections
    for (const auto& [g, nd] : germ_map) {
      Dart partner = in.adj[g.crossing][g.port];
      if (old2new[partner.crossing] >= 0) {
        Dart sp{old2new[partner.crossing], partner.port};
        out.adj[nd.crossing][nd.port] = sp;
        out.adj[sp.crossing][sp.port] = nd;
      } else {
        auto it = germ_map.find(partner);
        if (it == germ_map.end()) fail(Errc::LocationInvalid, "unmapped germ dart");
        out.adj[nd.crossing][nd.port] = it->second;
        out.adj[it->second.crossing][it->second.port] = nd;
      }
    }
  }
};

CurveArrangement add_circle(const CurveArrangement& a, int x) {
  if (x < 0 || x >= a.crossings()) fail(Errc::LocationInvalid, "no such crossing");
  CurveArrangement out = a;
  int base = (int)out.adj.size();
  out.adj.resize(base + 4);
  // k_p sits on the germ leaving port p of x: its port 0 faces x, port 2 the
  // old neighbour, ports 1/3 run along the circle.
  for (int p = 0; p < 4; ++p) {
    int kp = base + p;
    Dart old = a.adj[x][p];
    if (old.crossing == x) {
      out.adj[kp][2] = Dart{base + old.port, 2};
    } else {
      out.adj[kp][2] = old;
      out.adj[old.crossing][old.port] = Dart{kp, 2};
    }
    out.adj[x][p] = Dart{kp, 0};
    out.adj[kp][0] = Dart{x, p};
    // quadrant face closure: the face of dart (x,p) walks x -> k_p -> k_{p-1}
    out.adj[kp][1] = Dart{base + mod4(p - 1), 3};
    out.adj[kp][3] = Dart{base + mod4(p + 1), 1};
  }
  check_arrangement(out);
  return out;
}

CurveArrangement remove_circle(const CurveArrangement& a, int x) {
  if (x < 0 || x >= a.crossings()) fail(Errc::LocationInvalid, "no such crossing");
  int k[4];
  int kport[4];
  for (int p = 0; p < 4; ++p) {
    Dart d = a.adj[x][p];
    k[p] = d.crossing;
    kport[p] = d.port;
    if (k[p] == x) fail(Errc::LocationInvalid, "loop at crossing");
  }
  std::set<int> ks(k, k + 4);
  if (ks.size() != 4 || ks.count(x)) fail(Errc::LocationInvalid, "no enclosing circle");
  // each k must be a circle crossing: its circle ports connect consecutive ks
  for (int p = 0; p < 4; ++p) {
    Dart c1 = a.adj[k[p]][mod4(kport[p] + 1)];
    Dart c3 = a.adj[k[p]][mod4(kport[p] + 3)];
    bool ok = (c1.crossing == k[mod4(p + 1)] && c3.crossing == k[mod4(p - 1)]) ||
              (c1.crossing == k[mod4(p - 1)] && c3.crossing == k[mod4(p + 1)]);
    if (!ok) fail(Errc::LocationInvalid, "circle is not closed around the crossing");
  }
  Surgery s(a, ks, 0);
  for (int p = 0; p < 4; ++p) s.germ_map[Dart{k[p], mod4(kport[p] + 2)}] = Dart{s.old2new[x], p};
  s.finish();
  check_arrangement(s.out);
  return s.out;
}

// The (1,0) flip dual: the transversals at the two ends of edge e swap along
// the strand through e, crossing each other twice around it.
CurveArrangement push_together(const CurveArrangement& a, Dart e) {
  if (e.crossing < 0 || e.crossing >= a.crossings() || e.port < 0 || e.port > 3)
    fail(Errc::LocationInvalid, "bad edge dart");
  Dart f = a.twin(e);
  int c1 = e.crossing, c2 = f.crossing;
  int p1 = e.port, p2 = f.port;
  if (c1 == c2) fail(Errc::LocationInvalid, "push edge is a loop");

  Surgery s(a, {c1, c2}, 4);
  int base = (int)s.out.adj.size() - 4;
  int Y = base, Z = base + 1, M = base + 2, N = base + 3;
  // Along the strand: S_left - y - z - S_right; the swapped transversals cross
  // at m (the side of the face of dart (c1,p1)) and n (the other side). Port
  // assignments follow from triangle-face closure around the middle segment.
  s.out.adj[Y][0] = Dart{Z, 2};
  s.out.adj[Z][2] = Dart{Y, 0};
  s.out.adj[Y][3] = Dart{M, 0};
  s.out.adj[M][0] = Dart{Y, 3};
  s.out.adj[Y][1] = Dart{N, 1};
  s.out.adj[N][1] = Dart{Y, 1};
  s.out.adj[Z][3] = Dart{M, 3};
  s.out.adj[M][3] = Dart{Z, 3};
  s.out.adj[Z][1] = Dart{N, 2};
  s.out.adj[N][2] = Dart{Z, 1};
  s.germ_map[Dart{c1, mod4(p1 + 2)}] = Dart{Y, 2};  // S_left
  s.germ_map[Dart{c2, mod4(p2 + 2)}] = Dart{Z, 0};  // S_right
  s.germ_map[Dart{c1, mod4(p1 + 3)}] = Dart{M, 1};  // b, side A
  s.germ_map[Dart{c1, mod4(p1 + 1)}] = Dart{N, 0};  // b, side B
  s.germ_map[Dart{c2, mod4(p2 + 1)}] = Dart{M, 2};  // c, side A
  s.germ_map[Dart{c2, mod4(p2 + 3)}] = Dart{N, 3};  // c, side B
  s.finish();
  check_arrangement(s.out);
  return s.out;
}

// Inverse of push_together; e names the strand segment inside the lens.
CurveArrangement pull_apart(const CurveArrangement& a, Dart e) {
  if (e.crossing < 0 || e.crossing >= a.crossings() || e.port < 0 || e.port > 3)
    fail(Errc::LocationInvalid, "bad edge dart");
  Dart f = a.twin(e);
  int y = e.crossing, z = f.crossing;
  int pyz = e.port, pzy = f.port;
  if (y == z) fail(Errc::LocationInvalid, "pull edge is a loop");

  // Exact inverse of push_together. In the pushed picture, m is reached from y
  // via port pyz+3 and from z via pzy+1, with y-facing and z-facing germs
  // rotation-adjacent at m; n mirrors this. The reflected configuration is
  // accepted too (sides swap).
  for (int mirror = 0; mirror < 2; ++mirror) {
    int sA = mirror ? 1 : 3;  // offset from pyz toward m at y
    int sB = mirror ? 3 : 1;
    int rot = mirror ? 3 : 1;  // my.port == mz.port + rot at m
    Dart my = a.adj[y][mod4(pyz + sA)];
    Dart ny = a.adj[y][mod4(pyz + sB)];
    Dart mz = a.adj[z][mod4(pzy + sB)];
    Dart nz = a.adj[z][mod4(pzy + sA)];
    int m = my.crossing, n = ny.crossing;
    if (mz.crossing != m || nz.crossing != n) continue;
    std::set<int> all = {y, z, m, n};
    if (all.size() != 4) continue;
    if (mod4(mz.port + rot) != my.port) continue;
    if (mod4(ny.port + rot) != nz.port) continue;

    Surgery s(a, all, 2);
    int C1 = (int)s.out.adj.size() - 2, C2 = C1 + 1;
    s.out.adj[C1][0] = Dart{C2, 2};
    s.out.adj[C2][2] = Dart{C1, 0};
    // C1 carries the b transversal, C2 the c transversal.
    s.germ_map[Dart{y, mod4(pyz + 2)}] = Dart{C1, 2};        // S_left
    s.germ_map[Dart{z, mod4(pzy + 2)}] = Dart{C2, 0};        // S_right
    s.germ_map[Dart{m, mod4(mz.port + 2)}] = Dart{C1, sA};   // b via m
    s.germ_map[Dart{n, mod4(nz.port + 2)}] = Dart{C1, sB};   // b via n
    s.germ_map[Dart{m, mod4(my.port + 2)}] = Dart{C2, sA};   // c via m
    s.germ_map[Dart{n, mod4(ny.port + 2)}] = Dart{C2, sB};   // c via n
    s.finish();
    check_arrangement(s.out);
    return s.out;
  }
  fail(Errc::LocationInvalid, "edge is not inside a pullable lens");
}

CurveArrangement invert_triangle(const CurveArrangement& a, Dart d0) {
  auto faces = arrangement_faces(a);
  int fid = faces.face_of[d0.crossing][d0.port];
  auto walk = faces.walks[fid];
  if (walk.size() != 3) fail(Errc::LocationInvalid, "face is not a triangle");
  std::set<int> cs;
  for (const auto& d : walk) cs.insert(d.crossing);
  if (cs.size() != 3) fail(Errc::LocationInvalid, "degenerate triangle");

  // Walk darts d1=(a,pa), d2=(b,pb), d3=(c,pc); edges a-b on strand u,
  // b-c on w, c-a on v. Each pairwise crossing slides along both of its
  // strands to the far side: u&v re-cross between the far germ pair, etc.
  int A = walk[0].crossing, B = walk[1].crossing, C = walk[2].crossing;
  int pa = walk[0].port, pb = walk[1].port, pc = walk[2].port;

  for (int mirror = 0; mirror < 2; ++mirror) {
    Surgery s(a, {A, B, C}, 3);
    int nX = (int)s.out.adj.size() - 3;  // new u&v crossing
    int nY = nX + 1;                     // new u&w crossing
    int nZ = nX + 2;                     // new v&w crossing
    if (!mirror) {
      s.out.adj[nY][1] = Dart{nX, 0};
      s.out.adj[nX][0] = Dart{nY, 1};
      s.out.adj[nX][1] = Dart{nZ, 0};
      s.out.adj[nZ][0] = Dart{nX, 1};
      s.out.adj[nZ][1] = Dart{nY, 0};
      s.out.adj[nY][0] = Dart{nZ, 1};
      s.germ_map[Dart{A, mod4(pa + 2)}] = Dart{nY, 3};  // u germ at old a
      s.germ_map[Dart{A, mod4(pa + 1)}] = Dart{nZ, 2};  // v germ at old a
      s.germ_map[Dart{B, mod4(pb + 2)}] = Dart{nZ, 3};  // w germ at old b
      s.germ_map[Dart{B, mod4(pb + 1)}] = Dart{nX, 2};  // u germ at old b
      s.germ_map[Dart{C, mod4(pc + 2)}] = Dart{nX, 3};  // v germ at old c
      s.germ_map[Dart{C, mod4(pc + 1)}] = Dart{nY, 2};  // w germ at old c
    } else {
      s.out.adj[nY][3] = Dart{nX, 0};
      s.out.adj[nX][0] = Dart{nY, 3};
      s.out.adj[nX][3] = Dart{nZ, 0};
      s.out.adj[nZ][0] = Dart{nX, 3};
      s.out.adj[nZ][3] = Dart{nY, 0};
      s.out.adj[nY][0] = Dart{nZ, 3};
      s.germ_map[Dart{A, mod4(pa + 2)}] = Dart{nY, 1};
      s.germ_map[Dart{A, mod4(pa + 1)}] = Dart{nZ, 2};
      s.germ_map[Dart{B, mod4(pb + 2)}] = Dart{nZ, 1};
      s.germ_map[Dart{B, mod4(pb + 1)}] = Dart{nX, 2};
      s.germ_map[Dart{C, mod4(pc + 2)}] = Dart{nX, 1};
      s.germ_map[Dart{C, mod4(pc + 1)}] = Dart{nY, 2};
    }
    try {
      s.finish();
      check_arrangement(s.out);
      return s.out;
    } catch (const Error&) {
      if (mirror) throw;
    }
  }
  fail(Errc::LocationInvalid, "triangle inversion failed");
}

// The (1,1) flip dual: the transversal at the middle of a straight two-edge
// spine becomes the spine; the outer transversals are cut and cross-resewn.
CurveArrangement do_switch(const CurveArrangement& a, Dart e1, Dart e2, int variant) {
  if (e1.crossing < 0 || e1.crossing >= a.crossings() || e2.crossing < 0 ||
      e2.crossing >= a.crossings())
    fail(Errc::LocationInvalid, "bad switch darts");
  Dart cp1 = a.twin(e1);
  int C = cp1.crossing;
  Dart ce2 = e2;
  if (ce2.crossing != C) {
    ce2 = a.twin(e2);
    if (ce2.crossing != C) fail(Errc::LocationInvalid, "switch edges do not meet");
  }
  Dart cq = a.twin(ce2);
  int P = e1.crossing, Q = cq.crossing;
  int pp = e1.port, qq = cq.port;
  if (mod4(cp1.port + 2) != ce2.port) fail(Errc::LocationInvalid, "spine is not straight");
  if (P == C || C == Q || P == Q) fail(Errc::LocationInvalid, "switch crossings must be distinct");

  int up = variant ? 3 : 1;
  int dn = variant ? 1 : 3;

  Surgery s(a, {P, C, Q}, 3);
  int A = (int)s.out.adj.size() - 3, B = A + 1, Cc = A + 2;
  s.out.adj[A][3] = Dart{B, 1};
  s.out.adj[B][1] = Dart{A, 3};
  s.out.adj[B][3] = Dart{Cc, 1};
  s.out.adj[Cc][1] = Dart{B, 3};
  s.germ_map[Dart{P, mod4(pp + 2)}] = Dart{B, 2};          // gamma_left
  s.germ_map[Dart{Q, mod4(qq + 2)}] = Dart{B, 0};          // gamma_right
  s.germ_map[Dart{P, mod4(pp + up)}] = Dart{A, 2};         // beta_up
  s.germ_map[Dart{P, mod4(pp + dn)}] = Dart{Cc, 2};        // beta_down
  s.germ_map[Dart{Q, mod4(qq - up)}] = Dart{A, 0};         // delta_up
  s.germ_map[Dart{Q, mod4(qq - dn)}] = Dart{Cc, 0};        // delta_down
  s.germ_map[Dart{C, mod4(cp1.port - up)}] = Dart{A, 1};   // alpha_up
  s.germ_map[Dart{C, mod4(cp1.port - dn)}] = Dart{Cc, 3};  // alpha_down
  s.finish();
  check_arrangement(s.out);
  return s.out;
}

}  // namespace

CurveArrangement bubble_wrap(const CurveArrangement& a) {
  check_arrangement(a);
  int n0 = a.crossings();
  CurveArrangement cur = a;
  for (int x = 0; x < n0; ++x) cur = add_circle(cur, x);
  std::vector<std::pair<Dart, Dart>> original_edges;
  for (int c = 0; c < n0; ++c)
    for (int p = 0; p < 4; ++p) {
      Dart t = a.adj[c][p];
      Dart me{c, p};
      if (me < t || t < me) {
        if (me < t) original_edges.push_back({me, t});
      }
    }
  for (const auto& [du, dv] : original_edges) {
    int ku = n0 + 4 * du.crossing + du.port;
    int kv = n0 + 4 * dv.crossing + dv.port;
    int before = cur.crossings();
    cur = add_circle(cur, ku);
    cur = add_circle(cur, kv);
    int cu = before + 2, cv = before + 4 + 2;
    Dart seg{cu, 2};
    if (cur.twin(seg).crossing != cv) fail(Errc::LocationInvalid, "bubble wiring broke");
    cur = push_together(cur, seg);
  }
  return cur;
}

CurveArrangement rewrite(const CurveArrangement& a, const RewriteOp& op) {
  check_arrangement(a);
  switch (op.kind) {
    case RewriteOp::AddCircle: return add_circle(a, op.at.crossing);
    case RewriteOp::RemoveCircle: return remove_circle(a, op.at.crossing);
    case RewriteOp::PushTogether: return push_together(a, op.at);
    case RewriteOp::PullApart: return pull_apart(a, op.at);
    case RewriteOp::InvertTriangle: return invert_triangle(a, op.at);
    case RewriteOp::Switch: return do_switch(a, op.at, op.at2, op.variant);
  }
  fail(Errc::LocationInvalid, "unknown rewrite kind");
}

RewriteOp::Kind flip_as_rewrite(const FlipClass& cls) {
  if (cls.x == 2 && cls.y == 0) return RewriteOp::AddCircle;
  if (cls.x == 0 && cls.y == 2) return RewriteOp::RemoveCircle;
  if (cls.x == 1 && cls.y == 0) return RewriteOp::PushTogether;
  if (cls.x == 0 && cls.y == 1) return RewriteOp::PullApart;
  if (cls.x == 0 && cls.y == 0) return RewriteOp::InvertTriangle;
  if (cls.x == 1 && cls.y == 1) return RewriteOp::Switch;
  fail(Errc::InvalidClass, "no dual rewrite for this class");
}

namespace {

Dart dual_edge_between(const CurveArrangement& a, int cell1, int cell2) {
  for (int p = 0; p < 4; ++p)
    if (a.adj[cell1][p].crossing == cell2) return Dart{cell1, p};
  fail(Errc::LocationInvalid, "cells are not adjacent in the dual");
}

}  // namespace

RewriteOp rewrite_op_for_site(const CubicalComplex& c, const MatchSite& site) {
  CurveArrangement a = dualize(c);
  RewriteOp op;
  op.kind = flip_as_rewrite(site.cls);
  auto pat = generate_pattern(site.cls.mesh_dim, site.cls.x, site.cls.y);

  FaceLattice fl = derived_faces(pat.before);
  int npc = (int)pat.before.cells.size();
  std::vector<std::set<int>> padj(npc);
  for (size_t i = 0; i < fl.edges.size(); ++i)
    if (fl.edge_cells[i].size() == 2)
      for (int x : fl.edge_cells[i])
        for (int y : fl.edge_cells[i])
          if (x != y) padj[x].insert(y);

  switch (op.kind) {
    case RewriteOp::AddCircle:
      op.at = Dart{site.cells[0], 0};
      break;
    case RewriteOp::RemoveCircle: {
      int center = -1;
      for (int i = 0; i < npc; ++i)
        if ((int)padj[i].size() == 4) center = i;
      if (center < 0) fail(Errc::LocationInvalid, "no center cell in (0,2) pattern");
      op.at = Dart{site.cells[center], 0};
      break;
    }
    case RewriteOp::PushTogether:
      op.at = dual_edge_between(a, site.cells[0], site.cells[1]);
      break;
    case RewriteOp::PullApart: {
      std::vector<int> mids;
      for (int i = 0; i < npc; ++i)
        if ((int)padj[i].size() == 3) mids.push_back(i);
      if (mids.size() != 2) fail(Errc::LocationInvalid, "no middle edge in (0,1) pattern");
      op.at = dual_edge_between(a, site.cells[mids[0]], site.cells[mids[1]]);
      break;
    }
    case RewriteOp::InvertTriangle: {
      auto faces = arrangement_faces(a);
      std::set<int> want(site.cells.begin(), site.cells.end());
      for (const auto& walk : faces.walks) {
        if (walk.size() != 3) continue;
        std::set<int> have;
        for (const auto& d : walk) have.insert(d.crossing);
        if (have == want) {
          op.at = walk[0];
          return op;
        }
      }
      fail(Errc::LocationInvalid, "no triangle face for (0,0) site");
    }
    case RewriteOp::Switch: {
      int mid = -1;
      for (int i = 0; i < npc; ++i)
        if ((int)padj[i].size() == 2) mid = i;
      if (mid < 0) fail(Errc::LocationInvalid, "no middle cell in (1,1) pattern");
      std::vector<int> ends;
      for (int i = 0; i < npc; ++i)
        if (i != mid) ends.push_back(i);
      op.at = dual_edge_between(a, site.cells[ends[0]], site.cells[mid]);
      op.at2 = dual_edge_between(a, site.cells[mid], site.cells[ends[1]]);
      break;
    }
    default:
      break;
  }
  return op;
}

std::string arrangement_key(const CurveArrangement& a) {
  int n = a.crossings();
  std::string best;
  for (int c0 = 0; c0 < n; ++c0)
    for (int p0 = 0; p0 < 4; ++p0)
      for (int o : {1, -1}) {
        std::vector<int> label(n, -1), base(n, -1);
        std::vector<int> order;
        label[c0] = 0;
        base[c0] = p0;
        order.push_back(c0);
        std::string sig;
        for (size_t qi = 0; qi < order.size(); ++qi) {
          int cc = order[qi];
          for (int k = 0; k < 4; ++k) {
            int p = mod4(base[cc] + o * k);
            Dart t = a.adj[cc][p];
            if (label[t.crossing] < 0) {
              label[t.crossing] = (int)order.size();
              base[t.crossing] = t.port;
              order.push_back(t.crossing);
            }
            sig.push_back((char)(label[t.crossing] & 0xff));
            sig.push_back((char)((label[t.crossing] >> 8) & 0xff));
            sig.push_back((char)mod4(o * (t.port - base[t.crossing])));
          }
        }
        if (best.empty() || sig < best) best = sig;
      }
  return best;
}

std::string arrangement_to_json(const CurveArrangement& a) {
  nlohmann::ordered_json j;
  j["crossings"] = a.crossings();
  auto edges = nlohmann::ordered_json::array();
  for (int c = 0; c < a.crossings(); ++c)
    for (int p = 0; p < 4; ++p) {
      Dart me{c, p}, t = a.adj[c][p];
      if (me < t) edges.push_back({{me.crossing, me.port}, {t.crossing, t.port}});
    }
  j["edges"] = edges;
  return j.dump() + "\n";
}

CurveArrangement arrangement_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, std::string("arrangement: ") + e.what());
  }
  CurveArrangement a;
  try {
    int n = j.at("crossings").get<int>();
    if (n < 1) fail(Errc::NoCrossings, "arrangement needs at least one crossing");
    a.adj.assign(n, {Dart{-1, -1}, Dart{-1, -1}, Dart{-1, -1}, Dart{-1, -1}});
    for (const auto& e : j.at("edges")) {
      int c1 = e.at(0).at(0).get<int>(), p1 = e.at(0).at(1).get<int>();
      int c2 = e.at(1).at(0).get<int>(), p2 = e.at(1).at(1).get<int>();
      if (c1 < 0 || c1 >= n || c2 < 0 || c2 >= n || p1 < 0 || p1 > 3 || p2 < 0 || p2 > 3)
        fail(Errc::ParseError, "arrangement: edge endpoint out of range");
      if (a.adj[c1][p1].crossing >= 0 || a.adj[c2][p2].crossing >= 0)
        fail(Errc::ParseError, "arrangement: port used twice");
      if (c1 == c2 && p1 == p2) fail(Errc::ParseError, "arrangement: degenerate edge");
      a.adj[c1][p1] = Dart{c2, p2};
      a.adj[c2][p2] = Dart{c1, p1};
    }
    for (int c = 0; c < n; ++c)
      for (int p = 0; p < 4; ++p)
        if (a.adj[c][p].crossing < 0) fail(Errc::ParseError, "arrangement: unused port");
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("arrangement: ") + e.what());
  }
  check_arrangement(a);
  return a;
}

}  // namespace cubeflip
