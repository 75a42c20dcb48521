#include "cubeflip/flips.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <set>

#include <json.hpp>

namespace cubeflip {

namespace {

// Enumerate isomorphisms a -> b (vertex maps); stops after `limit` found.
void enumerate_isomorphisms(const CubicalComplex& a, const CubicalComplex& b, size_t limit,
                            std::vector<std::map<int, int>>& out,
                            const std::map<int, int>* pinned = nullptr) {
  if (a.dim != b.dim || a.cells.size() != b.cells.size()) return;
  auto syms = cell_symmetries(a.dim);
  int n = (int)a.cells.size();
  std::vector<char> used(n, 0);
  std::map<int, int> vmap, vrev;
  if (pinned) {
    for (auto& [k, v] : *pinned) {
      vmap[k] = v;
      vrev[v] = k;
    }
  }

  std::function<bool(int)> go = [&](int i) -> bool {
    if (out.size() >= limit) return true;
    if (i == n) {
      std::map<int, int> clean;
      for (int v = 0; v < a.vertex_count; ++v) {
        auto it = vmap.find(v);
        if (it != vmap.end()) clean[v] = it->second;
      }
      out.push_back(clean);
      return out.size() >= limit;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      for (const auto& perm : syms) {
        std::vector<std::pair<int, int>> added;
        bool ok = true;
        for (size_t k = 0; k < a.cells[i].size() && ok; ++k) {
          int va = a.cells[i][k];
          int vb = b.cells[j][perm[k]];
          if (a.is_boundary_vertex(va) != b.is_boundary_vertex(vb)) { ok = false; break; }
          auto it = vmap.find(va);
          auto rt = vrev.find(vb);
          if (it == vmap.end() && rt == vrev.end()) {
            vmap[va] = vb;
            vrev[vb] = va;
            added.push_back({va, vb});
          } else if (it == vmap.end() || rt == vrev.end() || it->second != vb) {
            ok = false;
          }
        }
        if (ok) {
          used[j] = 1;
          bool stop = go(i + 1) && out.size() >= limit;
          used[j] = 0;
          if (stop) {
            for (auto& [va, vb] : added) { vmap.erase(va); vrev.erase(vb); }
            return true;
          }
        }
        for (auto& [va, vb] : added) { vmap.erase(va); vrev.erase(vb); }
      }
    }
    return false;
  };
  go(0);
}

struct PatternInfo {
  FlipPattern pattern;
  // Match order: cells of `before` in a facet-BFS order; entry_face[i] is the
  // shared (d-1)-face walk through which cell order[i] is first reached.
  std::vector<int> order;
  std::vector<std::vector<int>> entry_face;
  std::vector<int> interior_vertices;  // of before
  std::vector<std::array<int, 2>> interior_edges;
  std::vector<std::map<int, int>> automorphisms;  // before-vertex maps
  std::map<int, int> b2a;  // boundary: before id -> after id
  std::map<int, int> a2b;
  // Inverse flip support: iso from generate_pattern(y,x).before onto `after`.
  std::map<int, int> inv_vertex;
  std::vector<int> inv_cell;
};

std::vector<std::array<int, 2>> tuple_edges(int dim, const std::vector<int>& t) {
  std::vector<std::array<int, 2>> out;
  if (dim == 2) {
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

std::vector<std::vector<int>> tuple_faces(int dim, const std::vector<int>& t) {
  std::vector<std::vector<int>> out;
  if (dim == 2) {
    for (int i = 0; i < 4; ++i) out.push_back({t[i], t[(i + 1) % 4]});
  } else {
    for (const auto& f : kHexFaces) out.push_back({t[f[0]], t[f[1]], t[f[2]], t[f[3]]});
  }
  return out;
}

std::vector<int> face_set_key(int dim, const std::vector<int>& walk) {
  if (dim == 2) return {std::min(walk[0], walk[1]), std::max(walk[0], walk[1])};
  auto k = quad_key({walk[0], walk[1], walk[2], walk[3]});
  return {k[0], k[1], k[2], k[3]};
}

const PatternInfo& pattern_info(int mesh_dim, int x, int y) {
  static std::map<std::tuple<int, int, int>, PatternInfo> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(mesh_dim, x, y);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  PatternInfo info;
  info.pattern = generate_pattern(mesh_dim, x, y);
  const auto& before = info.pattern.before;

  int n = (int)before.cells.size();
  std::map<std::vector<int>, std::vector<int>> face_cells;
  for (int i = 0; i < n; ++i)
    for (const auto& w : tuple_faces(before.dim, before.cells[i]))
      face_cells[face_set_key(before.dim, w)].push_back(i);
  std::vector<char> seen(n, 0);
  info.order.push_back(0);
  info.entry_face.push_back({});
  seen[0] = 1;
  for (size_t qi = 0; qi < info.order.size(); ++qi) {
    int u = info.order[qi];
    for (const auto& w : tuple_faces(before.dim, before.cells[u])) {
      for (int v : face_cells[face_set_key(before.dim, w)]) {
        if (seen[v]) continue;
        seen[v] = 1;
        info.order.push_back(v);
        info.entry_face.push_back(w);
      }
    }
  }
  if ((int)info.order.size() != n) fail(Errc::InvalidClass, "pattern is not facet-connected");

  FaceLattice fl = derived_faces(before);
  std::set<int> bverts(fl.boundary_vertex_ids.begin(), fl.boundary_vertex_ids.end());
  std::set<std::array<int, 2>> bedges(fl.boundary_edges.begin(), fl.boundary_edges.end());
  for (int v = 0; v < before.vertex_count; ++v)
    if (!bverts.count(v)) info.interior_vertices.push_back(v);
  for (const auto& e : fl.edges)
    if (!bedges.count(e)) info.interior_edges.push_back(e);

  for (auto& [b, a] : info.pattern.boundary_map) {
    info.b2a[b] = a;
    info.a2b[a] = b;
  }

  // Pattern automorphisms whose boundary action extends to the after side.
  {
    std::vector<std::map<int, int>> all;
    enumerate_isomorphisms(before, before, 5000, all);
    for (const auto& sigma : all) {
      std::map<int, int> tau;
      bool ok = true;
      for (auto& [a, b] : info.a2b) {
        auto moved = sigma.find(b);
        if (moved == sigma.end()) { ok = false; break; }
        tau[a] = info.b2a[moved->second];
      }
      if (!ok) continue;
      std::vector<std::map<int, int>> ext;
      enumerate_isomorphisms(info.pattern.after, info.pattern.after, 1, ext, &tau);
      if (!ext.empty()) info.automorphisms.push_back(sigma);
    }
  }

  // Iso from the reverse pattern's before side onto this pattern's after side.
  {
    auto rev = generate_pattern(mesh_dim, y, x);
    std::vector<std::map<int, int>> iso;
    CubicalComplex after_unmarked = info.pattern.after;
    CubicalComplex rev_unmarked = rev.before;
    enumerate_isomorphisms(rev_unmarked, after_unmarked, 1, iso);
    if (iso.empty()) fail(Errc::InvalidClass, "no reverse-pattern isomorphism");
    info.inv_vertex = iso[0];
    info.inv_cell.assign(rev.before.cells.size(), -1);
    for (size_t i = 0; i < rev.before.cells.size(); ++i) {
      std::set<int> img;
      for (int v : rev.before.cells[i]) img.insert(info.inv_vertex[v]);
      for (size_t j = 0; j < info.pattern.after.cells.size(); ++j) {
        std::set<int> s(info.pattern.after.cells[j].begin(), info.pattern.after.cells[j].end());
        if (s == img) info.inv_cell[i] = (int)j;
      }
      if (info.inv_cell[i] < 0) fail(Errc::InvalidClass, "reverse-pattern cell mismatch");
    }
  }

  return cache.emplace(key, std::move(info)).first->second;
}

struct MeshIndex {
  std::map<std::vector<int>, std::vector<int>> face_cells;
  std::vector<std::vector<int>> vertex_cells;
  std::set<int> boundary_verts;
  std::set<std::array<int, 2>> boundary_edges;

  explicit MeshIndex(const CubicalComplex& c) {
    vertex_cells.resize(c.vertex_count);
    for (int i = 0; i < (int)c.cells.size(); ++i) {
      for (int v : c.cells[i]) vertex_cells[v].push_back(i);
      for (const auto& w : tuple_faces(c.dim, c.cells[i]))
        face_cells[face_set_key(c.dim, w)].push_back(i);
    }
    FaceLattice fl = derived_faces(c);
    boundary_verts.insert(fl.boundary_vertex_ids.begin(), fl.boundary_vertex_ids.end());
    boundary_edges.insert(fl.boundary_edges.begin(), fl.boundary_edges.end());
  }
};

CubicalComplex raw_apply(const CubicalComplex& c, const PatternInfo& info, const MatchSite& site,
                         std::vector<int>* fresh_out, std::vector<int>* after_cell_index,
                         std::vector<int>* remap_out = nullptr) {
  const auto& pat = info.pattern;
  CubicalComplex out;
  out.dim = c.dim;
  out.vertex_count = c.vertex_count;
  out.boundary_vertices = c.boundary_vertices;

  std::set<int> matched(site.cells.begin(), site.cells.end());
  for (int i = 0; i < (int)c.cells.size(); ++i)
    if (!matched.count(i)) out.cells.push_back(c.cells[i]);

  std::map<int, int> after_to_mesh;
  for (auto& [b, a] : pat.boundary_map) after_to_mesh[a] = site.vertex_map.at(b);
  std::vector<int> fresh;
  {
    std::vector<int> interior = pat.after_interior;
    std::sort(interior.begin(), interior.end());
    for (int a : interior) {
      after_to_mesh[a] = out.vertex_count;
      fresh.push_back(out.vertex_count);
      ++out.vertex_count;
    }
  }
  int first_after = (int)out.cells.size();
  for (const auto& cell : pat.after.cells) {
    std::vector<int> t;
    for (int v : cell) t.push_back(after_to_mesh.at(v));
    out.cells.push_back(t);
  }
  auto remap = compact_vertices(out);
  if (fresh_out) {
    fresh_out->clear();
    for (int f : fresh) fresh_out->push_back(remap[f]);
  }
  if (after_cell_index) {
    after_cell_index->clear();
    for (int i = 0; i < (int)pat.after.cells.size(); ++i)
      after_cell_index->push_back(first_after + i);
  }
  if (remap_out) *remap_out = remap;
  return out;
}

bool site_structurally_ok(const CubicalComplex& c, const MeshIndex& idx, const PatternInfo& info,
                          const MatchSite& site) {
  const auto& before = info.pattern.before;
  if ((int)site.cells.size() != (int)before.cells.size()) return false;
  std::set<int> cellset(site.cells.begin(), site.cells.end());
  if (cellset.size() != site.cells.size()) return false;
  std::set<int> img;
  for (auto& [p, v] : site.vertex_map) {
    if (p < 0 || p >= before.vertex_count || v < 0 || v >= c.vertex_count) return false;
    img.insert(v);
  }
  if ((int)img.size() != before.vertex_count ||
      (int)site.vertex_map.size() != before.vertex_count)
    return false;
  auto syms = cell_symmetries(c.dim);
  for (size_t i = 0; i < before.cells.size(); ++i) {
    if (site.cells[i] < 0 || site.cells[i] >= (int)c.cells.size()) return false;
    const auto& mt = c.cells[site.cells[i]];
    bool ok = false;
    for (const auto& perm : syms) {
      bool match = true;
      for (size_t k = 0; k < mt.size() && match; ++k)
        if (site.vertex_map.at(before.cells[i][perm[k]]) != mt[k]) match = false;
      if (match) { ok = true; break; }
    }
    if (!ok) return false;
  }
  for (int pv : info.interior_vertices) {
    int mv = site.vertex_map.at(pv);
    for (int ci : idx.vertex_cells[mv])
      if (!cellset.count(ci)) return false;
    if (idx.boundary_verts.count(mv)) return false;
    if (c.is_boundary_vertex(mv)) return false;
  }
  for (const auto& pe : info.interior_edges) {
    int a = site.vertex_map.at(pe[0]), b = site.vertex_map.at(pe[1]);
    std::array<int, 2> me = {std::min(a, b), std::max(a, b)};
    if (idx.boundary_edges.count(me)) return false;
    for (int ci : idx.vertex_cells[me[0]]) {
      if (cellset.count(ci)) continue;
      for (const auto& e2 : tuple_edges(c.dim, c.cells[ci]))
        if (e2 == me) return false;
    }
  }
  return true;
}

std::vector<int> map_to_vector(const std::map<int, int>& m, int nverts) {
  std::vector<int> v(nverts, -1);
  for (auto& [k, val] : m) v[k] = val;
  return v;
}

}  // namespace

std::optional<std::map<int, int>> complex_isomorphism(const CubicalComplex& a,
                                                      const CubicalComplex& b) {
  std::vector<std::map<int, int>> iso;
  enumerate_isomorphisms(a, b, 1, iso);
  if (iso.empty()) return std::nullopt;
  return iso[0];
}

static std::vector<MatchSite> find_sites_impl(const CubicalComplex& c, const FlipClass& cls,
                                              const std::set<int>* restrict_cells) {
  if (cls.mesh_dim != c.dim) fail(Errc::DimensionMismatch, "class dimension differs from mesh");
  const PatternInfo& info = pattern_info(cls.mesh_dim, cls.x, cls.y);
  const auto& before = info.pattern.before;
  MeshIndex idx(c);
  auto syms = cell_symmetries(c.dim);

  std::vector<MatchSite> raw;
  int npc = (int)before.cells.size();

  std::vector<int> cell_of(npc, -1);
  std::map<int, int> vmap;
  std::set<int> used_cells, used_verts;

  // Try to place pattern cell order[pos] against mesh cell `target`.
  std::function<void(int)> extend = [&](int pos) {
    if (pos == npc) {
      MatchSite s;
      s.cls = cls;
      s.cells.resize(npc);
      for (int i = 0; i < npc; ++i) s.cells[info.order[i]] = cell_of[i];
      s.vertex_map = vmap;
      raw.push_back(s);
      return;
    }
    int pc = info.order[pos];
    std::vector<int> img;
    for (int pv : info.entry_face[pos]) {
      auto it = vmap.find(pv);
      if (it == vmap.end()) return;
      img.push_back(it->second);
    }
    auto fit = idx.face_cells.find(face_set_key(c.dim, img));
    if (fit == idx.face_cells.end()) return;
    for (int target : fit->second) {
      if (used_cells.count(target)) continue;
      if (restrict_cells && !restrict_cells->count(target)) continue;
      const auto& mt = c.cells[target];
      for (const auto& perm : syms) {
        bool ok = true;
        std::vector<std::pair<int, int>> added;
        for (size_t k = 0; k < mt.size() && ok; ++k) {
          int pv = before.cells[pc][perm[k]];
          int mv = mt[k];
          auto it = vmap.find(pv);
          if (it != vmap.end()) {
            if (it->second != mv) ok = false;
          } else if (used_verts.count(mv)) {
            ok = false;
          } else {
            vmap[pv] = mv;
            used_verts.insert(mv);
            added.push_back({pv, mv});
          }
        }
        if (ok) {
          used_cells.insert(target);
          cell_of[pos] = target;
          extend(pos + 1);
          used_cells.erase(target);
          cell_of[pos] = -1;
        }
        for (auto& [pv, mv] : added) {
          vmap.erase(pv);
          used_verts.erase(mv);
        }
      }
    }
  };

  for (int seed = 0; seed < (int)c.cells.size(); ++seed) {
    if (restrict_cells && !restrict_cells->count(seed)) continue;
    const auto& mt = c.cells[seed];
    for (const auto& perm : syms) {
      bool ok = true;
      std::vector<std::pair<int, int>> added;
      for (size_t k = 0; k < mt.size() && ok; ++k) {
        int pv = before.cells[info.order[0]][perm[k]];
        int mv = mt[k];
        auto it = vmap.find(pv);
        if (it != vmap.end()) {
          if (it->second != mv) ok = false;
        } else if (used_verts.count(mv)) {
          ok = false;
        } else {
          vmap[pv] = mv;
          used_verts.insert(mv);
          added.push_back({pv, mv});
        }
      }
      if (ok) {
        used_cells.insert(seed);
        cell_of[0] = seed;
        extend(1);
        used_cells.erase(seed);
        cell_of[0] = -1;
      }
      for (auto& [pv, mv] : added) {
        vmap.erase(pv);
        used_verts.erase(mv);
      }
    }
  }

  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  std::vector<MatchSite> out;
  for (auto& s : raw) {
    if (!site_structurally_ok(c, idx, info, s)) continue;
    std::vector<int> cellkey = s.cells;
    std::sort(cellkey.begin(), cellkey.end());
    std::vector<int> best = map_to_vector(s.vertex_map, before.vertex_count);
    std::map<int, int> bestmap = s.vertex_map;
    for (const auto& sigma : info.automorphisms) {
      std::map<int, int> composed;
      for (auto& [p, q] : sigma) composed[p] = s.vertex_map.at(q);
      auto vec = map_to_vector(composed, before.vertex_count);
      if (vec < best) {
        best = vec;
        bestmap = composed;
      }
    }
    if (!seen.insert({cellkey, best}).second) continue;
    MatchSite rep = s;
    rep.vertex_map = bestmap;
    bool ok = true;
    for (int i = 0; i < npc && ok; ++i) {
      std::set<int> want;
      for (int v : before.cells[i]) want.insert(rep.vertex_map.at(v));
      int found = -1;
      for (int ci : s.cells) {
        std::set<int> ms(c.cells[ci].begin(), c.cells[ci].end());
        if (ms == want) found = ci;
      }
      if (found < 0) ok = false;
      else rep.cells[i] = found;
    }
    if (!ok) continue;
    std::vector<int> after_cells;
    CubicalComplex result = raw_apply(c, info, rep, nullptr, &after_cells);
    if (!locally_valid(result, after_cells)) continue;
    out.push_back(rep);
  }

  std::sort(out.begin(), out.end(), [&](const MatchSite& a, const MatchSite& b) {
    std::vector<int> ka = a.cells, kb = b.cells;
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    if (ka != kb) return ka < kb;
    return map_to_vector(a.vertex_map, before.vertex_count) <
           map_to_vector(b.vertex_map, before.vertex_count);
  });
  return out;
}

std::vector<MatchSite> find_sites(const CubicalComplex& c, const FlipClass& cls) {
  return find_sites_impl(c, cls, nullptr);
}

std::optional<MatchSite> find_site_at(const CubicalComplex& c, const FlipClass& cls,
                                      const std::vector<int>& cells) {
  std::set<int> restrict(cells.begin(), cells.end());
  std::vector<int> want = cells;
  std::sort(want.begin(), want.end());
  for (const auto& s : find_sites_impl(c, cls, &restrict)) {
    std::vector<int> have = s.cells;
    std::sort(have.begin(), have.end());
    if (have == want) return s;
  }
  return std::nullopt;
}

FlipResult apply_flip(const CubicalComplex& c, const MatchSite& site) {
  if (site.cls.mesh_dim != c.dim) fail(Errc::DimensionMismatch, "site dimension mismatch");
  const PatternInfo& info = pattern_info(site.cls.mesh_dim, site.cls.x, site.cls.y);
  MeshIndex idx(c);
  if (!site_structurally_ok(c, idx, info, site))
    fail(Errc::SiteStale, "site is not valid for this mesh");

  FlipResult r;
  std::vector<int> fresh, after_cells, remap;
  r.mesh = raw_apply(c, info, site, &fresh, &after_cells, &remap);
  if (!locally_valid(r.mesh, after_cells)) fail(Errc::SiteStale, "flip result fails validation");

  r.step.kind = FlipStep::Flip;
  r.step.cls = site.cls;
  r.step.map = site.vertex_map;
  r.step.new_vertices = fresh;

  std::map<int, int> after_to_mesh;
  for (auto& [b, a] : info.pattern.boundary_map) after_to_mesh[a] = remap[site.vertex_map.at(b)];
  {
    std::vector<int> interior = info.pattern.after_interior;
    std::sort(interior.begin(), interior.end());
    for (size_t i = 0; i < interior.size(); ++i) after_to_mesh[interior[i]] = fresh[i];
  }
  r.inverse_site.cls = {site.cls.mesh_dim, site.cls.y, site.cls.x};
  for (auto& [p, a] : info.inv_vertex) r.inverse_site.vertex_map[p] = after_to_mesh.at(a);
  for (int ac : info.inv_cell) r.inverse_site.cells.push_back(after_cells[ac]);
  return r;
}

std::vector<ParitySite> find_parity_sites(const CubicalComplex& c) {
  std::vector<ParitySite> out;
  if (c.dim != 2) return out;
  FaceLattice fl = derived_faces(c);
  for (size_t i = 0; i < fl.edges.size(); ++i) {
    if (fl.edge_cells[i].size() != 2) continue;
    int a = fl.edge_cells[i][0], b = fl.edge_cells[i][1];
    std::set<int> sa(c.cells[a].begin(), c.cells[a].end());
    int shared = 0;
    for (int v : c.cells[b])
      if (sa.count(v)) ++shared;
    if (shared != 2) continue;
    // keep only applicable sites
    try {
      apply_parity_change(c, {a, b});
    } catch (const Error&) {
      continue;
    }
    out.push_back({a, b});
  }
  std::sort(out.begin(), out.end(), [](const ParitySite& x, const ParitySite& y) {
    return std::tie(x.cell_a, x.cell_b) < std::tie(y.cell_a, y.cell_b);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const ParitySite& x, const ParitySite& y) {
                          return x.cell_a == y.cell_a && x.cell_b == y.cell_b;
                        }),
            out.end());
  return out;
}

namespace {

std::vector<int> union_hexagon(const CubicalComplex& c, int cell_a, int cell_b) {
  const auto& qa = c.cells[cell_a];
  std::vector<int> qb = c.cells[cell_b];
  std::set<int> sb(qb.begin(), qb.end());
  int pos = -1;
  for (int i = 0; i < 4; ++i)
    if (sb.count(qa[i]) && sb.count(qa[(i + 1) % 4])) pos = i;
  if (pos < 0) fail(Errc::NotAdjacent, "cells do not share an edge");
  int a = qa[pos], b = qa[(pos + 1) % 4];
  int cc = qa[(pos + 2) % 4], d = qa[(pos + 3) % 4];
  int bpos = -1;
  for (int i = 0; i < 4; ++i)
    if (qb[i] == b && qb[(i + 1) % 4] == a) bpos = i;
  if (bpos < 0) {
    std::reverse(qb.begin(), qb.end());
    for (int i = 0; i < 4; ++i)
      if (qb[i] == b && qb[(i + 1) % 4] == a) bpos = i;
  }
  if (bpos < 0) fail(Errc::NotAdjacent, "cells do not share a single edge");
  int e = qb[(bpos + 2) % 4], f = qb[(bpos + 3) % 4];
  std::vector<int> hex = {b, cc, d, a, e, f};
  std::set<int> hs(hex.begin(), hex.end());
  if (hs.size() != 6) fail(Errc::DegenerateUnion, "union hexagon is degenerate");
  return hex;
}

}  // namespace

ParityResult apply_parity_change(const CubicalComplex& c, const ParitySite& site) {
  if (c.dim != 2) fail(Errc::DimensionMismatch, "parity change needs a quad mesh");
  if (site.cell_a < 0 || site.cell_b < 0 || site.cell_a >= (int)c.cells.size() ||
      site.cell_b >= (int)c.cells.size() || site.cell_a == site.cell_b)
    fail(Errc::NotAdjacent, "bad parity site");
  auto hex0 = union_hexagon(c, site.cell_a, site.cell_b);

  // Two rotation classes place the three new quads' middle corners on either
  // alternating triple of the hexagon; take the first that yields a valid mesh.
  for (int rot = 0; rot < 2; ++rot) {
    std::vector<int> hex = hex0;
    std::rotate(hex.begin(), hex.begin() + rot, hex.end());
    ParityResult r;
    r.mesh.dim = 2;
    r.mesh.vertex_count = c.vertex_count + 1;
    r.mesh.boundary_vertices = c.boundary_vertices;
    for (int i = 0; i < (int)c.cells.size(); ++i)
      if (i != site.cell_a && i != site.cell_b) r.mesh.cells.push_back(c.cells[i]);
    int w = c.vertex_count;
    r.mesh.cells.push_back({w, hex[0], hex[1], hex[2]});
    r.mesh.cells.push_back({w, hex[2], hex[3], hex[4]});
    r.mesh.cells.push_back({w, hex[4], hex[5], hex[0]});
    auto remap = compact_vertices(r.mesh);
    int nc = (int)r.mesh.cells.size();
    if (!locally_valid(r.mesh, {nc - 3, nc - 2, nc - 1})) continue;
    r.step.kind = FlipStep::Parity23;
    for (int i = 0; i < 6; ++i) r.step.map[i] = hex[i];
    r.step.new_vertices = {remap[w]};
    return r;
  }
  fail(Errc::DegenerateUnion, "parity change result is invalid");
}

std::vector<ParityInverseSite> find_parity_inverse_sites(const CubicalComplex& c) {
  std::vector<ParityInverseSite> out;
  if (c.dim != 2) return out;
  MeshIndex idx(c);
  for (int v = 0; v < c.vertex_count; ++v) {
    if (idx.vertex_cells[v].size() != 3) continue;
    if (idx.boundary_verts.count(v) || c.is_boundary_vertex(v)) continue;
    for (int d = 0; d < 3; ++d) out.push_back({v, d});
  }
  return out;
}

ParityResult apply_parity_change_inverse(const CubicalComplex& c, const ParityInverseSite& site) {
  if (c.dim != 2) fail(Errc::DimensionMismatch, "parity change needs a quad mesh");
  MeshIndex idx(c);
  int w = site.apex;
  if (w < 0 || w >= c.vertex_count || idx.vertex_cells[w].size() != 3 ||
      idx.boundary_verts.count(w))
    fail(Errc::NotAdjacent, "apex is not an interior degree-3 vertex");
  auto cells = idx.vertex_cells[w];

  std::vector<int> hex;
  {
    std::vector<std::vector<int>> rot;
    for (int ci : cells) {
      auto t = c.cells[ci];
      int p = (int)(std::find(t.begin(), t.end(), w) - t.begin());
      rot.push_back({t[p], t[(p + 1) % 4], t[(p + 2) % 4], t[(p + 3) % 4]});
    }
    std::vector<char> used(3, 0);
    used[0] = 1;
    hex.push_back(rot[0][1]);
    hex.push_back(rot[0][2]);
    int need = rot[0][3];
    for (int step = 0; step < 2; ++step) {
      int nxt = -1;
      for (int j = 0; j < 3; ++j) {
        if (used[j]) continue;
        if (rot[j][1] == need) {
          nxt = j;
        } else if (rot[j][3] == need) {
          rot[j] = {rot[j][0], rot[j][3], rot[j][2], rot[j][1]};
          nxt = j;
        }
        if (nxt >= 0) break;
      }
      if (nxt < 0) fail(Errc::NotAdjacent, "quads around apex do not chain");
      used[nxt] = 1;
      hex.push_back(rot[nxt][1]);
      hex.push_back(rot[nxt][2]);
      need = rot[nxt][3];
    }
    if (need != hex[0]) fail(Errc::NotAdjacent, "quads around apex do not close");
  }
  std::set<int> hs(hex.begin(), hex.end());
  if (hs.size() != 6) fail(Errc::DegenerateUnion, "hexagon around apex is degenerate");

  std::rotate(hex.begin(), hex.begin() + (site.diagonal % 3), hex.end());

  ParityResult r;
  r.mesh.dim = 2;
  r.mesh.vertex_count = c.vertex_count;
  r.mesh.boundary_vertices = c.boundary_vertices;
  for (int i = 0; i < (int)c.cells.size(); ++i)
    if (std::find(cells.begin(), cells.end(), i) == cells.end())
      r.mesh.cells.push_back(c.cells[i]);
  r.mesh.cells.push_back({hex[0], hex[1], hex[2], hex[3]});
  r.mesh.cells.push_back({hex[3], hex[4], hex[5], hex[0]});
  compact_vertices(r.mesh);
  {
    int nc = (int)r.mesh.cells.size();
    if (!locally_valid(r.mesh, {nc - 2, nc - 1}))
      fail(Errc::DegenerateUnion, "inverse parity result is invalid");
  }

  r.step.kind = FlipStep::Parity32;
  r.step.map[0] = w;
  for (int i = 0; i < 6; ++i) r.step.map[i + 1] = hex[i];
  return r;
}

namespace {

struct GridBuilder {
  int m = 1;
  int next_id = 0;
  std::map<std::array<int, 2>, int> edge_base;
  std::map<std::array<int, 4>, int> face_base;
  std::vector<int> cell_base;

  int edge_point(int a, int b, int i) const {
    int lo = std::min(a, b);
    int j = a == lo ? i : m - i;
    return edge_base.at({lo, std::max(a, b)}) + (j - 1);
  }
  int face_point(const std::vector<int>& walk, int a, int b) const {
    auto key = quad_key({walk[0], walk[1], walk[2], walk[3]});
    static const int pos[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    long long ca = 0, cb = 0;
    long long wgt[4] = {(long long)(m - a) * (m - b), (long long)a * (m - b), (long long)a * b,
                        (long long)(m - a) * b};
    for (int i = 0; i < 4; ++i) {
      int at = -1;
      for (int j = 0; j < 4; ++j)
        if (key[j] == walk[i]) at = j;
      ca += (long long)pos[at][0] * m * wgt[i];
      cb += (long long)pos[at][1] * m * wgt[i];
    }
    int s = (int)(ca / ((long long)m * m)), t = (int)(cb / ((long long)m * m));
    return face_base.at(key) + (s - 1) * (m - 1) + (t - 1);
  }
};

}  // namespace

CubicalComplex grid_refine(const CubicalComplex& c, int m) {
  MeshFile mf;
  mf.complex = c;
  return grid_refine(mf, m).complex;
}

MeshFile grid_refine(const MeshFile& mfin, int m) {
  const CubicalComplex& c = mfin.complex;
  if (m < 1) fail(Errc::ParamOutOfRange, "subdivision factor must be >= 1");
  if (!validate(c).ok) fail(Errc::InvalidComplex, "refinement needs a valid complex");
  if (m == 1) return mfin;

  FaceLattice fl = derived_faces(c);
  GridBuilder g;
  g.m = m;
  g.next_id = c.vertex_count;
  bool with_coords = mfin.coords.has_value();
  std::vector<Vec3> coords;
  if (with_coords) coords = *mfin.coords;
  auto alloc = [&](int count) {
    int base = g.next_id;
    g.next_id += count;
    return base;
  };
  for (const auto& e : fl.edges) g.edge_base[e] = alloc(m - 1);
  if (c.dim == 3)
    for (const auto& q : fl.quads) g.face_base[q] = alloc((m - 1) * (m - 1));
  int per_cell = c.dim == 2 ? (m - 1) * (m - 1) : (m - 1) * (m - 1) * (m - 1);
  for (size_t i = 0; i < c.cells.size(); ++i) g.cell_base.push_back(alloc(per_cell));
  if (with_coords) coords.resize(g.next_id);

  MeshFile out;
  out.complex.dim = c.dim;
  out.complex.vertex_count = g.next_id;

  for (size_t ci = 0; ci < c.cells.size(); ++ci) {
    const auto& t = c.cells[ci];
    if (c.dim == 2) {
      auto pid = [&](int i, int j) -> int {
        bool bi = (i == 0 || i == m), bj = (j == 0 || j == m);
        if (bi && bj) {
          if (i == 0 && j == 0) return t[0];
          if (i == m && j == 0) return t[1];
          if (i == m && j == m) return t[2];
          return t[3];
        }
        if (j == 0) return g.edge_point(t[0], t[1], i);
        if (i == m) return g.edge_point(t[1], t[2], j);
        if (j == m) return g.edge_point(t[3], t[2], i);
        if (i == 0) return g.edge_point(t[0], t[3], j);
        return g.cell_base[ci] + (i - 1) * (m - 1) + (j - 1);
      };
      if (with_coords) {
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= m; ++j) {
            double u = double(i) / m, v = double(j) / m;
            const auto& P = *mfin.coords;
            coords[pid(i, j)] = P[t[0]] * ((1 - u) * (1 - v)) + P[t[1]] * (u * (1 - v)) +
                                P[t[2]] * (u * v) + P[t[3]] * ((1 - u) * v);
          }
      }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          out.complex.cells.push_back(
              {pid(i, j), pid(i + 1, j), pid(i + 1, j + 1), pid(i, j + 1)});
    } else {
      auto corner = [&](int bx, int by, int bz) { return t[bx + 2 * by + 4 * bz]; };
      auto pid = [&](int i, int j, int k) -> int {
        int ext = (i == 0 || i == m) + (j == 0 || j == m) + (k == 0 || k == m);
        if (ext == 3) return corner(i / m, j / m, k / m);
        if (ext == 2) {
          if (i > 0 && i < m)
            return g.edge_point(corner(0, j / m, k / m), corner(1, j / m, k / m), i);
          if (j > 0 && j < m)
            return g.edge_point(corner(i / m, 0, k / m), corner(i / m, 1, k / m), j);
          return g.edge_point(corner(i / m, j / m, 0), corner(i / m, j / m, 1), k);
        }
        if (ext == 1) {
          for (int f = 0; f < 6; ++f) {
            int axis = f / 2, side = f % 2;
            int v = axis == 0 ? i : axis == 1 ? j : k;
            if (v != side * m) continue;
            const auto& fw = kHexFaces[f];
            std::vector<int> walk = {t[fw[0]], t[fw[1]], t[fw[2]], t[fw[3]]};
            int P[3] = {i, j, k};
            int C0[3] = {(fw[0] & 1) * m, ((fw[0] >> 1) & 1) * m, ((fw[0] >> 2) & 1) * m};
            int C1[3] = {(fw[1] & 1) * m, ((fw[1] >> 1) & 1) * m, ((fw[1] >> 2) & 1) * m};
            int C3[3] = {(fw[3] & 1) * m, ((fw[3] >> 1) & 1) * m, ((fw[3] >> 2) & 1) * m};
            int a = 0, b = 0;
            for (int ax = 0; ax < 3; ++ax) {
              int d1 = (C1[ax] - C0[ax]) / m, d3 = (C3[ax] - C0[ax]) / m;
              if (d1 != 0) a = d1 > 0 ? P[ax] - C0[ax] : C0[ax] - P[ax];
              if (d3 != 0) b = d3 > 0 ? P[ax] - C0[ax] : C0[ax] - P[ax];
            }
            return g.face_point(walk, a, b);
          }
          fail(Errc::InvalidComplex, "face point not resolved");
        }
        return g.cell_base[ci] + ((i - 1) * (m - 1) + (j - 1)) * (m - 1) + (k - 1);
      };
      if (with_coords) {
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j <= m; ++j)
            for (int k = 0; k <= m; ++k) {
              double u = double(i) / m, v = double(j) / m, w = double(k) / m;
              const auto& P = *mfin.coords;
              Vec3 p{0, 0, 0};
              for (int s = 0; s < 8; ++s) {
                double wu = (s & 1) ? u : 1 - u;
                double wv = (s & 2) ? v : 1 - v;
                double ww = (s & 4) ? w : 1 - w;
                p += P[t[s]] * (wu * wv * ww);
              }
              coords[pid(i, j, k)] = p;
            }
      }
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) {
            std::vector<int> cell;
            for (int s = 0; s < 8; ++s)
              cell.push_back(pid(i + (s & 1), j + ((s >> 1) & 1), k + ((s >> 2) & 1)));
            out.complex.cells.push_back(cell);
          }
    }
  }

  std::set<int> new_boundary(c.boundary_vertices.begin(), c.boundary_vertices.end());
  if (!c.boundary_vertices.empty())
    for (const auto& e : fl.boundary_edges)
      if (c.is_boundary_vertex(e[0]) && c.is_boundary_vertex(e[1]))
        for (int i = 1; i < m; ++i) new_boundary.insert(g.edge_point(e[0], e[1], i));
  out.complex.boundary_vertices.assign(new_boundary.begin(), new_boundary.end());
  if (with_coords) out.coords = coords;
  if (!validate(out.complex).ok) fail(Errc::InvalidComplex, "refinement produced invalid complex");
  return out;
}

FlipResult pillow(const CubicalComplex& c, int cell) {
  if (c.dim != 3) fail(Errc::DimensionMismatch, "pillowing applies to hex meshes");
  auto site = find_site_at(c, {3, 3, 0}, {cell});
  if (!site) fail(Errc::SiteStale, "cell is not a (3,0) site");
  return apply_flip(c, *site);
}

std::string flip_sequence_to_json(const FlipSequence& s) {
  nlohmann::ordered_json j;
  j["initial_key"] = s.initial_key.hex();
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& st : s.steps) {
    nlohmann::ordered_json e;
    e["kind"] = st.kind == FlipStep::Flip ? "flip" : "parity";
    if (st.kind == FlipStep::Flip)
      e["class"] = {st.cls.x, st.cls.y};
    else
      e["class"] = st.kind == FlipStep::Parity23 ? std::vector<int>{2, 3} : std::vector<int>{3, 2};
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (auto& [k, v] : st.map) m[std::to_string(k)] = v;
    e["map"] = m;
    e["new_vertices"] = st.new_vertices;
    j["steps"].push_back(e);
  }
  return j.dump() + "\n";
}

FlipSequence flip_sequence_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, std::string("flip sequence: ") + e.what());
  }
  FlipSequence s;
  try {
    std::string hexs = j.at("initial_key").get<std::string>();
    if (hexs.size() % 2) fail(Errc::ParseError, "flip sequence: odd key length");
    for (size_t i = 0; i < hexs.size(); i += 2)
      s.initial_key.bytes.push_back((char)std::stoi(hexs.substr(i, 2), nullptr, 16));
    for (const auto& e : j.at("steps")) {
      FlipStep st;
      std::string kind = e.at("kind").get<std::string>();
      auto cls = e.at("class").get<std::vector<int>>();
      if (kind == "flip") {
        st.kind = FlipStep::Flip;
        st.cls.x = cls.at(0);
        st.cls.y = cls.at(1);
      } else if (kind == "parity") {
        st.kind = (cls.at(0) == 2) ? FlipStep::Parity23 : FlipStep::Parity32;
      } else {
        fail(Errc::ParseError, "flip sequence: unknown step kind " + kind);
      }
      for (auto it = e.at("map").begin(); it != e.at("map").end(); ++it)
        st.map[std::stoi(it.key())] = it.value().get<int>();
      if (e.contains("new_vertices")) st.new_vertices = e["new_vertices"].get<std::vector<int>>();
      s.steps.push_back(st);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("flip sequence: ") + e.what());
  }
  return s;
}

CubicalComplex replay(const CubicalComplex& initial, const FlipSequence& seq) {
  if (!(canonical_key(initial) == seq.initial_key))
    fail(Errc::BoundaryMismatch, "initial mesh does not match the sequence key");
  CubicalComplex cur = initial;
  for (const auto& st : seq.steps) {
    if (st.kind == FlipStep::Flip) {
      FlipClass cls{cur.dim, st.cls.x, st.cls.y};
      const PatternInfo& info = pattern_info(cls.mesh_dim, cls.x, cls.y);
      MatchSite site;
      site.cls = cls;
      site.vertex_map = st.map;
      MeshIndex idx(cur);
      for (const auto& pc : info.pattern.before.cells) {
        std::set<int> img;
        for (int v : pc) img.insert(st.map.at(v));
        int found = -1;
        for (int ci : idx.vertex_cells[*img.begin()]) {
          std::set<int> ms(cur.cells[ci].begin(), cur.cells[ci].end());
          if (ms == img) found = ci;
        }
        if (found < 0) fail(Errc::SiteStale, "replay: matched cell missing");
        site.cells.push_back(found);
      }
      cur = apply_flip(cur, site).mesh;
    } else if (st.kind == FlipStep::Parity23) {
      std::set<int> hexset;
      for (int i = 0; i < 6; ++i) hexset.insert(st.map.at(i));
      std::vector<int> inside;
      for (int i = 0; i < (int)cur.cells.size(); ++i) {
        bool sub = true;
        for (int v : cur.cells[i])
          if (!hexset.count(v)) sub = false;
        if (sub) inside.push_back(i);
      }
      int ca = -1, cb = -1;
      for (size_t x = 0; x < inside.size() && ca < 0; ++x)
        for (size_t y = x + 1; y < inside.size() && ca < 0; ++y) {
          std::set<int> u(cur.cells[inside[x]].begin(), cur.cells[inside[x]].end());
          u.insert(cur.cells[inside[y]].begin(), cur.cells[inside[y]].end());
          if (u == hexset) { ca = inside[x]; cb = inside[y]; }
        }
      if (ca < 0) fail(Errc::SiteStale, "replay: parity cells missing");
      cur = apply_parity_change(cur, {ca, cb}).mesh;
    } else {
      int w = st.map.at(0);
      // the apex is removed, so result ids above it shift down by one
      auto shifted = [&](int h) { return h > w ? h - 1 : h; };
      bool done = false;
      for (const auto& s : find_parity_inverse_sites(cur)) {
        if (s.apex != w) continue;
        ParityResult r = apply_parity_change_inverse(cur, s);
        const auto& qa = r.mesh.cells[r.mesh.cells.size() - 2];
        const auto& qb = r.mesh.cells[r.mesh.cells.size() - 1];
        std::set<int> sa(qa.begin(), qa.end()), sc(qb.begin(), qb.end());
        int d1 = shifted(st.map.at(1)), d2 = shifted(st.map.at(4));
        if (sa.count(d1) && sa.count(d2) && sc.count(d1) && sc.count(d2)) {
          cur = r.mesh;
          done = true;
          break;
        }
      }
      if (!done) fail(Errc::SiteStale, "replay: inverse parity site missing");
    }
    if (!validate(cur).ok) fail(Errc::InvalidComplex, "replay produced invalid mesh");
  }
  return cur;
}

}  // namespace cubeflip
