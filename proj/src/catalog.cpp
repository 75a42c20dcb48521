#include "cubeflip/catalog.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace cubeflip {

FacetSubset FacetSubset::make(int n, std::vector<std::pair<int, int>> facets) {
  if (n < 1) fail(Errc::InvalidClass, "hypercube dimension must be >= 1");
  for (auto& [axis, side] : facets) {
    if (axis < 0 || axis >= n) fail(Errc::InvalidClass, "facet axis out of range");
    if (side != 0 && side != 1) fail(Errc::InvalidClass, "facet side must be 0 or 1");
  }
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
  FacetSubset s;
  s.n = n;
  s.included = std::move(facets);
  return s;
}

bool FacetSubset::contains(int axis, int side) const {
  return std::binary_search(included.begin(), included.end(), std::make_pair(axis, side));
}

FacetSubset FacetSubset::complement() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int sd = 0; sd < 2; ++sd)
      if (!contains(a, sd)) out.push_back({a, sd});
  return FacetSubset::make(n, out);
}

FlipClass classify(const FacetSubset& s) {
  FlipClass c;
  c.mesh_dim = s.n - 1;
  for (int a = 0; a < s.n; ++a) {
    bool lo = s.contains(a, 0), hi = s.contains(a, 1);
    if (!lo && !hi) ++c.x;
    if (lo && hi) ++c.y;
  }
  return c;
}

namespace {

// A face of the n-cube: free-axis mask plus fixed coordinate bits.
struct CubeFace {
  int free = 0;
  int coords = 0;  // bits of fixed axes; free-axis bits are 0
  bool operator<(const CubeFace& o) const {
    if (free != o.free) return free < o.free;
    return coords < o.coords;
  }
};

}  // namespace

bool is_disk(const FacetSubset& s) {
  int n = s.n;
  if (n > 4) fail(Errc::DimensionTooLarge, "disk oracle supports n <= 4");
  if (s.included.empty()) return false;

  // All faces of the n-cube contained in some included facet: a face lies in
  // facet (a, side) iff axis a is fixed to side.
  std::set<CubeFace> faces;
  for (int free = 0; free < (1 << n); ++free) {
    if (free == (1 << n) - 1) continue;  // the cube itself is not on the boundary
    int fixed = ((1 << n) - 1) & ~free;
    for (int sub = fixed;; sub = (sub - 1) & fixed) {
      CubeFace f{free, sub};
      bool inside = false;
      for (auto& [a, side] : s.included)
        if (!((free >> a) & 1) && ((sub >> a) & 1) == side) inside = true;
      if (inside) faces.insert(f);
      if (sub == 0) break;
    }
  }
  if (faces.empty()) return false;

  // Index faces per dimension.
  std::map<CubeFace, int> id;
  std::vector<std::vector<CubeFace>> by_dim(n);
  std::vector<std::vector<int>> id_by_dim(n);
  for (const auto& f : faces) {
    int d = __builtin_popcount(f.free);
    id[f] = (int)by_dim[d].size();
    by_dim[d].push_back(f);
  }

  // Connectivity over the 1-skeleton (vertices joined by included edges).
  {
    std::map<int, int> comp;
    for (const auto& f : by_dim[0]) comp[f.coords] = f.coords;
    std::function<int(int)> find = [&](int v) {
      while (comp[v] != v) v = comp[v] = comp[comp[v]];
      return v;
    };
    std::vector<CubeFace> no_edges;
    for (const auto& e : by_dim.size() > 1 ? by_dim[1] : no_edges) {
      int axis = __builtin_ctz(e.free);
      int v0 = e.coords, v1 = e.coords | (1 << axis);
      comp[find(v0)] = find(v1);
    }
    std::set<int> roots;
    for (auto& [v, _] : comp) roots.insert(find(v));
    if (roots.size() != 1) return false;
  }

  // Reduced GF(2) Betti numbers from boundary matrices. A k-face's boundary
  // consists of the 2k (k-1)-faces obtained by fixing one free axis.
  std::vector<int> rank(n + 1, 0);
  for (int d = 1; d < n; ++d) {
    std::vector<std::vector<int>> rows;
    for (const auto& f : by_dim[d]) {
      std::vector<int> row;
      for (int a = 0; a < n; ++a) {
        if (!((f.free >> a) & 1)) continue;
        for (int side = 0; side < 2; ++side) {
          CubeFace g{f.free & ~(1 << a), f.coords | (side << a)};
          auto it = id.find(g);
          if (it == id.end()) fail(Errc::InvalidComplex, "face lattice not closed");
          row.push_back(it->second);
        }
      }
      rows.push_back(row);
    }
    rank[d] = gf2_rank(rows, (int)by_dim[d - 1].size());
  }
  // b0 handled by connectivity; b_k = dim C_k - rank d_k - rank d_{k+1}.
  for (int d = 1; d < n; ++d) {
    int dim_ck = (int)by_dim[d].size();
    int bk = dim_ck - rank[d] - (d + 1 < n ? rank[d + 1] : 0);
    if (bk != 0) return false;
  }
  return true;
}

ClassEnumeration enumerate_classes(int mesh_dim) {
  if (mesh_dim < 1 || mesh_dim > 3)
    fail(Errc::DimensionTooLarge, "enumerate_classes supports mesh_dim in {1,2,3}");
  ClassEnumeration e;
  for (int x = 0; x <= mesh_dim; ++x)
    for (int y = 0; x + y <= mesh_dim; ++y) e.classes.push_back({mesh_dim, x, y});
  std::sort(e.classes.begin(), e.classes.end());
  std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
  for (const auto& c : e.classes) {
    auto a = std::make_pair(c.x, c.y), b = std::make_pair(c.y, c.x);
    auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    if (seen.insert(key).second)
      e.pairs.push_back({{mesh_dim, key.first.first, key.first.second},
                         {mesh_dim, key.second.first, key.second.second}});
  }
  return e;
}

FacetSubset canonical_subset(int mesh_dim, int x, int y) {
  int n = mesh_dim + 1;
  std::vector<std::pair<int, int>> f;
  for (int a = x; a < x + y; ++a) {
    f.push_back({a, 0});
    f.push_back({a, 1});
  }
  for (int a = x + y; a < n; ++a) f.push_back({a, 0});
  return FacetSubset::make(n, f);
}

namespace {

// Cell tuple of facet (axis, side) of the n-cube, using corner labels. Free
// axes in ascending order become the local axes; local corner i has bit j on
// free axis j. dim 2 emits the cyclic walk, dim 3 the binary-corner order.
std::vector<int> facet_cell(int n, int axis, int side) {
  std::vector<int> free_axes;
  for (int a = 0; a < n; ++a)
    if (a != axis) free_axes.push_back(a);
  int d = n - 1;
  std::vector<int> corners(1 << d);
  for (int i = 0; i < (1 << d); ++i) {
    int c = side << axis;
    for (int j = 0; j < d; ++j)
      if ((i >> j) & 1) c |= 1 << free_axes[j];
    corners[i] = c;
  }
  if (d == 2) return {corners[0], corners[1], corners[3], corners[2]};
  return corners;
}

CubicalComplex complex_from_facets(int n, const std::vector<std::pair<int, int>>& facets,
                                   std::map<int, int>& corner_to_id) {
  std::set<int> used;
  std::vector<std::vector<int>> raw;
  for (auto& [a, s] : facets) {
    raw.push_back(facet_cell(n, a, s));
    for (int v : raw.back()) used.insert(v);
  }
  corner_to_id.clear();
  int next = 0;
  for (int v : used) corner_to_id[v] = next++;
  CubicalComplex c;
  c.dim = n - 1;
  c.vertex_count = next;
  for (auto& t : raw) {
    for (int& v : t) v = corner_to_id[v];
    c.cells.push_back(t);
  }
  return c;
}

}  // namespace

FlipPattern generate_pattern(int mesh_dim, int x, int y) {
  if (mesh_dim != 2 && mesh_dim != 3)
    fail(Errc::InvalidClass, "generate_pattern supports mesh_dim in {2,3}");
  if (x < 0 || y < 0 || x + y > mesh_dim) fail(Errc::InvalidClass, "class out of range");
  int n = mesh_dim + 1;

  FacetSubset s = canonical_subset(mesh_dim, x, y);
  FacetSubset t = s.complement();

  FlipPattern p;
  p.mesh_dim = mesh_dim;
  p.cls = {mesh_dim, x, y};
  std::map<int, int> before_ids, after_ids;
  p.before = complex_from_facets(n, s.included, before_ids);
  p.after = complex_from_facets(n, t.included, after_ids);

  // Shared boundary corners sit on facets of both sides.
  auto on_some = [&](const FacetSubset& fs, int corner) {
    for (auto& [a, side] : fs.included)
      if (((corner >> a) & 1) == side) return true;
    return false;
  };
  for (int corner = 0; corner < (1 << n); ++corner) {
    bool in_s = on_some(s, corner), in_t = on_some(t, corner);
    if (in_s && in_t) {
      p.boundary_map.push_back({before_ids[corner], after_ids[corner]});
      p.before.boundary_vertices.push_back(before_ids[corner]);
      p.after.boundary_vertices.push_back(after_ids[corner]);
    } else if (in_s) {
      p.before_interior.push_back(before_ids[corner]);
    } else if (in_t) {
      p.after_interior.push_back(after_ids[corner]);
    }
  }
  std::sort(p.before.boundary_vertices.begin(), p.before.boundary_vertices.end());
  std::sort(p.after.boundary_vertices.begin(), p.after.boundary_vertices.end());
  std::sort(p.boundary_map.begin(), p.boundary_map.end());
  p.new_vertex_count = (int)p.after_interior.size();
  return p;
}

}  // namespace cubeflip
