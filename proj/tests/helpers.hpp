#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "cubeflip/complex.hpp"

namespace cubeflip::testing {

// Independent backtracking isomorphism matcher, used as the oracle against
// canonical_key. Tries every cell-to-cell assignment with every symmetry;
// respects boundary markers. Exponential, fine for meshes up to ~20 cells.
inline bool find_isomorphism(const CubicalComplex& a, const CubicalComplex& b) {
  if (a.dim != b.dim || a.cells.size() != b.cells.size()) return false;
  auto syms = cell_symmetries(a.dim);
  int n = (int)a.cells.size();

  std::vector<int> cell_map(n, -1);
  std::vector<char> used(n, 0);
  std::map<int, int> vmap, vrev;

  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) return true;
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
          cell_map[i] = j;
          if (go(i + 1)) return true;
          used[j] = 0;
          cell_map[i] = -1;
        }
        for (auto& [va, vb] : added) {
          vmap.erase(va);
          vrev.erase(vb);
        }
      }
    }
    return false;
  };
  return go(0);
}

}  // namespace cubeflip::testing
