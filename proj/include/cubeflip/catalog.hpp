#pragma once

#include <vector>

#include "cubeflip/complex.hpp"

namespace cubeflip {

// A set of facets of the n-hypercube. Each facet is (axis, side), side 0=low,
// 1=high. Stored deduplicated, sorted by axis then side.
struct FacetSubset {
  int n = 1;
  std::vector<std::pair<int, int>> included;

  static FacetSubset make(int n, std::vector<std::pair<int, int>> facets);
  bool contains(int axis, int side) const;
  FacetSubset complement() const;
};

// (X, Y): X axes with neither facet included, Y axes with both.
struct FlipClass {
  int mesh_dim = 1;  // d; the hypercube dimension is d+1
  int x = 0;
  int y = 0;

  int n() const { return mesh_dim + 1; }
  int before_cells() const { return 2 * y + (n() - x - y); }
  int after_cells() const { return 2 * x + (n() - x - y); }
  bool operator==(const FlipClass& o) const {
    return mesh_dim == o.mesh_dim && x == o.x && y == o.y;
  }
  bool operator<(const FlipClass& o) const {
    if (mesh_dim != o.mesh_dim) return mesh_dim < o.mesh_dim;
    if (x != o.x) return x < o.x;
    return y < o.y;
  }
};

FlipClass classify(const FacetSubset& s);

// Independent disk oracle: the subcomplex of the n-cube boundary induced by
// the facets is nonempty, connected, and has trivial reduced GF(2) homology.
// Computed from boundary matrices of the face lattice; never consults X+Y<n.
bool is_disk(const FacetSubset& s);

struct ClassEnumeration {
  std::vector<FlipClass> classes;                      // ascending (X,Y) lex
  std::vector<std::pair<FlipClass, FlipClass>> pairs;  // unordered flips (X,Y)-(Y,X)
};

ClassEnumeration enumerate_classes(int mesh_dim);

// Concrete before/after local complexes of a flip. Vertex ids of `before` are
// the (d+1)-cube corner labels (they form a prefix under the canonical
// subset); `after` ids are ranks among its used corners.
struct FlipPattern {
  int mesh_dim = 2;
  FlipClass cls;
  CubicalComplex before;
  CubicalComplex after;
  // before vertex id <-> after vertex id for the shared boundary.
  std::vector<std::pair<int, int>> boundary_map;
  std::vector<int> before_interior;  // before-side vertex ids not on the boundary
  std::vector<int> after_interior;   // after-side vertex ids not on the boundary
  int new_vertex_count = 0;
};

FlipPattern generate_pattern(int mesh_dim, int x, int y);

// Canonical representative subset of class (X,Y) in the (d+1)-cube: exclude
// both facets of axes 0..X-1, include both facets of axes X..X+Y-1, include
// only the low facet of the rest.
FacetSubset canonical_subset(int mesh_dim, int x, int y);

}  // namespace cubeflip
