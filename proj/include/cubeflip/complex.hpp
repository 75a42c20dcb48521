#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cubeflip/core.hpp"

namespace cubeflip {

// Reference corner order for hex cells: slot i sits at (i&1, (i>>1)&1, (i>>2)&1).
// The six quad faces of a hex, as cyclic corner-slot walks (inward oriented).
inline constexpr std::array<std::array<int, 4>, 6> kHexFaces = {{
    {0, 2, 6, 4},  // x-
    {1, 5, 7, 3},  // x+
    {0, 4, 5, 1},  // y-
    {2, 3, 7, 6},  // y+
    {0, 1, 3, 2},  // z-
    {4, 6, 7, 5},  // z+
}};

inline constexpr std::array<std::array<int, 2>, 12> kHexEdges = {{
    {0, 1}, {2, 3}, {4, 5}, {6, 7},
    {0, 2}, {1, 3}, {4, 6}, {5, 7},
    {0, 4}, {1, 5}, {2, 6}, {3, 7},
}};

// Quad and hex mesh as an abstract cubical complex. Quads are 4-tuples in
// cyclic order, hexes 8-tuples in binary-corner order. Cell order is part of
// the value; isomorphism-invariant comparison goes through canonical_key().
struct CubicalComplex {
  int dim = 2;  // 2 or 3
  int vertex_count = 0;
  std::vector<std::vector<int>> cells;
  std::vector<int> boundary_vertices;  // optional markers, sorted

  int cells_per() const { return dim == 2 ? 4 : 8; }
  bool is_boundary_vertex(int v) const;
};

struct Violation {
  std::string rule;
  std::vector<int> cells;
  std::vector<int> vertices;
  std::string detail;
};

struct ValidityReport {
  bool ok = true;
  std::vector<Violation> violations;
};

ValidityReport validate(const CubicalComplex& c);

// Validity of the rules that can be affected by replacing the given cells:
// face sharing, pairwise intersections and vertex links in their neighbourhood.
// Used to screen flip candidates; full validation still guards application.
bool locally_valid(const CubicalComplex& c, const std::vector<int>& touched_cells);

// Canonical cyclic form of a quad tuple: minimum over rotations and
// reflection. Used as a dictionary key for derived quad faces.
std::array<int, 4> quad_key(const std::array<int, 4>& q);

struct FaceLattice {
  std::vector<int> vertices;                      // referenced vertex ids, sorted
  std::vector<std::array<int, 2>> edges;          // sorted pairs, sorted list
  std::vector<std::array<int, 4>> quads;          // canonical cyclic keys, sorted
  std::vector<std::vector<int>> edge_cells;       // incident top cells per edge
  std::vector<std::vector<int>> quad_cells;       // incident top cells per quad (dim 3)
  // Boundary subcomplex: (dim-1)-faces incident to exactly one cell.
  std::vector<std::array<int, 2>> boundary_edges;
  std::vector<std::array<int, 4>> boundary_quads;
  std::vector<int> boundary_vertex_ids;
};

FaceLattice derived_faces(const CubicalComplex& c);

struct Homology {
  long long euler = 0;
  std::vector<int> betti;  // b0..b_dim over GF(2)
};

Homology euler_and_homology(const CubicalComplex& c);

struct CanonicalKey {
  std::string bytes;
  bool operator==(const CanonicalKey& o) const { return bytes == o.bytes; }
  bool operator!=(const CanonicalKey& o) const { return bytes != o.bytes; }
  bool operator<(const CanonicalKey& o) const { return bytes < o.bytes; }
  std::string hex() const;
};

// Complete isomorphism invariant (reflections allowed, boundary markers
// respected): exhaustive rooted BFS labeling over every (cell, symmetry)
// start, key = lexicographic minimum. Facet-connected components are
// canonicalized separately and the sorted keys concatenated.
CanonicalKey canonical_key(const CubicalComplex& c);

// Map a quad/hex tuple through one of the 8/48 cell symmetries.
std::vector<std::vector<int>> cell_symmetries(int dim);

bool is_closed(const CubicalComplex& c);
bool is_connected(const CubicalComplex& c);

// Reorders every cell tuple so that shared (dim-1)-faces are traversed with
// opposite orientations; returns false when the complex is non-orientable.
bool orient_consistently(CubicalComplex& c);

CubicalComplex reference_cube();      // 6-quad sphere mesh
CubicalComplex reference_hex_cell();  // single hex
CubicalComplex reference_bicuboid();  // two hexes sharing a face
CubicalComplex single_quad();

// Renumbers vertices so that exactly the referenced ones remain, preserving
// relative order. Returns old->new map (-1 for dropped ids).
std::vector<int> compact_vertices(CubicalComplex& c);

}  // namespace cubeflip
