#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubeflip/catalog.hpp"
#include "cubeflip/cmf.hpp"
#include "cubeflip/complex.hpp"

namespace cubeflip {

// An embedding of a flip pattern into a mesh. cells[i] is the mesh cell
// matched by pattern cell i; vertex_map sends pattern vertex ids of
// generate_pattern(cls).before to mesh vertex ids.
struct MatchSite {
  FlipClass cls;
  std::vector<int> cells;
  std::map<int, int> vertex_map;
};

struct FlipStep {
  enum Kind { Flip, Parity23, Parity32 } kind = Flip;
  FlipClass cls;                 // flips only
  std::map<int, int> map;        // flips: pattern vertex -> mesh vertex;
                                 // parity: 0..5 hexagon (2->3) or 0..6 apex+hexagon (3->2)
  std::vector<int> new_vertices; // ids in the post-apply mesh
};

struct FlipSequence {
  CanonicalKey initial_key;
  std::vector<FlipStep> steps;
};

std::string flip_sequence_to_json(const FlipSequence& s);
FlipSequence flip_sequence_from_json(const std::string& text);

// All sites of the class in deterministic order (sorted matched-cell indices,
// then lexicographic vertex map). Sites whose application would break mesh
// validity are not reported; symmetric duplicates are deduplicated by
// (cell set, orbit of the map under pattern automorphisms).
std::vector<MatchSite> find_sites(const CubicalComplex& c, const FlipClass& cls);

// Site with the given matched cell set, if any.
std::optional<MatchSite> find_site_at(const CubicalComplex& c, const FlipClass& cls,
                                      const std::vector<int>& cells);

struct FlipResult {
  CubicalComplex mesh;
  FlipStep step;
  MatchSite inverse_site;  // site in `mesh` that undoes the flip
};

FlipResult apply_flip(const CubicalComplex& c, const MatchSite& site);

// Parity-change operation: two quads sharing exactly one interior edge become
// three quads around a new vertex.
struct ParitySite {
  int cell_a = 0, cell_b = 0;
};
struct ParityInverseSite {
  int apex = 0;    // interior vertex of degree 3
  int diagonal = 0;  // which hexagon diagonal rebuilds the two quads (0..2)
};

std::vector<ParitySite> find_parity_sites(const CubicalComplex& c);
std::vector<ParityInverseSite> find_parity_inverse_sites(const CubicalComplex& c);

struct ParityResult {
  CubicalComplex mesh;
  FlipStep step;
};
ParityResult apply_parity_change(const CubicalComplex& c, const ParitySite& site);
ParityResult apply_parity_change_inverse(const CubicalComplex& c, const ParityInverseSite& site);

// m x m (x m) topological grid refinement; linear interpolation of coords.
MeshFile grid_refine(const MeshFile& m, int subdivisions);
CubicalComplex grid_refine(const CubicalComplex& c, int subdivisions);

// The (3,0)-(0,3) flip at one hex cell, as a named refinement operator.
FlipResult pillow(const CubicalComplex& c, int cell);

// Replays a sequence step by step, validating every intermediate mesh.
CubicalComplex replay(const CubicalComplex& initial, const FlipSequence& seq);

// Explicit isomorphism between two complexes (boundary markers respected),
// as a vertex map, or nullopt.
std::optional<std::map<int, int>> complex_isomorphism(const CubicalComplex& a,
                                                      const CubicalComplex& b);

}  // namespace cubeflip
