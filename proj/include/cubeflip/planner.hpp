#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubeflip/arrangement.hpp"
#include "cubeflip/flips.hpp"

namespace cubeflip {

struct SearchBudget {
  int max_cells = 20;
  long long max_states = 2000000;
  int max_depth = 64;
};

// Constructive reduction of an even closed sphere quad mesh to the cube
// boundary. Steps are annotated with the phase of the dual-arrangement
// argument they implement: swaps that set up cancellations create loop pairs
// (loop_creation), triangle inversions transport them (loop_pairing), the
// cancelling (0,1) flips are the Whitney trick (whitney), and (0,2)/(2,0)
// flips remove or add protective circles (bubble_removal / bubble_wrap).
enum class PlanPhase { BubbleWrap, LoopCreation, LoopPairing, Whitney, BubbleRemoval };

const char* plan_phase_name(PlanPhase p);

struct ReductionPlan {
  FlipSequence seq;
  std::vector<PlanPhase> phase;  // one entry per step
};

ReductionPlan plan_reduction(const CubicalComplex& mesh);

struct PathResult {
  enum Status { Found, NoPath, BudgetExhausted } status = NoPath;
  FlipSequence seq;
  std::string reason;
  long long states_explored = 0;
};

struct PathOptions {
  bool allow_parity = false;
  // When set, only these (X,Y) flip classes may be used.
  std::optional<std::vector<std::pair<int, int>>> allowed_classes;
};

PathResult find_path(const CubicalComplex& m1, const CubicalComplex& m2,
                     const SearchBudget& budget, bool allow_parity);
PathResult find_path(const CubicalComplex& m1, const CubicalComplex& m2,
                     const SearchBudget& budget, const PathOptions& opts);

struct CensusEntry {
  CanonicalKey key;
  int component = 0;
  int parity = 0;
  int cells = 0;
};

struct CensusReport {
  std::vector<CensusEntry> states;
  int components = 0;
  bool truncated = false;
};

// Flip-graph census of disk meshes over a fixed K-gon boundary, seeded with
// one mesh of each parity.
CensusReport component_census(int boundary_k, const SearchBudget& budget, bool allow_parity);

// Census over explicit seed meshes (must be simply-connected disk meshes).
CensusReport census_over(const std::vector<CubicalComplex>& seeds, const SearchBudget& budget,
                         bool allow_parity);

// Deterministic seed meshes for the K-gon census.
std::vector<CubicalComplex> census_seeds(int boundary_k);

}  // namespace cubeflip
