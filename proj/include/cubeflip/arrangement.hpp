#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubeflip/complex.hpp"
#include "cubeflip/flips.hpp"

namespace cubeflip {

// Embedded 4-regular multigraph on the sphere: one crossing per vertex, four
// ports in rotation order, transversal strand pairing fixed as 0<->2, 1<->3.
struct Dart {
  int crossing = -1;
  int port = -1;
  bool operator==(const Dart& o) const { return crossing == o.crossing && port == o.port; }
  bool operator<(const Dart& o) const {
    return std::tie(crossing, port) < std::tie(o.crossing, o.port);
  }
};

struct CurveArrangement {
  // adj[c][p] = dart at the other end of the edge leaving crossing c, port p.
  std::vector<std::array<Dart, 4>> adj;

  int crossings() const { return (int)adj.size(); }
  Dart twin(const Dart& d) const { return adj[d.crossing][d.port]; }
};

// Structural validation: involution without fixed points, sphere Euler
// relation, connectedness.
void check_arrangement(const CurveArrangement& a);

// Faces as dart orbits of twin-then-rotate; face_of[dart] and the walks.
struct ArrangementFaces {
  std::vector<std::vector<Dart>> walks;
  std::vector<std::array<int, 4>> face_of;  // per crossing, per port
};
ArrangementFaces arrangement_faces(const CurveArrangement& a);

// Closed strand walks through transversal pairs. Each curve is listed as the
// sequence of darts along which it enters successive crossings.
std::vector<std::vector<Dart>> curves(const CurveArrangement& a);

CurveArrangement dualize(const CubicalComplex& quad_mesh);
CubicalComplex primalize(const CurveArrangement& a);

struct ConnectivityWitness {
  bool three_connected = true;
  int cut_a = -1, cut_b = -1;
};
ConnectivityWitness is_three_connected(const CurveArrangement& a);

// B(A): a circle around every crossing, then circles around the two new
// crossings on each original edge, crossed pairwise over the edge.
CurveArrangement bubble_wrap(const CurveArrangement& a);

struct RewriteOp {
  enum Kind { AddCircle, RemoveCircle, PushTogether, PullApart, InvertTriangle, Switch } kind;
  // AddCircle/RemoveCircle: `at` is the surrounded crossing.
  // PushTogether/PullApart: `at` is an edge given by one of its darts.
  // InvertTriangle: `at` is any dart of the triangular face.
  // Switch: `at` and `at2` are the two spine edges at the middle crossing.
  Dart at;
  Dart at2;
  int variant = 0;
};

CurveArrangement rewrite(const CurveArrangement& a, const RewriteOp& op);

RewriteOp::Kind flip_as_rewrite(const FlipClass& cls);

// The rewrite corresponding to a concrete flip site, located in dualize(c).
RewriteOp rewrite_op_for_site(const CubicalComplex& c, const MatchSite& site);

// Isomorphism-invariant key (reflections allowed).
std::string arrangement_key(const CurveArrangement& a);

std::string arrangement_to_json(const CurveArrangement& a);
CurveArrangement arrangement_from_json(const std::string& text);

}  // namespace cubeflip
