#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubeflip {

enum class Errc {
  DimensionTooLarge,
  InvalidClass,
  InvalidComplex,
  ParseError,
  DimensionMismatch,
  SiteStale,
  NotAdjacent,
  DegenerateUnion,
  NotClosedSphere,
  NotThreeConnected,
  Disconnected,
  NoCrossings,
  LocationInvalid,
  OddParity,
  PlannerStuck,
  BoundaryMismatch,
  NotSimplyConnected,
  ClassNotAutomatic,
  PatternMismatch,
  NumericallyDegenerate,
  ParamOutOfRange,
  Usage,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Vec3& a);
inline double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

struct Vec4 {
  double x = 0, y = 0, z = 0, w = 0;
};

// Rank of a GF(2) matrix given as rows of column-index lists.
int gf2_rank(std::vector<std::vector<int>> rows, int ncols);

// Solves a dense 3x3 or 4x4 linear system; returns false when the pivot falls
// below eps (relative to the largest entry).
bool solve_linear(std::vector<std::vector<double>> a, std::vector<double>& b, double eps);

// Plane through three points; n is unit, d satisfies dot(n,p)=d. Returns false
// when the points are (nearly) collinear.
struct Plane {
  Vec3 n;
  double d = 0;
};
bool plane_from_points(const Vec3& a, const Vec3& b, const Vec3& c, Plane& out);
bool intersect_planes(const Plane& p1, const Plane& p2, const Plane& p3, Vec3& out, double eps = 1e-12);

}  // namespace cubeflip
