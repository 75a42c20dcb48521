#include "cubeflip/core.hpp"

#include <algorithm>
#include <cmath>

namespace cubeflip {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::InvalidClass: return "InvalidClass";
    case Errc::InvalidComplex: return "InvalidComplex";
    case Errc::ParseError: return "ParseError";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SiteStale: return "SiteStale";
    case Errc::NotAdjacent: return "NotAdjacent";
    case Errc::DegenerateUnion: return "DegenerateUnion";
    case Errc::NotClosedSphere: return "NotClosedSphere";
    case Errc::NotThreeConnected: return "NotThreeConnected";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NoCrossings: return "NoCrossings";
    case Errc::LocationInvalid: return "LocationInvalid";
    case Errc::OddParity: return "OddParity";
    case Errc::PlannerStuck: return "PlannerStuck";
    case Errc::BoundaryMismatch: return "BoundaryMismatch";
    case Errc::NotSimplyConnected: return "NotSimplyConnected";
    case Errc::ClassNotAutomatic: return "ClassNotAutomatic";
    case Errc::PatternMismatch: return "PatternMismatch";
    case Errc::NumericallyDegenerate: return "NumericallyDegenerate";
    case Errc::ParamOutOfRange: return "ParamOutOfRange";
    case Errc::Usage: return "Usage";
  }
  return "Unknown";
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

int gf2_rank(std::vector<std::vector<int>> rows, int ncols) {
  int nwords = (ncols + 63) / 64;
  std::vector<std::vector<uint64_t>> bits(rows.size(), std::vector<uint64_t>(nwords, 0));
  for (size_t i = 0; i < rows.size(); ++i)
    for (int c : rows[i]) bits[i][c / 64] ^= (uint64_t(1) << (c % 64));

  int rank = 0;
  for (int col = 0; col < ncols && rank < (int)bits.size(); ++col) {
    int w = col / 64;
    uint64_t mask = uint64_t(1) << (col % 64);
    int pivot = -1;
    for (int r = rank; r < (int)bits.size(); ++r)
      if (bits[r][w] & mask) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(bits[rank], bits[pivot]);
    for (int r = 0; r < (int)bits.size(); ++r) {
      if (r != rank && (bits[r][w] & mask))
        for (int k = 0; k < nwords; ++k) bits[r][k] ^= bits[rank][k];
    }
    ++rank;
  }
  return rank;
}

bool solve_linear(std::vector<std::vector<double>> a, std::vector<double>& b, double eps) {
  int n = (int)a.size();
  double scale = 0;
  for (auto& row : a)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  if (scale == 0) return false;

  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) < eps * scale) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (int k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  for (int i = 0; i < n; ++i) b[i] /= a[i][i];
  return true;
}

bool plane_from_points(const Vec3& a, const Vec3& b, const Vec3& c, Plane& out) {
  Vec3 n = cross(b - a, c - a);
  double len = norm(n);
  double scale = std::max({norm(b - a), norm(c - a), 1e-300});
  if (len < 1e-12 * scale * scale) return false;
  out.n = n / len;
  out.d = dot(out.n, a);
  return true;
}

bool intersect_planes(const Plane& p1, const Plane& p2, const Plane& p3, Vec3& out, double eps) {
  std::vector<std::vector<double>> a = {
      {p1.n.x, p1.n.y, p1.n.z}, {p2.n.x, p2.n.y, p2.n.z}, {p3.n.x, p3.n.y, p3.n.z}};
  std::vector<double> b = {p1.d, p2.d, p3.d};
  if (!solve_linear(a, b, eps)) return false;
  out = {b[0], b[1], b[2]};
  return true;
}

}  // namespace cubeflip
