#include "cubeflip/cmf.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cubeflip {

using ordered_json = nlohmann::ordered_json;

MeshFile parse_cmf(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::ParseError, std::string("cmf: ") + e.what());
  }
  MeshFile m;
  try {
    if (!j.is_object()) fail(Errc::ParseError, "cmf: top level must be an object");
    m.complex.dim = j.at("dim").get<int>();
    if (m.complex.dim != 2 && m.complex.dim != 3)
      fail(Errc::ParseError, "cmf: dim must be 2 or 3");
    m.complex.vertex_count = j.at("vertex_count").get<int>();
    if (m.complex.vertex_count < 0) fail(Errc::ParseError, "cmf: negative vertex_count");
    if (j.contains("coords") && !j["coords"].is_null()) {
      std::vector<Vec3> pts;
      for (const auto& row : j["coords"]) {
        if (!row.is_array() || row.size() != 3)
          fail(Errc::ParseError, "cmf: coord rows must have 3 entries");
        pts.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
      }
      if ((int)pts.size() != m.complex.vertex_count)
        fail(Errc::ParseError, "cmf: coords length differs from vertex_count");
      m.coords = std::move(pts);
    }
    if (j.contains("boundary_vertices") && !j["boundary_vertices"].is_null())
      m.complex.boundary_vertices = j["boundary_vertices"].get<std::vector<int>>();
    int per = m.complex.cells_per();
    for (const auto& row : j.at("cells")) {
      std::vector<int> cell = row.get<std::vector<int>>();
      if ((int)cell.size() != per) {
        std::ostringstream os;
        os << "cmf: cell " << m.complex.cells.size() << " has " << cell.size()
           << " vertices, expected " << per;
        fail(Errc::ParseError, os.str());
      }
      m.complex.cells.push_back(std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, std::string("cmf: ") + e.what());
  }
  std::sort(m.complex.boundary_vertices.begin(), m.complex.boundary_vertices.end());
  return m;
}

std::string serialize_cmf(const MeshFile& m) {
  ordered_json j;
  j["dim"] = m.complex.dim;
  j["vertex_count"] = m.complex.vertex_count;
  if (m.coords) {
    ordered_json rows = ordered_json::array();
    for (const auto& p : *m.coords) rows.push_back({p.x, p.y, p.z});
    j["coords"] = rows;
  } else {
    j["coords"] = nullptr;
  }
  if (m.complex.boundary_vertices.empty())
    j["boundary_vertices"] = nullptr;
  else
    j["boundary_vertices"] = m.complex.boundary_vertices;
  j["cells"] = m.complex.cells;
  return j.dump() + "\n";
}

MeshFile load_cmf(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_cmf(ss.str());
}

void save_cmf(const std::string& path, const MeshFile& m) {
  std::ofstream out(path);
  if (!out) fail(Errc::ParseError, "cannot write " + path);
  out << serialize_cmf(m);
}

static std::vector<std::array<int, 4>> export_faces(const MeshFile& m) {
  if (m.complex.dim == 2) {
    std::vector<std::array<int, 4>> out;
    for (const auto& t : m.complex.cells) out.push_back({t[0], t[1], t[2], t[3]});
    return out;
  }
  FaceLattice fl = derived_faces(m.complex);
  return fl.boundary_quads;
}

std::string to_off(const MeshFile& m) {
  if (!m.coords) fail(Errc::ParseError, "export requires coordinates");
  auto faces = export_faces(m);
  std::ostringstream os;
  os << "OFF\n" << m.complex.vertex_count << " " << faces.size() << " 0\n";
  os.precision(17);
  for (const auto& p : *m.coords) os << p.x << " " << p.y << " " << p.z << "\n";
  for (const auto& f : faces) os << "4 " << f[0] << " " << f[1] << " " << f[2] << " " << f[3] << "\n";
  return os.str();
}

std::string to_obj(const MeshFile& m) {
  if (!m.coords) fail(Errc::ParseError, "export requires coordinates");
  auto faces = export_faces(m);
  std::ostringstream os;
  os.precision(17);
  for (const auto& p : *m.coords) os << "v " << p.x << " " << p.y << " " << p.z << "\n";
  for (const auto& f : faces)
    os << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << " " << f[3] + 1 << "\n";
  return os.str();
}

}  // namespace cubeflip
