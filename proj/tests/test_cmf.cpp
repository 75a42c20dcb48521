#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cubeflip/cmf.hpp"

using namespace cubeflip;

TEST_CASE("round trip is exact including order") {
  MeshFile m;
  m.complex = reference_cube();
  auto text = serialize_cmf(m);
  auto back = parse_cmf(text);
  CHECK(back.complex.dim == m.complex.dim);
  CHECK(back.complex.vertex_count == m.complex.vertex_count);
  CHECK(back.complex.cells == m.complex.cells);
  CHECK_FALSE(back.coords.has_value());
  // byte-stable re-serialization
  CHECK(serialize_cmf(back) == text);
}

TEST_CASE("coordinates survive with full precision") {
  MeshFile m;
  m.complex = single_quad();
  m.coords = std::vector<Vec3>{{0.1, 0.2, 0.30000000000000004},
                               {1.0 / 3.0, -2.5e-13, 7},
                               {1e100, 0, -1},
                               {0.0, 1.0, 2.0}};
  auto text = serialize_cmf(m);
  auto back = parse_cmf(text);
  REQUIRE(back.coords.has_value());
  for (int i = 0; i < 4; ++i) {
    CHECK((*back.coords)[i].x == (*m.coords)[i].x);
    CHECK((*back.coords)[i].y == (*m.coords)[i].y);
    CHECK((*back.coords)[i].z == (*m.coords)[i].z);
  }
  CHECK(serialize_cmf(back) == text);
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parse_cmf("{"), Error);
  // cell with 5 vertex ids in a dim-2 file
  std::string bad =
      R"({"dim":2,"vertex_count":5,"coords":null,"boundary_vertices":null,"cells":[[0,1,2,3,4]]})";
  try {
    parse_cmf(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("cell 0") != std::string::npos);
  }
}

TEST_CASE("coords null gives complex without realization") {
  std::string text =
      R"({"dim":2,"vertex_count":4,"coords":null,"boundary_vertices":[0,1,2,3],"cells":[[0,1,2,3]]})";
  auto m = parse_cmf(text);
  CHECK_FALSE(m.coords.has_value());
  CHECK(m.complex.boundary_vertices.size() == 4);
}

TEST_CASE("off and obj export") {
  MeshFile m;
  m.complex = reference_cube();
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  m.coords = pts;
  auto off = to_off(m);
  CHECK(off.substr(0, 4) == "OFF\n");
  CHECK(off.find("8 6 0") != std::string::npos);
  auto obj = to_obj(m);
  CHECK(obj.find("v 0 0 0") != std::string::npos);
  CHECK(obj.find("f ") != std::string::npos);

  MeshFile hexm;
  hexm.complex = reference_hex_cell();
  hexm.coords = pts;
  auto off2 = to_off(hexm);  // hexes export their boundary quads
  CHECK(off2.find("8 6 0") != std::string::npos);
}
