#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubeflip/complex.hpp"

namespace cubeflip {

// CMF: the on-disk mesh format. A single JSON object:
//   {"dim": 2|3, "vertex_count": N, "coords": null | [[x,y,z],...],
//    "boundary_vertices": [ids] | null, "cells": [[v0,...],...]}
struct MeshFile {
  CubicalComplex complex;
  std::optional<std::vector<Vec3>> coords;
};

MeshFile parse_cmf(const std::string& text);
std::string serialize_cmf(const MeshFile& m);

MeshFile load_cmf(const std::string& path);
void save_cmf(const std::string& path, const MeshFile& m);

// Quads as faces; hexes exported as their boundary quads.
std::string to_off(const MeshFile& m);
std::string to_obj(const MeshFile& m);

}  // namespace cubeflip
