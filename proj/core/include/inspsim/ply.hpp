#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "inspsim/poi_cloud.hpp"

namespace inspsim {

/// Load a PLY mesh (ASCII or binary-little-endian) as a POI cloud.
/// Vertices become POIs. Normals come from nx/ny/nz when present, otherwise
/// each normal is the unit vector from the mesh centroid to the vertex.
/// Non-vertex elements are skipped; their names are appended to `warnings`
/// when the pointer is non-null. Throws PlyParseError on malformed input.
PoiCloud load_ply(const std::string& path, std::vector<std::string>* warnings = nullptr);
PoiCloud load_ply(std::istream& in, std::vector<std::string>* warnings = nullptr);

/// Write a cloud as ASCII or binary-little-endian PLY with x,y,z,nx,ny,nz.
void write_ply(const PoiCloud& cloud, const std::string& path, bool binary);

}  // namespace inspsim
