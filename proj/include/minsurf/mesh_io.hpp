#pragma once

#include "minsurf/legendre.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace minsurf {

struct MeshData {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles; // 0-based
  std::optional<std::vector<double>> per_vertex_h;     // NaN at singular vertices
  std::string name;
};

// One vertex per grid node; each cell (i,j)-(i+1,j+1) is split along that
// diagonal. With drop_singular, triangles touching a singular node are
// omitted. Throws EmptyMeshError when no triangle survives.
MeshData triangulate(const SurfaceSample &sample, bool drop_singular);

// "%.17g"-equivalent shortest-safe text for a double.
std::string format_double(double v);

// ASCII writers; IoError carries the path on failure.
void write_obj(const MeshData &mesh, const std::filesystem::path &path);
void write_ply(const MeshData &mesh, const std::filesystem::path &path);
void write_csv(const SurfaceSample &sample, const std::filesystem::path &path);

// Reference readers for the files above.
MeshData read_obj(const std::filesystem::path &path);
MeshData read_ply(const std::filesystem::path &path);

} // namespace minsurf
