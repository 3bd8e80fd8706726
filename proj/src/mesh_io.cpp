#include "minsurf/mesh_io.hpp"

#include "minsurf/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace minsurf {

MeshData triangulate(const SurfaceSample &sample, bool drop_singular) {
  const auto &grid = sample.spec;
  MeshData mesh;
  mesh.name = sample.generator_name;
  mesh.vertices.reserve(sample.points.size());
  std::vector<double> h;
  h.reserve(sample.points.size());
  for (const auto &pt : sample.points) {
    if (!std::isfinite(pt.x) || !std::isfinite(pt.y) || !std::isfinite(pt.z))
      throw std::runtime_error("non-finite surface coordinate at p=" + format_double(pt.p) +
                               ", q=" + format_double(pt.q));
    mesh.vertices.push_back({pt.x, pt.y, pt.z});
    h.push_back(pt.singular ? std::nan("") : pt.H);
  }
  mesh.per_vertex_h = std::move(h);

  auto index = [&](int i, int j) {
    return static_cast<std::uint32_t>(i) * static_cast<std::uint32_t>(grid.q_count) + static_cast<std::uint32_t>(j);
  };
  auto keep = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (!drop_singular)
      return true;
    return !sample.points[a].singular && !sample.points[b].singular && !sample.points[c].singular;
  };
  for (int i = 0; i + 1 < grid.p_count; ++i) {
    for (int j = 0; j + 1 < grid.q_count; ++j) {
      const std::uint32_t a = index(i, j), b = index(i + 1, j), c = index(i + 1, j + 1), d = index(i, j + 1);
      if (keep(a, b, c))
        mesh.triangles.push_back({a, b, c});
      if (keep(a, c, d))
        mesh.triangles.push_back({a, c, d});
    }
  }
  if (mesh.triangles.empty())
    throw EmptyMeshError("mesh for '" + sample.generator_name + "' has no triangles (all nodes singular)");
  return mesh;
}

std::string format_double(double v) {
  if (std::isnan(v))
    return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_float(double v) {
  if (std::isnan(v))
    return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, static_cast<float>(v), std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open for writing: " + path.string());
  return out;
}

void finish(std::ofstream &out, const std::filesystem::path &path) {
  out.flush();
  if (!out)
    throw IoError("write failed: " + path.string());
}

std::ifstream open_in(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open for reading: " + path.string());
  return in;
}

double parse_double(const std::string &token, const std::filesystem::path &path) {
  if (token == "nan")
    return std::nan("");
  double v = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw IoError(path.string() + ": bad number '" + token + "'");
  return v;
}

} // namespace

void write_obj(const MeshData &mesh, const std::filesystem::path &path) {
  auto out = open_out(path);
  out << "# " << mesh.name << '\n';
  for (const auto &v : mesh.vertices)
    out << "v " << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]) << '\n';
  for (const auto &t : mesh.triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  finish(out, path);
}

void write_ply(const MeshData &mesh, const std::filesystem::path &path) {
  auto out = open_out(path);
  const bool with_h = mesh.per_vertex_h.has_value();
  out << "ply\nformat ascii 1.0\n";
  out << "comment " << mesh.name << '\n';
  out << "element vertex " << mesh.vertices.size() << '\n';
  out << "property double x\nproperty double y\nproperty double z\n";
  if (with_h)
    out << "property float H\n";
  out << "element face " << mesh.triangles.size() << '\n';
  out << "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
    const auto &v = mesh.vertices[k];
    out << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2]);
    if (with_h)
      out << ' ' << format_float((*mesh.per_vertex_h)[k]);
    out << '\n';
  }
  for (const auto &t : mesh.triangles)
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  finish(out, path);
}

void write_csv(const SurfaceSample &sample, const std::filesystem::path &path) {
  auto out = open_out(path);
  out << "p,q,x,y,z,H,singular\n";
  for (const auto &pt : sample.points) {
    out << format_double(pt.p) << ',' << format_double(pt.q) << ',' << format_double(pt.x) << ','
        << format_double(pt.y) << ',' << format_double(pt.z) << ',';
    if (!pt.singular)
      out << format_double(pt.H);
    out << ',' << (pt.singular ? 1 : 0) << '\n';
  }
  finish(out, path);
}

MeshData read_obj(const std::filesystem::path &path) {
  auto in = open_in(path);
  MeshData mesh;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "#") {
      std::getline(ls >> std::ws, mesh.name);
    } else if (tag == "v") {
      std::string a, b, c;
      if (!(ls >> a >> b >> c))
        throw IoError(path.string() + ": malformed vertex line");
      mesh.vertices.push_back({parse_double(a, path), parse_double(b, path), parse_double(c, path)});
    } else if (tag == "f") {
      std::array<std::uint32_t, 3> t{};
      for (auto &idx : t) {
        long v = 0;
        if (!(ls >> v) || v < 1)
          throw IoError(path.string() + ": malformed face line");
        idx = static_cast<std::uint32_t>(v - 1);
      }
      mesh.triangles.push_back(t);
    }
  }
  for (const auto &t : mesh.triangles)
    for (auto idx : t)
      if (idx >= mesh.vertices.size())
        throw IoError(path.string() + ": face index out of range");
  return mesh;
}

MeshData read_ply(const std::filesystem::path &path) {
  auto in = open_in(path);
  std::string line;
  std::size_t n_vertices = 0, n_faces = 0;
  bool with_h = false;
  MeshData mesh;
  if (!std::getline(in, line) || line != "ply")
    throw IoError(path.string() + ": missing ply magic");
  while (std::getline(in, line) && line != "end_header") {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt != "ascii")
        throw IoError(path.string() + ": only ascii PLY is supported");
    } else if (word == "comment") {
      std::getline(ls >> std::ws, mesh.name);
    } else if (word == "element") {
      std::string kind;
      std::size_t count = 0;
      ls >> kind >> count;
      (kind == "vertex" ? n_vertices : n_faces) = count;
    } else if (word == "property") {
      std::string type, name;
      ls >> type >> name;
      if (name == "H")
        with_h = true;
    }
  }
  std::vector<double> h;
  for (std::size_t k = 0; k < n_vertices; ++k) {
    if (!std::getline(in, line))
      throw IoError(path.string() + ": truncated vertex list");
    std::istringstream ls(line);
    std::string a, b, c, hv;
    if (!(ls >> a >> b >> c))
      throw IoError(path.string() + ": malformed vertex line");
    mesh.vertices.push_back({parse_double(a, path), parse_double(b, path), parse_double(c, path)});
    if (with_h) {
      ls >> hv;
      h.push_back(parse_double(hv, path));
    }
  }
  if (with_h)
    mesh.per_vertex_h = std::move(h);
  for (std::size_t k = 0; k < n_faces; ++k) {
    if (!std::getline(in, line))
      throw IoError(path.string() + ": truncated face list");
    std::istringstream ls(line);
    int n = 0;
    std::array<std::uint32_t, 3> t{};
    if (!(ls >> n >> t[0] >> t[1] >> t[2]) || n != 3)
      throw IoError(path.string() + ": malformed face line");
    for (auto idx : t)
      if (idx >= mesh.vertices.size())
        throw IoError(path.string() + ": face index out of range");
    mesh.triangles.push_back(t);
  }
  return mesh;
}

} // namespace minsurf
