#include "run_config.hpp"

#include "minsurf/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace minsurf::cli {

namespace {

template <class T> T number(std::string_view field, const std::string &axis) {
  T value{};
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || end != field.data() + field.size())
    throw std::invalid_argument("'" + std::string(field) + "' is not a number in grid axis '" + axis + "'");
  return value;
}

void parse_axis(const std::string &text, double &lo, double &hi, int &count) {
  auto a = text.find(':');
  auto b = a == std::string::npos ? std::string::npos : text.find(':', a + 1);
  if (b == std::string::npos)
    throw std::invalid_argument("grid axis must be min:max:count, got '" + text + "'");
  std::string_view v(text);
  lo = number<double>(v.substr(0, a), text);
  hi = number<double>(v.substr(a + 1, b - a - 1), text);
  count = number<int>(v.substr(b + 1), text);
}

} // namespace

GridSpec parse_grid(const std::string &text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("grid must be pmin:pmax:pcount,qmin:qmax:qcount");
  GridSpec g;
  try {
    parse_axis(text.substr(0, comma), g.p_min, g.p_max, g.p_count);
    parse_axis(text.substr(comma + 1), g.q_min, g.q_max, g.q_count);
  } catch (const std::invalid_argument &e) {
    throw std::invalid_argument("bad grid '" + text + "': " + e.what());
  }
  g.validate();
  return g;
}

GridSpec RunConfig::grid_for(const std::string &name) const {
  auto it = grids.find(name);
  return it == grids.end() ? GridSpec::default_grid() : it->second;
}

void RunConfig::validate() const {
  if (!(tol_h > 0) || !(eps_s > 0))
    throw std::invalid_argument("tolerances must be positive");
  for (const auto &[name, g] : grids)
    g.validate();
  for (const auto &f : formats)
    if (f != "obj" && f != "ply" && f != "csv")
      throw std::invalid_argument("unknown format '" + f + "' (obj, ply, csv)");
}

RunConfig RunConfig::load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config: " + path.string());
  auto j = nlohmann::json::parse(in);
  RunConfig cfg;
  if (j.contains("out"))
    cfg.out = j["out"].get<std::string>();
  if (j.contains("formats"))
    cfg.formats = j["formats"].get<std::vector<std::string>>();
  if (j.contains("tol_h"))
    cfg.tol_h = j["tol_h"].get<double>();
  if (j.contains("eps_s"))
    cfg.eps_s = j["eps_s"].get<double>();
  if (j.contains("grids"))
    for (auto &[name, text] : j["grids"].items())
      cfg.grids[name] = parse_grid(text.get<std::string>());
  cfg.validate();
  return cfg;
}

} // namespace minsurf::cli
