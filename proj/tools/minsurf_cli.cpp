// minsurf: catalog, derivation, verification and surface export front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or unknown name.

#include "run_config.hpp"

#include "minsurf/catalog.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/expr_parser.hpp"
#include "minsurf/legendre.hpp"
#include "minsurf/mesh_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace minsurf;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GeneratorCatalog load_catalog(const fs::path &manifest) {
  GeneratorCatalog catalog = GeneratorCatalog::builtin();
  if (manifest.empty() || !fs::exists(manifest))
    return catalog;
  for (auto &entry : read_manifest(manifest)) {
    if (catalog.contains(entry.name) && catalog.entry(entry.name).provenance.kind != Provenance::Kind::Derived)
      continue;
    if (entry.generator.is_pure())
      entry.residual_verified = pde_residual(entry.generator.pure_part()).is_zero();
    catalog.upsert(std::move(entry));
  }
  return catalog;
}

// "phi5..phi13" expands to phi5, phi6, ..., phi13.
std::vector<std::string> expand_names(const std::vector<std::string> &names) {
  static const std::regex range(R"(([A-Za-z_]*?)(\d+)\.\.([A-Za-z_]*?)(\d+))");
  std::vector<std::string> out;
  for (const auto &n : names) {
    std::smatch m;
    if (std::regex_match(n, m, range) && m[1] == m[3]) {
      int lo = std::stoi(m[2]), hi = std::stoi(m[4]);
      for (int k = lo; k <= hi; ++k)
        out.push_back(m[1].str() + std::to_string(k));
    } else {
      out.push_back(n);
    }
  }
  return out;
}

std::string status(bool ok) { return ok ? "ok" : "FAIL"; }

// --- list ------------------------------------------------------------------

int cmd_list(const GeneratorCatalog &catalog, const std::string &filter, const std::string &export_path) {
  std::size_t shown = 0;
  for (const auto &e : catalog.entries()) {
    if (!filter.empty() && e.name.find(filter) == std::string::npos)
      continue;
    std::string residual = e.generator.is_pure() ? (e.residual_verified ? "residual=0" : "residual!=0") : "point";
    std::cout << e.name << "\t" << residual << "\t" << e.provenance.to_string() << "\t" << format_jet(e.generator)
              << "\n";
    ++shown;
  }
  std::cout << "# " << shown << " generator(s)\n";
  if (!export_path.empty()) {
    write_manifest(catalog.entries(), export_path);
    std::cout << "# manifest written to " << export_path << "\n";
  }
  return kOk;
}

// --- verify ----------------------------------------------------------------

struct Target {
  std::string name;
  JetFunction generator;
};

int point_relation_index(const std::string &name) {
  if (name == "phi3_12")
    return 0;
  if (name == "phi3_1")
    return 1;
  if (name == "phi3_2")
    return 2;
  if (name == "phi4")
    return 3;
  return -1;
}

int cmd_verify(const GeneratorCatalog &catalog, const std::vector<std::string> &names,
               const std::vector<std::string> &exprs) {
  std::vector<Target> targets;
  for (const auto &n : expand_names(names))
    targets.push_back({n, catalog.get(n)});
  for (std::size_t k = 0; k < exprs.size(); ++k)
    targets.push_back({"expr" + std::to_string(k + 1) + "[" + exprs[k] + "]", JetFunction(parse(exprs[k]))});
  if (targets.empty())
    for (const auto &e : catalog.entries())
      targets.push_back({e.name, e.generator});

  bool all_ok = true;
  std::vector<const Target *> pure;
  for (const auto &t : targets) {
    if (t.generator.is_pure()) {
      pure.push_back(&t);
      ContactExpr residual = pde_residual(t.generator.pure_part());
      bool ok = residual.is_zero();
      all_ok &= ok;
      std::cout << t.name << ": residual " << (ok ? "0" : format(residual)) << " [" << status(ok) << "]\n";
      if (!ok)
        continue;
      BracketReport report = verify_bracket_relations(t.generator.pure_part());
      for (const auto &r : report.relations) {
        all_ok &= r.holds;
        std::cout << "  " << r.label << " [" << status(r.holds) << "]\n";
      }
      continue;
    }
    int rel = point_relation_index(t.name);
    std::size_t checked = 0, failed = 0;
    for (const auto &h : h_catalog_names()) {
      ContactExpr phi = catalog.get_pure(h);
      JetFunction forward = jacobi_bracket(t.generator, JetFunction(phi));
      JetFunction backward = jacobi_bracket(JetFunction(phi), t.generator);
      bool ok = forward == -backward;
      if (rel >= 0)
        ok &= verify_bracket_relations(phi).relations[static_cast<std::size_t>(rel)].holds;
      ++checked;
      failed += ok ? 0 : 1;
    }
    all_ok &= failed == 0;
    std::cout << t.name << ": point generator, bracket checks against " << checked << " h-generators, " << failed
              << " failed [" << status(failed == 0) << "]\n";
  }

  std::size_t pairs = 0, nonzero = 0;
  for (std::size_t a = 0; a < pure.size(); ++a) {
    for (std::size_t b = a + 1; b < pure.size(); ++b) {
      ++pairs;
      JetFunction br = jacobi_bracket(pure[a]->generator, pure[b]->generator);
      if (!br.is_zero()) {
        ++nonzero;
        std::cout << "  {" << pure[a]->name << ", " << pure[b]->name << "} = " << format_jet(br) << "\n";
      }
    }
  }
  if (pairs > 0) {
    all_ok &= nonzero == 0;
    std::cout << "pairwise brackets: " << pairs << " pair(s), " << nonzero << " nonzero [" << status(nonzero == 0)
              << "]\n";
  }
  std::cout << (all_ok ? "verify: all checks passed\n" : "verify: FAILED\n");
  return all_ok ? kOk : kFail;
}

// --- derive ----------------------------------------------------------------

int cmd_derive(GeneratorCatalog &catalog, const std::string &seed, const std::vector<std::string> &op_names,
               bool register_results, const fs::path &manifest) {
  std::vector<RecursionOp> ops;
  for (const auto &n : op_names)
    ops.push_back(parse_op(n));
  if (!catalog.contains(seed))
    catalog.get(seed); // throws UnknownNameError
  if (!catalog.get(seed).is_pure())
    throw UsageError("seed '" + seed + "' is a point generator, not an element of h");
  std::cout << seed << " = " << format(catalog.get_pure(seed)) << "\n";
  auto steps = proliferate(catalog, seed, ops, register_results);
  for (std::size_t k = 0; k < steps.size(); ++k)
    std::cout << op_names[k] << " -> " << steps[k].name << " = " << format(steps[k].value) << "\n";
  if (register_results) {
    write_manifest(catalog.entries(), manifest);
    std::cout << "# registered " << steps.size() << " generator(s) in " << manifest.string() << "\n";
  }
  return kOk;
}

// --- surface / gallery -----------------------------------------------------

struct SurfaceResult {
  SurfaceSample sample;
  std::size_t vertices = 0;
  std::size_t triangles = 0;
  std::vector<std::string> files;
  std::optional<double> helicoid_deviation;
};

SurfaceResult synthesize(const ContactExpr &phi, const std::string &label, const GridSpec &grid,
                         const cli::RunConfig &cfg, const std::vector<std::string> &formats) {
  SurfaceResult r;
  SurfaceOptions opts;
  opts.singular_threshold = cfg.eps_s;
  r.sample = sample_surface(phi, grid, label, opts);
  MeshData mesh = triangulate(r.sample, true);
  r.vertices = mesh.vertices.size();
  r.triangles = mesh.triangles.size();
  fs::create_directories(cfg.out);
  for (const auto &f : formats) {
    fs::path path = cfg.out / (label + "." + f);
    if (f == "obj")
      write_obj(mesh, path);
    else if (f == "ply")
      write_ply(mesh, path);
    else
      write_csv(r.sample, path);
    r.files.push_back(path.string());
  }
  if (label == "phi5")
    r.helicoid_deviation = helicoid_check(r.sample);
  return r;
}

void print_summary(const SurfaceResult &r) {
  std::cout << r.sample.generator_name << ": maxAbsH=" << r.sample.max_abs_h
            << " singularCount=" << r.sample.singular_count << " vertices=" << r.vertices
            << " triangles=" << r.triangles << "\n";
  if (r.helicoid_deviation)
    std::cout << "  helicoid max|z - x tan y| = " << *r.helicoid_deviation << "\n";
  for (const auto &f : r.files)
    std::cout << "  wrote " << f << "\n";
}

int cmd_surface(const GeneratorCatalog &catalog, const std::string &name, const std::string &expr,
                std::string label, const std::optional<GridSpec> &grid, const cli::RunConfig &cfg,
                bool allow_nonminimal) {
  if (name.empty() == expr.empty())
    throw UsageError("surface needs exactly one of NAME or --expr");
  ContactExpr phi;
  if (!name.empty()) {
    if (!catalog.get(name).is_pure())
      throw UsageError("'" + name + "' is a point generator; surfaces need an element of h");
    phi = catalog.get_pure(name);
    label = label.empty() ? name : label;
  } else {
    phi = parse(expr);
    label = label.empty() ? "expr" : label;
  }
  bool solution = pde_residual(phi).is_zero();
  if (!solution && !allow_nonminimal) {
    std::cerr << label << " does not solve the linearised equation (residual " << format(pde_residual(phi))
              << "); pass --allow-nonminimal to export it anyway\n";
    return kFail;
  }
  auto formats = cfg.formats.empty() ? std::vector<std::string>{"obj"} : cfg.formats;
  SurfaceResult r = synthesize(phi, label, grid ? *grid : cfg.grid_for(label), cfg, formats);
  print_summary(r);
  if (!solution) {
    std::cout << "  non-solution surface exported on request\n";
    return kOk;
  }
  bool ok = r.sample.max_abs_h < cfg.tol_h;
  if (r.helicoid_deviation)
    ok &= *r.helicoid_deviation < 1e-12;
  std::cout << (ok ? "surface: ok\n" : "surface: FAILED tolerance\n");
  return ok ? kOk : kFail;
}

int cmd_gallery(const GeneratorCatalog &catalog, const std::vector<std::string> &only,
                const std::optional<GridSpec> &grid, const cli::RunConfig &cfg) {
  std::vector<std::string> names = only.empty() ? expand_names({"phi5..phi13"}) : expand_names(only);
  auto formats = cfg.formats.empty() ? std::vector<std::string>{"obj", "ply"} : cfg.formats;
  nlohmann::ordered_json manifest;
  manifest["tol_h"] = cfg.tol_h;
  manifest["eps_s"] = cfg.eps_s;
  manifest["surfaces"] = nlohmann::ordered_json::array();
  bool ok = true;
  for (const auto &n : names) {
    SurfaceResult r;
    GridSpec g = grid ? *grid : cfg.grid_for(n);
    try {
      r = synthesize(catalog.get_pure(n), n, g, cfg, formats);
    } catch (const std::exception &e) {
      throw std::runtime_error("gallery surface " + n + ": " + e.what());
    }
    print_summary(r);
    bool surface_ok = r.sample.max_abs_h < cfg.tol_h;
    ok &= surface_ok;
    nlohmann::ordered_json s;
    s["name"] = n;
    s["expression"] = format(catalog.get_pure(n));
    s["grid"] = {{"p_min", g.p_min}, {"p_max", g.p_max}, {"p_count", g.p_count},
                 {"q_min", g.q_min}, {"q_max", g.q_max}, {"q_count", g.q_count}};
    s["max_abs_h"] = r.sample.max_abs_h;
    s["singular_count"] = r.sample.singular_count;
    s["vertices"] = r.vertices;
    s["triangles"] = r.triangles;
    if (r.helicoid_deviation)
      s["helicoid_deviation"] = *r.helicoid_deviation;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto &f : r.files)
      files.push_back(fs::path(f).filename().string());
    s["files"] = std::move(files);
    s["within_tolerance"] = surface_ok;
    manifest["surfaces"].push_back(std::move(s));
  }
  fs::path path = cfg.out / "gallery_manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot write " + path.string());
  out << manifest.dump(2) << "\n";
  std::cout << "wrote " << path.string() << " (" << names.size() << " surface(s))\n";
  return ok ? kOk : kFail;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Contact symmetries of the minimal surface equation and their Legendre surfaces"};
  app.require_subcommand(1);

  std::string manifest_path = "minsurf_catalog.jsonl";
  std::string config_path;
  app.add_option("--manifest", manifest_path, "Catalog manifest (JSON lines) for derived generators");
  app.add_option("--config", config_path, "Optional JSON run configuration")->check(CLI::ExistingFile);

  auto *list = app.add_subcommand("list", "Print the generator catalog");
  std::string filter, export_path;
  list->add_option("--filter", filter, "Only names containing this text");
  list->add_option("--export", export_path, "Also write the catalog manifest to this file");

  auto *verify = app.add_subcommand("verify", "Residual, bracket and recursion-operator checks");
  std::vector<std::string> verify_names, verify_exprs;
  verify->add_option("names", verify_names, "Generator names (ranges like phi5..phi13 allowed)");
  verify->add_option("--expr", verify_exprs, "Expression in p, q to verify")->take_all();

  auto *derive = app.add_subcommand("derive", "Apply recursion operators to a seed");
  std::string seed;
  std::vector<std::string> ops;
  bool register_results = false;
  derive->add_option("seed", seed, "Seed generator")->required();
  derive->add_option("ops", ops, "Operators: rot12 t1 t2 dil")->required();
  derive->add_flag("--register", register_results, "Persist results to the manifest");

  std::string grid_text, out_dir, label, surface_name, surface_expr;
  std::vector<std::string> formats, only;
  bool allow_nonminimal = false;
  double tol_h = 0, eps_s = 0;
  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--grid", grid_text, "pmin:pmax:pcount,qmin:qmax:qcount");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--format", formats, "obj | ply | csv (repeatable)")->take_all();
    sub->add_option("--tol-h", tol_h, "Mean-curvature tolerance");
    sub->add_option("--eps-s", eps_s, "Singularity threshold on EG - F^2");
  };

  auto *surface = app.add_subcommand("surface", "Sample, triangulate and export one surface");
  surface->add_option("generator", surface_name, "Catalog generator");
  surface->add_option("--expr", surface_expr, "Expression in p, q instead of a catalog name");
  surface->add_option("--name", label, "Output file stem");
  surface->add_flag("--allow-nonminimal", allow_nonminimal, "Export even if the expression is not a solution");
  add_common(surface);

  auto *gallery = app.add_subcommand("gallery", "Export all surfaces phi5..phi13 with a manifest");
  gallery->add_option("--only", only, "Restrict to these names (repeatable)")->take_all();
  add_common(gallery);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    cli::RunConfig cfg = config_path.empty() ? cli::RunConfig{} : cli::RunConfig::load(config_path);
    if (!out_dir.empty())
      cfg.out = out_dir;
    if (!formats.empty())
      cfg.formats = formats;
    if (tol_h != 0)
      cfg.tol_h = tol_h;
    if (eps_s != 0)
      cfg.eps_s = eps_s;
    cfg.validate();
    std::optional<GridSpec> grid;
    if (!grid_text.empty())
      grid = cli::parse_grid(grid_text);

    GeneratorCatalog catalog = load_catalog(manifest_path);
    if (list->parsed())
      return cmd_list(catalog, filter, export_path);
    if (verify->parsed())
      return cmd_verify(catalog, verify_names, verify_exprs);
    if (derive->parsed())
      return cmd_derive(catalog, seed, ops, register_results, manifest_path);
    if (surface->parsed())
      return cmd_surface(catalog, surface_name, surface_expr, label, grid, cfg, allow_nonminimal);
    if (gallery->parsed())
      return cmd_gallery(catalog, only, grid, cfg);
  } catch (const UnknownNameError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
