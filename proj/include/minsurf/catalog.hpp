#pragma once

#include "minsurf/contact_expr.hpp"
#include "minsurf/jet.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace minsurf {

// --- recursion operators on the commutative subalgebra h ------------------

// p phi_q - q phi_p  (ad of the rotation generator y p - x q)
ContactExpr recursion_rot12(const ContactExpr &phi);
// i = 1: -p phi + (1+p^2) phi_p + p q phi_q
// i = 2: -q phi + (1+q^2) phi_q + p q phi_p
ContactExpr recursion_t(int i, const ContactExpr &phi);

enum class RecursionOp { Rot12, T1, T2, Dil };

std::string_view op_name(RecursionOp op);
// Accepts rot12 | t1 | t2 | dil; throws UnknownNameError otherwise.
RecursionOp parse_op(std::string_view name);
// dil uses the general bracket {phi4, phi}; the others use the closed forms.
ContactExpr apply_op(RecursionOp op, const ContactExpr &phi);

// --- catalog --------------------------------------------------------------

struct Provenance {
  enum class Kind { Published, Corrected, Derived, User };
  Kind kind = Kind::Published;
  std::string seed;             // Derived only
  std::vector<RecursionOp> ops; // Derived only
  std::string note;             // Corrected: what was changed

  std::string to_string() const;
  static Provenance from_string(std::string_view text);
  bool operator==(const Provenance &) const = default;
};

struct CatalogEntry {
  std::string name;
  JetFunction generator;
  Provenance provenance;
  // Pure generators: residual checked zero. Point generators: false (no residual applies).
  bool residual_verified = false;
};

// Generators as printed, before any correction; used to report typos.
struct PrintedFormula {
  std::string_view name;
  std::string_view text;
};
std::vector<PrintedFormula> printed_formulas();

// Names of the twelve generators of h listed in the catalog.
std::vector<std::string> h_catalog_names();
std::vector<std::string> point_generator_names();

// Ordered name -> generator table. Reads may run concurrently; registration
// takes an exclusive lock (single writer).
class GeneratorCatalog {
public:
  // Loads the built-in table and checks every pure entry solves the
  // linearised equation (ConsistencyError otherwise).
  static GeneratorCatalog builtin();

  GeneratorCatalog() = default;
  GeneratorCatalog(const GeneratorCatalog &other);
  GeneratorCatalog &operator=(const GeneratorCatalog &other);

  // Throws UnknownNameError listing available names.
  JetFunction get(std::string_view name) const;
  CatalogEntry entry(std::string_view name) const;
  // Pure generator or UnknownNameError / std::invalid_argument for point generators.
  ContactExpr get_pure(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::vector<CatalogEntry> entries() const;
  std::vector<std::string> names() const;

  // Throws std::invalid_argument on duplicate names.
  void add(CatalogEntry entry);
  // Replaces or inserts; used when loading a manifest over the built-ins.
  void upsert(CatalogEntry entry);

private:
  mutable std::shared_mutex mutex_;
  std::vector<std::string> order_;
  std::map<std::string, CatalogEntry, std::less<>> entries_;
};

inline JetFunction catalog_get(const GeneratorCatalog &catalog, std::string_view name) { return catalog.get(name); }

// gen_<seed>_<op1-op2-...>_<k>
std::string derived_name(std::string_view seed, const std::vector<RecursionOp> &ops, std::size_t step);

struct ProliferationStep {
  std::string name;
  ContactExpr value;
};

// Applies ops left to right from the seed, checking the residual after each
// step; a nonzero residual raises ConsistencyError. With register_results the
// steps are added to the catalog with Derived provenance.
std::vector<ProliferationStep> proliferate(GeneratorCatalog &catalog, std::string_view seed,
                                           const std::vector<RecursionOp> &ops, bool register_results);
std::vector<ProliferationStep> proliferate(const GeneratorCatalog &catalog, std::string_view seed,
                                           const std::vector<RecursionOp> &ops);

// Closed forms against the general bracket for rot12, t1, t2 and {phi4, phi} = -phi.
struct BracketRelation {
  std::string label;
  JetFunction via_bracket;
  JetFunction closed_form;
  bool holds = false;
};

struct BracketReport {
  std::vector<BracketRelation> relations;
  bool all_hold() const;
};

BracketReport verify_bracket_relations(const ContactExpr &phi);

// --- manifest: one JSON object per line -----------------------------------

void write_manifest(const std::vector<CatalogEntry> &entries, const std::filesystem::path &path);
std::vector<CatalogEntry> read_manifest(const std::filesystem::path &path);
std::string manifest_record(const CatalogEntry &entry);
CatalogEntry parse_manifest_record(std::string_view line);

} // namespace minsurf
