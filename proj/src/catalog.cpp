#include "minsurf/catalog.hpp"

#include "minsurf/errors.hpp"
#include "minsurf/expr_parser.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace minsurf {

namespace {

// Rotation, the two rotations mixing u with x^i, and the dilatation.
constexpr std::string_view kRot12 = "y*p - x*q";
constexpr std::string_view kRot1 = "x + u*p";
constexpr std::string_view kRot2 = "y + u*q";
constexpr std::string_view kDil = "u - x*p - y*q";

const JetFunction &point_generator(std::string_view text) {
  static const JetFunction rot12 = parse_jet(kRot12);
  static const JetFunction rot1 = parse_jet(kRot1);
  static const JetFunction rot2 = parse_jet(kRot2);
  static const JetFunction dil = parse_jet(kDil);
  if (text == kRot12)
    return rot12;
  if (text == kRot1)
    return rot1;
  if (text == kRot2)
    return rot2;
  return dil;
}

constexpr std::string_view kPhi12Printed =
    "(p^4-6*p^2+6)/(1+p^2)^4*q^5 + (11*p^6-49*p^4-51*p^2+9)/(6*(1+p^2)^4)*q^3"
    " + (2*p^8-3*p^6-11*p^4-5*p^2+1)/(2*(1+p^2)^4)*q";

// Printed q^5 coefficient p^4 - 6p^2 + 6 is not a solution; p^4 - 6p^2 + 1
// makes phi12 = rot12(phi10) / 3.
constexpr std::string_view kPhi12Corrected =
    "(p^4-6*p^2+1)/(1+p^2)^4*q^5 + (11*p^6-49*p^4-51*p^2+9)/(6*(1+p^2)^4)*q^3"
    " + (2*p^8-3*p^6-11*p^4-5*p^2+1)/(2*(1+p^2)^4)*q";

struct Builtin {
  std::string_view name;
  std::string_view text;
  Provenance::Kind kind;
  std::string_view note;
};

const std::vector<Builtin> &builtins() {
  using K = Provenance::Kind;
  static const std::vector<Builtin> table = {
      {"phi1", "1", K::Published, ""},
      {"phi2_1", "p", K::Published, ""},
      {"phi2_2", "q", K::Published, ""},
      {"phi3_12", kRot12, K::Published, ""},
      {"phi3_1", kRot1, K::Published, ""},
      {"phi3_2", kRot2, K::Published, ""},
      {"phi4", kDil, K::Published, ""},
      {"phi5", "q*atan(p)", K::Published, ""},
      {"phi6", "p*q^2/(1+p^2) + atan(p)", K::Published, ""},
      {"phi7", "q^2/(1+p^2) - p*atan(p)", K::Published, ""},
      {"phi8", "p*q^3/(1+p^2)^2 + 3/2*p*q/(1+p^2)", K::Published, ""},
      {"phi9", "(p^2-1)/(1+p^2)^2*q^3 - 3*q/(1+p^2)", K::Published, ""},
      {"phi10",
       "(p^3-3*p)/(1+p^2)^3*q^4 + 3/2*(p^5-2*p^3-3*p)/(1+p^2)^3*q^2 - 3/2*p/(1+p^2)", K::Published, ""},
      {"phi11",
       "(3*p^2-1)/(1+p^2)^3*q^4 + 3/2*(3*p^4+2*p^2-1)/(1+p^2)^3*q^2 + 3/2*p^2/(1+p^2)", K::Published, ""},
      {"phi12", kPhi12Corrected, K::Corrected,
       "q^5 numerator p^4-6p^2+6 -> p^4-6p^2+1; equals rot12(phi10)/3"},
      {"phi13",
       "(p^3-p)/(1+p^2)^4*q^5 + (21*p^5+2*p^3-19*p)/(12*(1+p^2)^4)*q^3"
       " + (3*p^7+4*p^5-p^3-2*p)/(4*(1+p^2)^4)*q",
       K::Published, ""},
  };
  return table;
}

std::string join_names(const std::vector<std::string> &names) {
  std::string out;
  for (const auto &n : names) {
    if (!out.empty())
      out += ", ";
    out += n;
  }
  return out;
}

} // namespace

ContactExpr recursion_rot12(const ContactExpr &phi) {
  return mul_monomial(diff_q(phi), 1, 0) - mul_monomial(diff_p(phi), 0, 1);
}

ContactExpr recursion_t(int i, const ContactExpr &phi) {
  if (i != 1 && i != 2)
    throw std::invalid_argument("recursion_t index must be 1 or 2");
  ContactExpr phi_p = diff_p(phi);
  ContactExpr phi_q = diff_q(phi);
  if (i == 1)
    return -mul_monomial(phi, 1, 0) + mul_one_plus_p2(phi_p) + mul_monomial(phi_q, 1, 1);
  return -mul_monomial(phi, 0, 1) + phi_q + mul_monomial(phi_q, 0, 2) + mul_monomial(phi_p, 1, 1);
}

std::string_view op_name(RecursionOp op) {
  switch (op) {
  case RecursionOp::Rot12:
    return "rot12";
  case RecursionOp::T1:
    return "t1";
  case RecursionOp::T2:
    return "t2";
  case RecursionOp::Dil:
    return "dil";
  }
  return "?";
}

RecursionOp parse_op(std::string_view name) {
  if (name == "rot12")
    return RecursionOp::Rot12;
  if (name == "t1")
    return RecursionOp::T1;
  if (name == "t2")
    return RecursionOp::T2;
  if (name == "dil")
    return RecursionOp::Dil;
  throw UnknownNameError("unknown operator '" + std::string(name) + "' (expected rot12, t1, t2, dil)");
}

ContactExpr apply_op(RecursionOp op, const ContactExpr &phi) {
  switch (op) {
  case RecursionOp::Rot12:
    return recursion_rot12(phi);
  case RecursionOp::T1:
    return recursion_t(1, phi);
  case RecursionOp::T2:
    return recursion_t(2, phi);
  case RecursionOp::Dil: {
    JetFunction r = jacobi_bracket(point_generator(kDil), JetFunction(phi));
    if (!r.is_pure())
      throw ConsistencyError("dilatation bracket left the subalgebra h");
    return r.pure_part();
  }
  }
  throw std::logic_error("unhandled recursion operator");
}

// ---------------------------------------------------------------------------

std::string Provenance::to_string() const {
  switch (kind) {
  case Kind::Published:
    return "published";
  case Kind::User:
    return "user";
  case Kind::Corrected:
    return "corrected(" + note + ")";
  case Kind::Derived: {
    std::string out = "derived-by(";
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (i > 0)
        out += ',';
      out += op_name(ops[i]);
    }
    return out + "; seed=" + seed + ")";
  }
  }
  return "?";
}

Provenance Provenance::from_string(std::string_view text) {
  Provenance p;
  if (text == "published")
    return p;
  if (text == "user") {
    p.kind = Kind::User;
    return p;
  }
  auto body = [&](std::string_view prefix) -> std::optional<std::string_view> {
    if (text.substr(0, prefix.size()) != prefix || text.back() != ')')
      return std::nullopt;
    return text.substr(prefix.size(), text.size() - prefix.size() - 1);
  };
  if (auto note = body("corrected(")) {
    p.kind = Kind::Corrected;
    p.note = std::string(*note);
    return p;
  }
  if (auto inner = body("derived-by(")) {
    p.kind = Kind::Derived;
    auto split = inner->find("; seed=");
    if (split == std::string_view::npos)
      throw std::invalid_argument("malformed provenance: " + std::string(text));
    std::string_view ops = inner->substr(0, split);
    p.seed = std::string(inner->substr(split + 7));
    while (!ops.empty()) {
      auto comma = ops.find(',');
      p.ops.push_back(parse_op(ops.substr(0, comma)));
      if (comma == std::string_view::npos)
        break;
      ops.remove_prefix(comma + 1);
    }
    return p;
  }
  throw std::invalid_argument("malformed provenance: " + std::string(text));
}

std::vector<PrintedFormula> printed_formulas() {
  std::vector<PrintedFormula> out;
  for (const auto &b : builtins()) {
    if (b.name == "phi12")
      out.push_back({b.name, kPhi12Printed});
    else
      out.push_back({b.name, b.text});
  }
  return out;
}

std::vector<std::string> h_catalog_names() {
  return {"phi1", "phi2_1", "phi2_2", "phi5", "phi6", "phi7", "phi8", "phi9", "phi10", "phi11", "phi12", "phi13"};
}

std::vector<std::string> point_generator_names() {
  return {"phi1", "phi2_1", "phi2_2", "phi3_12", "phi3_1", "phi3_2", "phi4"};
}

GeneratorCatalog GeneratorCatalog::builtin() {
  GeneratorCatalog catalog;
  for (const auto &b : builtins()) {
    CatalogEntry e;
    e.name = std::string(b.name);
    e.generator = parse_jet(b.text);
    e.provenance.kind = b.kind;
    e.provenance.note = std::string(b.note);
    if (e.generator.is_pure()) {
      ContactExpr residual = pde_residual(e.generator.pure_part());
      if (!residual.is_zero())
        throw ConsistencyError("built-in " + e.name + " has nonzero residual " + format(residual));
      e.residual_verified = true;
    }
    catalog.add(std::move(e));
  }
  return catalog;
}

GeneratorCatalog::GeneratorCatalog(const GeneratorCatalog &other) {
  std::shared_lock lock(other.mutex_);
  order_ = other.order_;
  entries_ = other.entries_;
}

GeneratorCatalog &GeneratorCatalog::operator=(const GeneratorCatalog &other) {
  if (this == &other)
    return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  order_ = other.order_;
  entries_ = other.entries_;
  return *this;
}

CatalogEntry GeneratorCatalog::entry(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end())
    throw UnknownNameError("unknown generator '" + std::string(name) + "'; available: " + join_names(order_));
  return it->second;
}

JetFunction GeneratorCatalog::get(std::string_view name) const { return entry(name).generator; }

ContactExpr GeneratorCatalog::get_pure(std::string_view name) const {
  JetFunction f = get(name);
  if (!f.is_pure())
    throw std::invalid_argument("generator '" + std::string(name) + "' depends on x, y, u (not in h)");
  return f.pure_part();
}

bool GeneratorCatalog::contains(std::string_view name) const {
  std::shared_lock lock(mutex_);
  return entries_.find(name) != entries_.end();
}

std::vector<CatalogEntry> GeneratorCatalog::entries() const {
  std::shared_lock lock(mutex_);
  std::vector<CatalogEntry> out;
  out.reserve(order_.size());
  for (const auto &n : order_)
    out.push_back(entries_.find(n)->second);
  return out;
}

std::vector<std::string> GeneratorCatalog::names() const {
  std::shared_lock lock(mutex_);
  return order_;
}

void GeneratorCatalog::add(CatalogEntry entry) {
  std::scoped_lock lock(mutex_);
  if (entries_.count(entry.name) != 0)
    throw std::invalid_argument("duplicate generator name '" + entry.name + "'");
  order_.push_back(entry.name);
  std::string key = entry.name;
  entries_.emplace(std::move(key), std::move(entry));
}

void GeneratorCatalog::upsert(CatalogEntry entry) {
  std::scoped_lock lock(mutex_);
  auto it = entries_.find(entry.name);
  if (it != entries_.end()) {
    it->second = std::move(entry);
    return;
  }
  order_.push_back(entry.name);
  std::string key = entry.name;
  entries_.emplace(std::move(key), std::move(entry));
}

std::string derived_name(std::string_view seed, const std::vector<RecursionOp> &ops, std::size_t step) {
  std::string out = "gen_" + std::string(seed) + "_";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (i > 0)
      out += '-';
    out += op_name(ops[i]);
  }
  return out + "_" + std::to_string(step);
}

std::vector<ProliferationStep> proliferate(const GeneratorCatalog &catalog, std::string_view seed,
                                           const std::vector<RecursionOp> &ops) {
  ContactExpr current = catalog.get_pure(seed);
  if (!pde_residual(current).is_zero())
    throw ConsistencyError("seed '" + std::string(seed) + "' is not a solution");
  std::vector<ProliferationStep> steps;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    current = apply_op(ops[k], current);
    ContactExpr residual = pde_residual(current);
    if (!residual.is_zero())
      throw ConsistencyError("step " + std::to_string(k + 1) + " (" + std::string(op_name(ops[k])) +
                             ") produced nonzero residual " + format(residual));
    steps.push_back({derived_name(seed, ops, k + 1), current});
  }
  return steps;
}

std::vector<ProliferationStep> proliferate(GeneratorCatalog &catalog, std::string_view seed,
                                           const std::vector<RecursionOp> &ops, bool register_results) {
  auto steps = proliferate(static_cast<const GeneratorCatalog &>(catalog), seed, ops);
  if (register_results) {
    for (std::size_t k = 0; k < steps.size(); ++k) {
      CatalogEntry e;
      e.name = steps[k].name;
      e.generator = JetFunction(steps[k].value);
      e.provenance.kind = Provenance::Kind::Derived;
      e.provenance.seed = std::string(seed);
      e.provenance.ops.assign(ops.begin(), ops.begin() + static_cast<std::ptrdiff_t>(k + 1));
      e.residual_verified = true;
      catalog.upsert(std::move(e));
    }
  }
  return steps;
}

bool BracketReport::all_hold() const {
  for (const auto &r : relations)
    if (!r.holds)
      return false;
  return true;
}

BracketReport verify_bracket_relations(const ContactExpr &phi) {
  BracketReport report;
  JetFunction f(phi);
  auto add = [&](std::string label, std::string_view point, JetFunction closed) {
    BracketRelation r;
    r.label = std::move(label);
    r.via_bracket = jacobi_bracket(point_generator(point), f);
    r.closed_form = std::move(closed);
    r.holds = r.via_bracket == r.closed_form;
    report.relations.push_back(std::move(r));
  };
  add("{phi3_12, phi} = p phi_q - q phi_p", kRot12, recursion_rot12(phi));
  add("{phi3_1, phi} = -p phi + (1+p^2) phi_p + pq phi_q", kRot1, recursion_t(1, phi));
  add("{phi3_2, phi} = -q phi + (1+q^2) phi_q + pq phi_p", kRot2, recursion_t(2, phi));
  add("{phi4, phi} = -phi", kDil, -f);
  return report;
}

// ---------------------------------------------------------------------------

std::string manifest_record(const CatalogEntry &entry) {
  nlohmann::ordered_json j;
  j["name"] = entry.name;
  j["expression"] = format_jet(entry.generator);
  j["provenance"] = entry.provenance.to_string();
  j["residual_verified"] = entry.residual_verified;
  return j.dump();
}

CatalogEntry parse_manifest_record(std::string_view line) {
  auto j = nlohmann::json::parse(line);
  CatalogEntry e;
  e.name = j.at("name").get<std::string>();
  e.generator = parse_jet(j.at("expression").get<std::string>());
  e.provenance = Provenance::from_string(j.at("provenance").get<std::string>());
  e.residual_verified = j.at("residual_verified").get<bool>();
  return e;
}

void write_manifest(const std::vector<CatalogEntry> &entries, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open manifest for writing: " + path.string());
  for (const auto &e : entries)
    out << manifest_record(e) << '\n';
  if (!out)
    throw IoError("failed writing manifest: " + path.string());
}

std::vector<CatalogEntry> read_manifest(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open manifest: " + path.string());
  std::vector<CatalogEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty())
      continue;
    try {
      out.push_back(parse_manifest_record(line));
    } catch (const std::exception &ex) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " + ex.what());
    }
  }
  return out;
}

} // namespace minsurf
