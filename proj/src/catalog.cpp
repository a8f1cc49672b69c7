#include "axihelm/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace axihelm {

namespace {

const char* kBuiltinCatalog =
#include "catalog_data.inc"
    ;

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> splitPipes(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '|') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string to_string(EntryKind k) {
  switch (k) {
    case EntryKind::SeedSolution:
      return "seed-solution";
    case EntryKind::Potential:
      return "potential";
    case EntryKind::Solution:
      return "solution";
    case EntryKind::Exponent:
      return "exponent";
    case EntryKind::OneFormPrimitive:
      return "one-form-primitive";
  }
  return "?";
}

EntryKind entryKindFromString(const std::string& s) {
  if (s == "seed-solution") return EntryKind::SeedSolution;
  if (s == "potential") return EntryKind::Potential;
  if (s == "solution") return EntryKind::Solution;
  if (s == "exponent") return EntryKind::Exponent;
  if (s == "one-form-primitive") return EntryKind::OneFormPrimitive;
  throw std::invalid_argument("unknown catalog entry kind '" + s + "'");
}

Catalog Catalog::load(std::istream& in, const std::string& sourceName) {
  Catalog cat;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = splitPipes(t);
    if (fields.size() != 6)
      throw std::invalid_argument(sourceName + ":" + std::to_string(lineNo) +
                                  ": expected 6 pipe-separated fields");
    CatalogEntry e;
    e.id = fields[0];
    e.kind = entryKindFromString(fields[1]);
    e.exprText = fields[2];
    try {
      e.expr = parse(e.exprText);
    } catch (const ParseError& err) {
      throw std::invalid_argument(sourceName + ":" + std::to_string(lineNo) + ": " + err.what());
    }
    if (!fields[3].empty()) {
      std::stringstream ps(fields[3]);
      std::string name;
      while (std::getline(ps, name, ',')) {
        name = trim(name);
        if (!name.empty()) e.requiredParams.push_back(name);
      }
    }
    e.provenance = fields[4];
    e.domainNote = fields[5];
    if (e.provenance.empty())
      throw std::invalid_argument(sourceName + ":" + std::to_string(lineNo) +
                                  ": entry lacks a provenance string");
    // The declared parameters must be exactly the free parameters of the text.
    auto free = freeParams(e.expr);
    std::vector<std::string> declared = e.requiredParams;
    std::sort(declared.begin(), declared.end());
    if (free != declared)
      throw std::invalid_argument(sourceName + ":" + std::to_string(lineNo) +
                                  ": declared parameters do not match the expression");
    cat.entries_.push_back(std::move(e));
  }
  return cat;
}

Catalog Catalog::loadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file '" + path + "'");
  return load(in, path);
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = [] {
    std::istringstream in(kBuiltinCatalog);
    return load(in, "<builtin>");
  }();
  return cat;
}

bool Catalog::has(const std::string& id) const {
  for (const auto& e : entries_)
    if (e.id == id) return true;
  return false;
}

const CatalogEntry& Catalog::at(const std::string& id) const {
  for (const auto& e : entries_)
    if (e.id == id) return e;
  throw std::out_of_range("no catalog entry '" + id + "'");
}

std::vector<Expr> Catalog::seeds() const {
  std::vector<Expr> out;
  for (const auto& e : entries_)
    if (e.kind == EntryKind::SeedSolution) out.push_back(e.expr);
  return out;
}

Expr Catalog::ytildeExpr(int i) const {
  if (i < 1 || i > 6) throw std::out_of_range("ytilde index must be in 1..6");
  return at("ytilde." + std::to_string(i)).expr;
}

Expr Catalog::ytilde(int i, const AnsatzParams& p) const {
  return substitute(ytildeExpr(i), p.params());
}

Catalog::TwofoldExample Catalog::twofoldExample(int n) const {
  if (n != 1 && n != 2) throw std::out_of_range("twofold example index must be 1 or 2");
  std::string base = "superpose." + std::to_string(n) + ".";
  TwofoldExample ex;
  ex.y1 = at(base + "y1").expr;
  ex.y2 = at(base + "y2").expr;
  ex.fClosed = at(base + "f").expr;
  ex.newPotential = at("potential.twofold." + std::to_string(n)).expr;
  return ex;
}

}  // namespace axihelm
