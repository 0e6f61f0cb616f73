#include "fidelium/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fidelium/files.hpp"
#include "json.hpp"

namespace fidelium {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path + "'");
  out << text;
}

namespace {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::io_error, std::string("invalid JSON: ") + e.what());
  }
}

std::string want_string(const Json& j, const std::string& what) {
  if (!j.is_string()) fail(ErrorCode::io_error, what + " must be a string");
  return j.get<std::string>();
}

// Binary table given as {"a": {"b": "v", ...}, ...}; missing entries are an
// error because partial tables cannot be checked meaningfully.
std::vector<Elem> parse_binary_table(const Json& j, const FiniteLattice& l,
                                     const std::string& what) {
  if (!j.is_object()) fail(ErrorCode::io_error, what + " must be an object");
  std::vector<Elem> t(l.size() * l.size(), -1);
  for (const auto& [row, cols] : j.items()) {
    Elem a = l.elem(row);
    if (!cols.is_object()) fail(ErrorCode::io_error, what + " rows must be objects");
    for (const auto& [col, val] : cols.items())
      t[a * l.size() + l.elem(col)] = l.elem(want_string(val, what + " entry"));
  }
  for (Elem v : t)
    if (v < 0) fail(ErrorCode::inconsistent_tables, what + " table is incomplete");
  return t;
}

std::vector<Elem> parse_unary_table(const Json& j, const FiniteLattice& l,
                                    const std::string& what) {
  if (!j.is_object()) fail(ErrorCode::io_error, what + " must be an object");
  std::vector<Elem> t(l.size(), -1);
  for (const auto& [key, val] : j.items())
    t[l.elem(key)] = l.elem(want_string(val, what + " entry"));
  for (Elem v : t)
    if (v < 0) fail(ErrorCode::inconsistent_tables, what + " table is incomplete");
  return t;
}

LoadedAlgebra load_algebra_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::io_error, "algebra record must be an object");
  if (!j.contains("elements") || !j["elements"].is_array())
    fail(ErrorCode::io_error, "algebra record needs an 'elements' array");
  std::vector<std::string> elements;
  for (const auto& e : j["elements"]) elements.push_back(want_string(e, "element"));

  FiniteLattice lattice = [&] {
    if (j.contains("leq")) {
      std::vector<std::pair<std::string, std::string>> pairs;
      for (const auto& p : j["leq"]) {
        if (!p.is_array() || p.size() != 2)
          fail(ErrorCode::io_error, "leq entries must be [lo, hi] pairs");
        pairs.emplace_back(want_string(p[0], "leq element"), want_string(p[1], "leq element"));
      }
      return FiniteLattice::from_order(elements, pairs);
    }
    if (j.contains("meet")) {
      // derive the order from the meet table: a <= b iff meet(a, b) == a
      std::vector<std::string> sorted = elements;
      std::sort(sorted.begin(), sorted.end());
      auto at = [&](const std::string& n) -> Elem {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), n);
        if (it == sorted.end() || *it != n)
          fail(ErrorCode::unknown_element, "unknown element '" + n + "' in meet");
        return static_cast<Elem>(it - sorted.begin());
      };
      const int n = static_cast<int>(sorted.size());
      if (!j["meet"].is_object()) fail(ErrorCode::io_error, "meet must be an object");
      std::vector<Elem> meet(static_cast<std::size_t>(n) * n, -1);
      for (const auto& [row, cols] : j["meet"].items()) {
        Elem a = at(row);
        if (!cols.is_object()) fail(ErrorCode::io_error, "meet rows must be objects");
        for (const auto& [col, val] : cols.items())
          meet[a * n + at(col)] = at(want_string(val, "meet entry"));
      }
      for (Elem v : meet)
        if (v < 0) fail(ErrorCode::inconsistent_tables, "meet table is incomplete");
      std::vector<std::pair<std::string, std::string>> pairs;
      for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
          if (meet[a * n + b] == a) pairs.emplace_back(sorted[a], sorted[b]);
      return FiniteLattice::from_order(elements, pairs);
    }
    fail(ErrorCode::io_error, "algebra record needs 'leq' or 'meet'");
  }();

  for (const char* key : {"meet", "join"}) {
    if (!j.contains(key)) continue;
    std::vector<Elem> given = parse_binary_table(j[key], lattice, key);
    for (Elem a = 0; a < lattice.size(); ++a)
      for (Elem b = 0; b < lattice.size(); ++b) {
        Elem computed = std::string(key) == "meet" ? lattice.meet(a, b) : lattice.join(a, b);
        if (given[a * lattice.size() + b] != computed)
          fail(ErrorCode::inconsistent_tables,
               std::string(key) + "('" + lattice.name(a) + "', '" + lattice.name(b) +
                   "') disagrees with the order");
      }
  }

  std::optional<std::vector<Elem>> implies;
  if (j.contains("implies")) implies = parse_binary_table(j["implies"], lattice, "implies");
  std::optional<std::vector<Elem>> neg;
  if (j.contains("neg")) neg = parse_unary_table(j["neg"], lattice, "neg");

  bool designate_bottom = j.contains("bottom") || j.contains("complement");
  if (j.contains("bottom")) {
    Elem b = lattice.elem(want_string(j["bottom"], "bottom"));
    if (b != lattice.least())
      fail(ErrorCode::inconsistent_tables,
           "designated bottom '" + lattice.name(b) + "' is not the least element");
  }
  if (j.contains("top")) {
    Elem t = lattice.elem(want_string(j["top"], "top"));
    if (t != lattice.greatest())
      fail(ErrorCode::inconsistent_tables,
           "designated top '" + lattice.name(t) + "' is not the greatest element");
  }

  LoadedAlgebra out{HeytingStructure::build(std::move(lattice), designate_bottom,
                                            std::move(implies), std::move(neg)),
                    std::nullopt};
  std::optional<std::vector<Elem>> complement;
  if (j.contains("complement"))
    complement = parse_unary_table(j["complement"], out.heyting.lattice(), "complement");
  if (out.heyting.classification() == AlgebraClass::boolean)
    out.boolean = BooleanStructure::build(out.heyting, std::move(complement));
  else if (complement)
    fail(ErrorCode::kind_mismatch, "complement table given but the algebra is not Boolean");
  return out;
}

}  // namespace

AlgebraHandle load_algebra_text(const std::string& text) {
  return std::make_shared<const LoadedAlgebra>(load_algebra_json(parse_json(text)));
}

AlgebraHandle load_algebra_file(const std::string& path) {
  return load_algebra_text(read_file(path));
}

std::string save_algebra(const LoadedAlgebra& a) {
  const HeytingStructure& h = a.heyting;
  Json j;
  j["elements"] = h.lattice().names();
  Json leq = Json::array();
  for (Elem x = 0; x < h.size(); ++x)
    for (Elem y = 0; y < h.size(); ++y)
      if (x != y && h.leq(x, y)) leq.push_back(Json::array({h.name(x), h.name(y)}));
  j["leq"] = std::move(leq);
  j["top"] = h.name(h.top());
  if (h.bottom()) j["bottom"] = h.name(*h.bottom());
  if (h.has_neg()) {
    Json neg;
    for (Elem x = 0; x < h.size(); ++x) neg[h.name(x)] = h.name(h.neg(x));
    j["neg"] = std::move(neg);
  }
  if (a.boolean) {
    Json c;
    for (Elem x = 0; x < h.size(); ++x) c[h.name(x)] = h.name(a.boolean->complement(x));
    j["complement"] = std::move(c);
  }
  return j.dump(2) + "\n";
}

namespace {

AlgebraHandle algebra_from_field(const Json& j, const std::string& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return load_algebra_file(p.string());
  }
  return std::make_shared<const LoadedAlgebra>(load_algebra_json(j));
}

std::vector<ElemSet> parse_family(const Json& j, const HeytingStructure& h,
                                  const std::string& what) {
  std::vector<ElemSet> fam(h.size(), (ElemSet(1) << h.size()) - 1);
  if (j.is_null()) return fam;
  if (!j.is_object()) fail(ErrorCode::io_error, what + " must map elements to lists");
  for (const auto& [key, members] : j.items()) {
    Elem x = h.elem(key);
    if (!members.is_array()) fail(ErrorCode::io_error, what + "['" + key + "'] must be a list");
    ElemSet s = 0;
    for (const auto& m : members) s |= ElemSet(1) << h.elem(want_string(m, what + " member"));
    fam[x] = s;
  }
  return fam;
}

FidelStructure load_structure_json(const Json& j, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("kind"))
    fail(ErrorCode::io_error, "structure record needs 'algebra' and 'kind'");
  AlgebraHandle algebra = algebra_from_field(j["algebra"], base_dir);
  auto kind = fidel_kind_from(want_string(j["kind"], "kind"));
  if (!kind) fail(ErrorCode::io_error, "unknown kind '" + want_string(j["kind"], "kind") + "'");
  const HeytingStructure& h = algebra->heyting;
  std::vector<ElemSet> n = parse_family(j.contains("N") ? j["N"] : Json(), h, "N");
  std::vector<ElemSet> o;
  if (*kind == FidelKind::c1) o = parse_family(j.contains("O") ? j["O"] : Json(), h, "O");
  else if (j.contains("O"))
    fail(ErrorCode::io_error, "O family is only meaningful for c1 structures");
  bool strict = !j.contains("strict") || j["strict"].get<bool>();
  return FidelStructure::make(std::move(algebra), *kind, std::move(n), std::move(o), strict);
}

Json family_json(const std::vector<ElemSet>& fam, const HeytingStructure& h) {
  Json out;
  for (Elem x = 0; x < h.size(); ++x) {
    Json members = Json::array();
    for (Elem m = 0; m < h.size(); ++m)
      if (fam[x] >> m & 1) members.push_back(h.name(m));
    out[h.name(x)] = std::move(members);
  }
  return out;
}

}  // namespace

FidelStructure load_structure_text(const std::string& text, const std::string& base_dir) {
  return load_structure_json(parse_json(text), base_dir);
}

FidelStructure load_structure_file(const std::string& path) {
  return load_structure_text(read_file(path),
                             std::filesystem::path(path).parent_path().string());
}

std::string save_structure(const FidelStructure& s) {
  Json j;
  j["algebra"] = Json::parse(save_algebra(*s.algebra));
  j["kind"] = fidel_kind_name(s.kind);
  j["strict"] = s.strict;
  j["N"] = family_json(s.n_family, s.heyting());
  if (s.kind == FidelKind::c1) j["O"] = family_json(s.o_family, s.heyting());
  return j.dump(2) + "\n";
}

namespace {

LoadedUniverse load_universe_json(const Json& j, const std::string& base_dir) {
  if (!j.is_object()) fail(ErrorCode::io_error, "universe record must be an object");
  LoadedUniverse out;
  AlgebraHandle algebra;
  if (j.contains("structure")) {
    const Json& sj = j["structure"];
    if (sj.is_string()) {
      std::filesystem::path p = sj.get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      out.structure = load_structure_file(p.string());
    } else {
      out.structure = load_structure_json(sj, base_dir);
    }
    algebra = out.structure->algebra;
  } else if (j.contains("algebra")) {
    algebra = algebra_from_field(j["algebra"], base_dir);
  } else {
    fail(ErrorCode::io_error, "universe record needs 'algebra' or 'structure'");
  }
  out.fragment = std::make_shared<UniverseFragment>(algebra);
  if (j.contains("names")) {
    if (!j["names"].is_array())
      fail(ErrorCode::io_error, "'names' must be a list of [label, expression] pairs");
    for (const auto& entry : j["names"]) {
      if (!entry.is_array() || entry.size() != 2)
        fail(ErrorCode::io_error, "'names' entries must be [label, expression] pairs");
      std::string label = want_string(entry[0], "name label");
      NameId id = parse_name_expr(*out.fragment, want_string(entry[1], "name expression"));
      out.fragment->bind(label, id);
    }
  }
  return out;
}

}  // namespace

LoadedUniverse load_universe_text(const std::string& text, const std::string& base_dir) {
  return load_universe_json(parse_json(text), base_dir);
}

LoadedUniverse load_universe_file(const std::string& path) {
  return load_universe_text(read_file(path),
                            std::filesystem::path(path).parent_path().string());
}

}  // namespace fidelium
