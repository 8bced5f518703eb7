// JSON (de)serialization for the CLI-facing object kinds. All failures
// surface as domain_error so callers see one exception family; rationals
// and big integers travel as decimal strings.

#include "endspace/json_io.hpp"

#include <string>
#include <utility>
#include <vector>

namespace endspace {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw domain_error(std::string("expected an object with '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw domain_error(std::string("missing field '") + key + "'");
  return *it;
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw domain_error(std::string("field '") + key + "' must be an array");
  return a;
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::runtime_error&) {
      throw domain_error("not an integer: " + j.get<std::string>());
    }
  }
  throw domain_error("expected an integer (number or decimal string)");
}

int small_int_from_json(const json& j, const char* what) {
  if (!j.is_number_integer()) throw domain_error(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<LevelDesc> levels_from_json(const json& arr, const char* what) {
  if (!arr.is_array()) throw domain_error(std::string(what) + " must be an array of levels");
  std::vector<LevelDesc> out;
  for (const json& jl : arr) {
    LevelDesc lvl;
    for (const json& jc : array_field(jl, "classes")) {
      ClassDesc cd;
      for (const json& e : array_field(jc, "children"))
        cd.children.push_back(small_int_from_json(e, "a child index"));
      lvl.classes.push_back(std::move(cd));
    }
    out.push_back(std::move(lvl));
  }
  return out;
}

json levels_to_json(const std::vector<LevelDesc>& levels) {
  json arr = json::array();
  for (const auto& lvl : levels) {
    json classes = json::array();
    for (const auto& c : lvl.classes) classes.push_back(json{{"children", c.children}});
    arr.push_back(json{{"classes", std::move(classes)}});
  }
  return arr;
}

std::vector<Mat> matrices_from_json(const json& arr, const char* what) {
  if (!arr.is_array()) throw domain_error(std::string(what) + " must be an array of matrices");
  std::vector<Mat> out;
  for (const json& jm : arr) {
    if (!jm.is_array()) throw domain_error("a matrix must be an array of rows");
    Mat m;
    for (const json& jr : jm) {
      if (!jr.is_array()) throw domain_error("a matrix row must be an array");
      Vec row;
      for (const json& e : jr) row.push_back(int_from_json(e));
      m.push_back(std::move(row));
    }
    out.push_back(std::move(m));
  }
  return out;
}

json matrices_to_json(const std::vector<Mat>& mats) {
  json arr = json::array();
  for (const auto& m : mats) {
    json jm = json::array();
    for (const auto& row : m) {
      json jr = json::array();
      for (const auto& e : row) jr.push_back(e.str());
      jm.push_back(std::move(jr));
    }
    arr.push_back(std::move(jm));
  }
  return arr;
}

std::vector<Int> coeffs_from_json(const json& arr) {
  std::vector<Int> out;
  for (const json& e : arr) out.push_back(int_from_json(e));
  return out;
}

}  // namespace

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw domain_error("expected a rational (decimal string or integer)");
}

json rat_to_json(const Rat& r) { return format_rational(r); }

FiniteUltrametricSpace space_from_json(const json& j) {
  FiniteUltrametricSpace s;
  for (const json& p : array_field(j, "points")) {
    if (!p.is_string()) throw domain_error("point labels must be strings");
    s.points.push_back(p.get<std::string>());
  }
  for (const json& jr : array_field(j, "dist")) {
    if (!jr.is_array()) throw domain_error("dist must be a matrix");
    std::vector<Rat> row;
    for (const json& e : jr) row.push_back(rat_from_json(e));
    s.dist.push_back(std::move(row));
  }
  return s;
}

json space_to_json(const FiniteUltrametricSpace& s) {
  json dist = json::array();
  for (const auto& row : s.dist) {
    json jr = json::array();
    for (const auto& e : row) jr.push_back(rat_to_json(e));
    dist.push_back(std::move(jr));
  }
  return json{{"points", s.points}, {"dist", std::move(dist)}};
}

TreeSystem tree_from_json(const json& j) {
  const json& jk = field(j, "kind");
  if (!jk.is_string()) throw domain_error("tree kind must be a string");
  const std::string kind = jk.get<std::string>();
  if (kind == "sft") {
    std::vector<std::vector<int>> m;
    for (const json& jr : array_field(j, "matrix")) {
      if (!jr.is_array()) throw domain_error("matrix rows must be arrays");
      std::vector<int> row;
      for (const json& e : jr) row.push_back(small_int_from_json(e, "a matrix entry"));
      m.push_back(std::move(row));
    }
    return from_sft(m);
  }
  if (kind == "cfrac") {
    std::vector<Int> pre, cyc;
    if (j.contains("prefix")) pre = coeffs_from_json(array_field(j, "prefix"));
    if (j.contains("cycle")) cyc = coeffs_from_json(array_field(j, "cycle"));
    return from_cfrac(pre, cyc);
  }
  if (kind == "eventually_periodic" || kind == "explicit") {
    TreeSystem t;
    t.prefix = levels_from_json(array_field(j, "prefix"), "prefix");
    if (j.contains("cycle")) t.cycle = levels_from_json(j["cycle"], "cycle");
    if (kind == "eventually_periodic" && t.cycle.empty())
      throw domain_error("an eventually periodic tree needs a nonempty cycle");
    if (kind == "explicit" && !t.cycle.empty())
      throw domain_error("an explicit tree cannot carry a cycle");
    return t;
  }
  throw domain_error("unknown tree kind: " + kind);
}

json tree_to_json(const TreeSystem& t) {
  return json{{"kind", t.eventually_periodic() ? "eventually_periodic" : "explicit"},
              {"prefix", levels_to_json(t.prefix)},
              {"cycle", levels_to_json(t.cycle)}};
}

BratteliDiagram diagram_from_json(const json& j) {
  BratteliDiagram d;
  d.prefix = matrices_from_json(array_field(j, "prefix"), "prefix");
  if (j.contains("cycle")) d.cycle = matrices_from_json(j["cycle"], "cycle");
  return d;
}

json diagram_to_json(const BratteliDiagram& d) {
  return json{{"kind", d.eventually_periodic() ? "eventually_periodic" : "explicit"},
              {"prefix", matrices_to_json(d.prefix)},
              {"cycle", matrices_to_json(d.cycle)}};
}

PrefixMap prefix_map_from_json(const json& j) {
  const int n = small_int_from_json(field(j, "n"), "the arity");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const json& jp : array_field(j, "pairs")) {
    if (!jp.is_array() || jp.size() != 2 || !jp[0].is_string() || !jp[1].is_string())
      throw domain_error("each pair must be [\"domain word\", \"range word\"]");
    pairs.emplace_back(jp[0].get<std::string>(), jp[1].get<std::string>());
  }
  return make_prefix_map(n, std::move(pairs));
}

json prefix_map_to_json(const PrefixMap& g) {
  json pairs = json::array();
  for (const auto& [u, v] : g.pairs) pairs.push_back(json::array({u, v}));
  return json{{"n", g.n}, {"pairs", std::move(pairs)}};
}

json dendrogram_to_json(const Dendrogram& d, const std::vector<std::string>& labels) {
  json thresholds = json::array();
  for (const auto& t : d.thresholds) thresholds.push_back(format_rational(t));
  json blocks = json::array();
  for (const auto& level : d.blocks) {
    json jl = json::array();
    for (const auto& block : level) {
      json jb = json::array();
      for (std::size_t i : block) jb.push_back(labels.at(i));
      jl.push_back(std::move(jb));
    }
    blocks.push_back(std::move(jl));
  }
  return json{{"thresholds", std::move(thresholds)}, {"blocks", std::move(blocks)}};
}

json parse_json_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw domain_error(what + ": malformed JSON");
  return j;
}

}  // namespace endspace
