// Command-line front end. Argument handling is CLI11's; every report is
// assembled here so the formats stay in one place. Exit codes: 0 success,
// 1 domain error, 2 usage error.

#include "endspace/cli.hpp"

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "endspace/bratteli.hpp"
#include "endspace/dimension_group.hpp"
#include "endspace/groupoid.hpp"
#include "endspace/json_io.hpp"
#include "endspace/rigidity.hpp"
#include "endspace/thompson.hpp"
#include "endspace/tree_system.hpp"
#include "endspace/ultrametric.hpp"

namespace endspace {

namespace {

// malformed argument values (usage, exit 2) as opposed to bad objects
// (domain_error, exit 1)
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- small parsers ----

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw domain_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw domain_error("cannot write file: " + path);
  out << text;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string tok;
  std::istringstream ss(s);
  while (std::getline(ss, tok, sep)) parts.push_back(tok);
  return parts;
}

long strict_long(const std::string& s) {
  std::size_t used = 0;
  const long v = std::stol(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

int parse_int(const std::string& s, const char* what) {
  try {
    return static_cast<int>(strict_long(s));
  } catch (const std::exception&) {
    throw domain_error(std::string(what) + ": not an integer: " + s);
  }
}

// comma list of small integers; argument-format failures are usage errors
std::vector<int> parse_positions(const std::string& s, const char* what) {
  std::vector<int> out;
  if (s.empty()) return out;
  for (const auto& tok : split_on(s, ',')) {
    try {
      out.push_back(static_cast<int>(strict_long(tok)));
    } catch (const std::exception&) {
      throw usage_error(std::string(what) + ": not an integer: " + tok);
    }
  }
  return out;
}

std::vector<Int> parse_coeff_list(const std::string& s, const char* what) {
  std::vector<Int> out;
  if (s.empty()) return out;
  for (const auto& tok : split_on(s, ',')) {
    try {
      out.emplace_back(tok);
    } catch (const std::runtime_error&) {
      throw domain_error(std::string(what) + ": not an integer: " + tok);
    }
  }
  return out;
}

// "pre:cyc" with comma-separated positions on both sides
EndPoint parse_endpoint(const std::string& s, const char* what) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw usage_error(std::string(what) + " expects \"pre:cyc\" (colon required)");
  EndPoint x;
  x.pre = parse_positions(s.substr(0, colon), what);
  x.cyc = parse_positions(s.substr(colon + 1), what);
  return x;
}

// "src>tgt" with comma-separated positions on both sides
std::pair<Vertex, Vertex> parse_germ_spec(const std::string& s, const char* what) {
  const auto gt = s.find('>');
  if (gt == std::string::npos)
    throw usage_error(std::string(what) + " expects \"source>target\" ('>' required)");
  return {Vertex{parse_positions(s.substr(0, gt), what)},
          Vertex{parse_positions(s.substr(gt + 1), what)}};
}

// ---- formatting ----

std::string join_with(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string fmt_int_list(const std::vector<int>& v) {
  std::vector<std::string> parts;
  parts.reserve(v.size());
  for (int x : v) parts.push_back(std::to_string(x));
  return join_with(parts, ",");
}

std::string fmt_vertex(const Vertex& v) { return "[" + fmt_int_list(v.positions) + "]"; }

std::string fmt_vec(const Vec& v) {
  std::vector<std::string> parts;
  parts.reserve(v.size());
  for (const auto& x : v) parts.push_back(x.str());
  return "[" + join_with(parts, ",") + "]";
}

std::string fmt_mat(const Mat& m) {
  std::vector<std::string> rows;
  rows.reserve(m.size());
  for (const auto& r : m) rows.push_back(fmt_vec(r));
  return "[" + join_with(rows, ",") + "]";
}

std::string fmt_edge(const DiagramEdge& e) {
  return "(" + std::to_string(e.from_class) + "," + std::to_string(e.to_class) + "," +
         std::to_string(e.occurrence) + ")";
}

std::string fmt_path(const DiagramPath& p) {
  std::vector<std::string> parts;
  parts.reserve(p.size());
  for (const auto& e : p) parts.push_back(fmt_edge(e));
  return join_with(parts, " ");
}

std::string fmt_interval(const RatInterval& iv) {
  return "in [" + format_rational(iv.lo) + ", " + format_rational(iv.hi) + "]";
}

void print_diagram(std::ostream& out, const BratteliDiagram& d) {
  for (std::size_t i = 0; i < d.prefix.size(); ++i)
    out << "prefix[" << i << "]: " << fmt_mat(d.prefix[i]) << "\n";
  if (d.cycle.empty()) {
    out << "cycle: none\n";
  } else {
    for (std::size_t i = 0; i < d.cycle.size(); ++i)
      out << "cycle[" << i << "]: " << fmt_mat(d.cycle[i]) << "\n";
  }
}

const char* cert_name(PositivityCertificate c) {
  switch (c) {
    case PositivityCertificate::NonnegativeVector: return "NonnegativeVector";
    case PositivityCertificate::PerronFunctional: return "PerronFunctional";
    case PositivityCertificate::PerronBoundary: return "PerronBoundary";
    case PositivityCertificate::UnipotentClosedForm: return "UnipotentClosedForm";
    case PositivityCertificate::DominatedNegative: return "DominatedNegative";
    case PositivityCertificate::SearchExhausted: return "SearchExhausted";
  }
  return "?";
}

// ---- input sources ----

struct TreeSource {
  std::string builtin, file, sft, cfrac;
  CLI::Option *builtin_opt = nullptr, *file_opt = nullptr, *sft_opt = nullptr,
              *cfrac_opt = nullptr;
};

void add_tree_source(CLI::App* cmd, TreeSource& s) {
  auto* grp = cmd->add_option_group("source", "input tree system (exactly one)");
  s.builtin_opt = grp->add_option(
      "--builtin", s.builtin,
      "stock tree: cantor, fibonacci, sturmian, regular:N, ary:N, ended:N");
  s.file_opt = grp->add_option("--file", s.file, "tree system JSON file");
  s.sft_opt = grp->add_option("--sft", s.sft, "JSON file holding a 0/1 transition matrix");
  s.cfrac_opt = grp->add_option("--cfrac", s.cfrac,
                                "partial quotients \"a1,a2;b1,b2\" (prefix;cycle)");
  grp->require_option(1);
}

TreeSystem builtin_tree(const std::string& spec) {
  std::string name = spec;
  int n = 0;
  bool has_n = false;
  if (const auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    n = parse_int(spec.substr(colon + 1), "builtin parameter");
    has_n = true;
  }
  if (!has_n) {
    if (name == "cantor") return cantor_tree();
    if (name == "fibonacci") return fibonacci_tree();
    if (name == "sturmian") return sturmian_tree();
  } else {
    if (name == "regular") return regular_tree(n);
    if (name == "ary") return ary_tree(n);
    if (name == "ended") return ended_tree(n);
  }
  throw domain_error("unknown builtin tree: " + spec);
}

TreeSystem resolve_tree(const TreeSource& s) {
  if (s.builtin_opt->count()) return builtin_tree(s.builtin);
  if (s.file_opt->count()) return tree_from_json(parse_json_text(read_text_file(s.file), s.file));
  if (s.sft_opt->count()) {
    nlohmann::json j = parse_json_text(read_text_file(s.sft), s.sft);
    if (!j.is_array() && j.is_object() && j.contains("matrix")) j = j["matrix"];
    if (!j.is_array()) throw domain_error("transition matrix file must hold an array of rows");
    std::vector<std::vector<int>> m;
    for (const auto& jr : j) {
      if (!jr.is_array()) throw domain_error("transition matrix rows must be arrays");
      std::vector<int> row;
      for (const auto& e : jr) {
        if (!e.is_number_integer()) throw domain_error("transition matrix entries must be integers");
        row.push_back(e.get<int>());
      }
      m.push_back(std::move(row));
    }
    return from_sft(m);
  }
  const auto semi = s.cfrac.find(';');
  if (semi == std::string::npos)
    return from_cfrac(parse_coeff_list(s.cfrac, "--cfrac"), {});
  return from_cfrac(parse_coeff_list(s.cfrac.substr(0, semi), "--cfrac"),
                    parse_coeff_list(s.cfrac.substr(semi + 1), "--cfrac"));
}

// ---- subcommand bodies ----

int run_validate(std::ostream& out, const TreeSource& src, bool json_mode) {
  const ValidationReport rep = validate(resolve_tree(src));
  if (json_mode) {
    out << nlohmann::json{{"valid", rep.ok}, {"violations", rep.violations}}.dump(2) << "\n";
  } else {
    out << (rep.ok ? "valid: yes\n" : "valid: no\n");
    for (const auto& v : rep.violations) out << "violation: " << v << "\n";
  }
  return rep.ok ? 0 : 1;
}

int run_profile(std::ostream& out, const TreeSource& src, std::size_t levels, bool json_mode) {
  const std::vector<Int> prof = level_profile(resolve_tree(src), levels);
  std::vector<std::string> parts;
  parts.reserve(prof.size());
  for (const auto& x : prof) parts.push_back(x.str());
  if (json_mode)
    out << nlohmann::json{{"profile", parts}}.dump(2) << "\n";
  else
    out << join_with(parts, " ") << "\n";
  return 0;
}

int run_bratteli(std::ostream& out, const TreeSource& src, bool dot, std::size_t levels,
                 const std::string& out_file, bool json_mode) {
  const BratteliDiagram d = diagram_of(resolve_tree(src));
  std::ostringstream buf;
  if (json_mode)
    buf << diagram_to_json(d).dump(2) << "\n";
  else if (dot)
    buf << to_dot(d, levels);
  else
    print_diagram(buf, d);
  if (out_file.empty())
    out << buf.str();
  else
    write_text_file(out_file, buf.str());
  return 0;
}

int run_telescope(std::ostream& out, const TreeSource& src, const std::vector<std::size_t>& cuts,
                  const std::vector<std::size_t>& gaps, bool json_mode) {
  BratteliDiagram d = diagram_of(resolve_tree(src));
  if (gaps.empty() && d.eventually_periodic() && !cuts.empty()) {
    // no tail pattern: telescope the finite restriction up to the last cut
    BratteliDiagram finite;
    for (std::size_t i = 0; i < cuts.back(); ++i) finite.prefix.push_back(step_matrix(d, i));
    d = std::move(finite);
  }
  const BratteliDiagram t = telescope(d, cuts, gaps);
  if (json_mode)
    out << diagram_to_json(t).dump(2) << "\n";
  else
    print_diagram(out, t);
  return 0;
}

int element_report(std::ostream& out, const DimensionGroupPresentation& p,
                   const std::string& spec, bool json_mode) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw usage_error("--element expects \"LEVEL:c1,c2,...\" (colon required)");
  DimensionGroupElement el;
  try {
    el.level = static_cast<std::size_t>(strict_long(spec.substr(0, colon)));
  } catch (const std::exception&) {
    throw usage_error("--element: not a level: " + spec.substr(0, colon));
  }
  for (const auto& tok : split_on(spec.substr(colon + 1), ',')) {
    try {
      el.vector.emplace_back(tok);
    } catch (const std::runtime_error&) {
      throw usage_error("--element: not an integer: " + tok);
    }
  }
  const PositivityVerdict v = is_positive(p, el);
  std::string value, value_kind;
  try {
    const PFEmbedding emb = pf_embedding(p);
    if (emb.exact) {
      value = format_quad(pf_evaluate(emb, p, el));
      value_kind = "exact";
    } else {
      value = fmt_interval(pf_evaluate_interval(emb, p, el));
      value_kind = "interval";
    }
  } catch (const domain_error&) {
    // no Perron data; report positivity without a value
  }
  const char* status = v.status == Positivity::Positive      ? "yes"
                       : v.status == Positivity::NotPositive ? "no"
                                                             : "unknown";
  if (json_mode) {
    nlohmann::json j{{"level", el.level},
                     {"positive", status},
                     {"certificate", cert_name(v.certificate)}};
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& x : el.vector) coords.push_back(x.str());
    j["vector"] = std::move(coords);
    if (v.status == Positivity::Positive) j["witness_level"] = v.witness_level;
    if (v.status == Positivity::Unknown) j["bound"] = v.bound;
    if (!value.empty()) j["value"] = value;
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "element: (" << el.level << ", " << fmt_vec(el.vector) << ")\n";
  out << "positive: " << status << "\n";
  out << "certificate: " << cert_name(v.certificate) << "\n";
  if (v.status == Positivity::Positive) out << "witness level: " << v.witness_level << "\n";
  if (v.status == Positivity::Unknown) out << "bound: " << v.bound << "\n";
  if (!value.empty()) out << "value: " << value << "\n";
  return 0;
}

int run_dimgroup(std::ostream& out, const TreeSource& src, const std::string& element_spec,
                 bool json_mode) {
  const DimensionGroupPresentation p = make_presentation(diagram_of(resolve_tree(src)));
  if (!element_spec.empty()) return element_report(out, p, element_spec, json_mode);
  const std::size_t r = rank(p);
  bool have_embedding = false;
  PFEmbedding emb;
  std::string why;
  try {
    emb = pf_embedding(p);
    have_embedding = true;
  } catch (const domain_error& e) {
    why = e.what();
  }
  if (json_mode) {
    nlohmann::json j{{"rank", r}};
    if (!have_embedding) {
      j["perron"] = "unavailable";
      j["reason"] = why;
    } else {
      j["base_level"] = emb.base_level;
      j["period"] = emb.period;
      if (emb.exact) {
        j["perron"] = format_quad(emb.lambda);
        nlohmann::json ell = nlohmann::json::array();
        for (const auto& q : emb.ell) ell.push_back(format_quad(q));
        j["functional"] = std::move(ell);
        j["anchor"] = format_quad(emb.anchor);
        j["unit_image"] = format_quad(pf_evaluate(emb, p, order_unit()));
      } else {
        j["perron"] = fmt_interval(emb.lambda_iv);
        j["unit_image"] = fmt_interval(pf_evaluate_interval(emb, p, order_unit()));
      }
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "rank: " << r << "\n";
  if (!have_embedding) {
    out << "perron data: unavailable (" << why << ")\n";
    return 0;
  }
  out << "period matrix: " << fmt_mat(emb.period_matrix) << " from level " << emb.base_level
      << ", period " << emb.period << "\n";
  if (emb.exact) {
    std::vector<std::string> ell;
    ell.reserve(emb.ell.size());
    for (const auto& q : emb.ell) ell.push_back(format_quad(q));
    out << "perron value: " << format_quad(emb.lambda) << "\n";
    out << "perron functional: (" << join_with(ell, ", ") << ")\n";
    out << "anchor: " << format_quad(emb.anchor) << "\n";
    out << "unit image: " << format_quad(pf_evaluate(emb, p, order_unit())) << "\n";
  } else {
    out << "perron value: " << fmt_interval(emb.lambda_iv) << "\n";
    out << "unit image: " << fmt_interval(pf_evaluate_interval(emb, p, order_unit())) << "\n";
  }
  return 0;
}

int run_rigidity(std::ostream& out, const TreeSource& src, bool truncated, std::size_t levels,
                 bool json_mode) {
  TreeSystem t = resolve_tree(src);
  if (truncated) t = truncate(t, levels);
  const RigidityVerdict v = is_locally_rigid(t, truncated);
  if (json_mode) {
    nlohmann::json j;
    switch (v.status) {
      case RigidityStatus::NotLocallyRigid:
        j = {{"status", "NotLocallyRigid"},
             {"witness_path", v.witness_path},
             {"witness_level", v.witness_level},
             {"order", "infinite"}};
        break;
      case RigidityStatus::LocallyRigid:
        j = {{"status", "LocallyRigid"},
             {"epsilon", v.epsilon_level},
             {"order", isometry_group_order(t).order.str()}};
        break;
      case RigidityStatus::UnknownBeyondDepth:
        j = {{"status", "UnknownBeyondDepth"}, {"depth", v.depth}};
        break;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  switch (v.status) {
    case RigidityStatus::NotLocallyRigid:
      out << "status: NotLocallyRigid\n";
      out << "witness path: [" << fmt_int_list(v.witness_path) << "]\n";
      out << "witness level: " << v.witness_level << "\n";
      out << "isometry group order: infinite\n";
      break;
    case RigidityStatus::LocallyRigid:
      out << "status: LocallyRigid\n";
      out << "epsilon: e^-" << v.epsilon_level << "\n";
      out << "isometry group order: " << isometry_group_order(t).order.str() << "\n";
      break;
    case RigidityStatus::UnknownBeyondDepth:
      out << "status: UnknownBeyondDepth\n";
      out << "depth: " << v.depth << "\n";
      break;
  }
  return 0;
}

int run_germs(std::ostream& out, const TreeSource& src, bool level_given, std::size_t level,
              const std::string& kappa, const std::string& g1, const std::string& g2,
              bool json_mode) {
  const GermContext ctx = make_germ_context(resolve_tree(src));
  if (!kappa.empty()) {
    auto [sv, tv] = parse_germ_spec(kappa, "--kappa");
    const PathPair pp = kappa_star(ctx, make_germ(ctx, std::move(sv), std::move(tv)));
    if (json_mode) {
      auto path_json = [](const DiagramPath& path) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : path)
          arr.push_back({{"from", e.from_class}, {"to", e.to_class}, {"occurrence", e.occurrence}});
        return arr;
      };
      out << nlohmann::json{{"p", path_json(pp.p)}, {"q", path_json(pp.q)}}.dump(2) << "\n";
    } else {
      out << "p: " << fmt_path(pp.p) << "\nq: " << fmt_path(pp.q) << "\n";
    }
    return 0;
  }
  if (!g1.empty() || !g2.empty()) {
    if (g1.empty() || g2.empty()) throw usage_error("--g1 and --g2 go together");
    auto [s1, t1] = parse_germ_spec(g1, "--g1");
    auto [s2, t2] = parse_germ_spec(g2, "--g2");
    const Germ first = make_germ(ctx, std::move(s1), std::move(t1));
    const Germ second = make_germ(ctx, std::move(s2), std::move(t2));
    const Germ composed = compose(ctx, second, first);
    if (json_mode)
      out << nlohmann::json{{"source", composed.source.positions},
                            {"target", composed.target.positions}}
                 .dump(2)
          << "\n";
    else
      out << "composed: " << fmt_vertex(composed.source) << " -> " << fmt_vertex(composed.target)
          << "\n";
    return 0;
  }
  if (!level_given) throw usage_error("germs needs one of --level, --kappa, or --g1/--g2");
  const std::vector<Germ> germs = enumerate_germs(ctx, level);
  if (json_mode) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : germs)
      arr.push_back({{"source", g.source.positions}, {"target", g.target.positions}});
    out << nlohmann::json{{"level", level}, {"germs", std::move(arr)}}.dump(2) << "\n";
  } else {
    out << "germs at level " << level << ": " << germs.size() << "\n";
    for (const auto& g : germs)
      out << fmt_vertex(g.source) << " -> " << fmt_vertex(g.target) << "\n";
  }
  return 0;
}

int run_tailer(std::ostream& out, const TreeSource& src, const std::string& xs,
               const std::string& ys, bool want_witness, bool json_mode) {
  const TreeSystem t = resolve_tree(src);
  const EndPoint x = parse_endpoint(xs, "--x");
  const EndPoint y = parse_endpoint(ys, "--y");
  const auto merged = tail_equivalent(t, x, y);
  if (json_mode) {
    nlohmann::json j{{"equivalent", merged.has_value()}};
    if (merged) j["merge_level"] = *merged;
    if (want_witness) {
      const BallIsometryWitness w = isometry_witness(t, x, y);
      j["witness_level"] = w.level;
      j["witness_source"] = w.source.positions;
      j["witness_target"] = w.target.positions;
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  if (!merged) {
    out << "tail equivalent: no\n";
    if (want_witness) isometry_witness(t, x, y);  // explains why none exists
    return 0;
  }
  out << "tail equivalent: yes\nmerge level: " << *merged << "\n";
  if (want_witness) {
    const BallIsometryWitness w = isometry_witness(t, x, y);
    out << "witness level: " << w.level << "\nwitness: " << fmt_vertex(w.source) << " -> "
        << fmt_vertex(w.target) << "\n";
  }
  return 0;
}

PrefixMap resolve_map(const std::string& spec) {
  if (spec.empty()) throw usage_error("--map is required for this mode");
  if (spec == "x0") return thompson_x0();
  if (spec == "x1") return thompson_x1();
  if (spec == "c") return thompson_c();
  if (spec == "pi0") return thompson_pi0();
  return prefix_map_from_json(parse_json_text(read_text_file(spec), spec));
}

int run_thompson(std::ostream& out, bool do_classify, bool do_rho, bool do_compose, bool do_verify,
                 const std::string& map_spec, const std::string& with_spec, std::uint64_t seed,
                 int n, std::size_t depth, bool json_mode) {
  if (do_classify) {
    const ThompsonClass c = classify(resolve_map(map_spec));
    const char* name = c == ThompsonClass::F ? "F" : c == ThompsonClass::T ? "T" : "V";
    if (json_mode)
      out << nlohmann::json{{"class", name}}.dump(2) << "\n";
    else
      out << "class: " << name << "\n";
    return 0;
  }
  if (do_rho) {
    const CuntzAlgebraElement r = rho(resolve_map(map_spec));
    if (json_mode)
      out << nlohmann::json{{"rho", format_element(r)}}.dump(2) << "\n";
    else
      out << format_element(r) << "\n";
    return 0;
  }
  if (do_compose) {
    if (with_spec.empty()) throw usage_error("--compose needs --with");
    const PrefixMap gh = compose(resolve_map(map_spec), resolve_map(with_spec));
    if (json_mode) {
      out << prefix_map_to_json(gh).dump(2) << "\n";
    } else {
      for (const auto& [u, v] : gh.pairs) out << u << " -> " << v << "\n";
    }
    return 0;
  }
  if (!do_verify) throw usage_error("thompson needs a mode");
  std::mt19937_64 gen(seed);
  const int total = 100;
  int passed = 0;
  for (int round = 0; round < total; ++round) {
    const PrefixMap g = random_prefix_map(gen, n, depth);
    const PrefixMap h = random_prefix_map(gen, n, depth);
    if (verify_representation(g, h).ok()) ++passed;
  }
  if (json_mode)
    out << nlohmann::json{{"passed", passed}, {"total", total}}.dump(2) << "\n";
  else
    out << passed << "/" << total << " representation checks passed\n";
  return passed == total ? 0 : 1;
}

int run_dendrogram(std::ostream& out, const std::string& space_file, bool json_mode) {
  const FiniteUltrametricSpace s =
      space_from_json(parse_json_text(read_text_file(space_file), space_file));
  const Dendrogram den = dendrogram(s);
  if (json_mode) {
    out << dendrogram_to_json(den, s.points).dump(2) << "\n";
    return 0;
  }
  out << "thresholds:";
  for (const auto& t : den.thresholds) out << " " << format_rational(t);
  out << "\n";
  for (std::size_t i = 0; i < den.blocks.size(); ++i) {
    out << "blocks[" << i << "]:";
    for (const auto& block : den.blocks[i]) {
      std::vector<std::string> names;
      names.reserve(block.size());
      for (std::size_t pt : block) names.push_back(s.points.at(pt));
      out << " {" << join_with(names, ",") << "}";
    }
    out << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computations on self-similar trees and their end spaces"};
  app.name("endspace");
  app.require_subcommand(1);

  // validate
  auto* cmd_validate = app.add_subcommand("validate", "check a tree system's level structure");
  TreeSource validate_src;
  add_tree_source(cmd_validate, validate_src);
  bool validate_json = false;
  cmd_validate->add_flag("--json", validate_json, "emit JSON");

  // profile
  auto* cmd_profile = app.add_subcommand("profile", "vertex counts per level");
  TreeSource profile_src;
  add_tree_source(cmd_profile, profile_src);
  std::size_t profile_levels = 5;
  cmd_profile->add_option("--levels", profile_levels, "deepest level to count");
  bool profile_json = false;
  cmd_profile->add_flag("--json", profile_json, "emit JSON");

  // bratteli
  auto* cmd_bratteli = app.add_subcommand("bratteli", "incidence matrices of the collapsed tree");
  TreeSource bratteli_src;
  add_tree_source(cmd_bratteli, bratteli_src);
  bool bratteli_dot = false;
  std::size_t bratteli_levels = 3;
  std::string bratteli_out;
  bool bratteli_json = false;
  cmd_bratteli->add_flag("--dot", bratteli_dot, "render DOT instead of matrices");
  cmd_bratteli->add_option("--levels", bratteli_levels, "deepest level in the DOT rendering");
  cmd_bratteli->add_option("--out", bratteli_out, "write the report to a file");
  cmd_bratteli->add_flag("--json", bratteli_json, "emit JSON");

  // telescope
  auto* cmd_telescope = app.add_subcommand("telescope", "contract the diagram along cut levels");
  TreeSource telescope_src;
  add_tree_source(cmd_telescope, telescope_src);
  std::vector<std::size_t> telescope_cuts, telescope_gaps;
  cmd_telescope->add_option("--cuts", telescope_cuts, "cut levels, e.g. 0,2")
      ->delimiter(',')
      ->required();
  cmd_telescope->add_option("--gaps", telescope_gaps, "repeating tail gaps, e.g. 2")
      ->delimiter(',');
  bool telescope_json = false;
  cmd_telescope->add_flag("--json", telescope_json, "emit JSON");

  // dimgroup
  auto* cmd_dimgroup = app.add_subcommand("dimgroup", "dimension group report");
  TreeSource dimgroup_src;
  add_tree_source(cmd_dimgroup, dimgroup_src);
  std::string dimgroup_element;
  cmd_dimgroup->add_option("--element", dimgroup_element,
                           "positivity of \"LEVEL:c1,c2,...\" instead of the group report");
  bool dimgroup_json = false;
  cmd_dimgroup->add_flag("--json", dimgroup_json, "emit JSON");

  // rigidity
  auto* cmd_rigidity = app.add_subcommand("rigidity", "local rigidity of the end space");
  TreeSource rigidity_src;
  add_tree_source(cmd_rigidity, rigidity_src);
  bool rigidity_truncated = false;
  std::size_t rigidity_levels = 4;
  cmd_rigidity->add_flag("--truncated", rigidity_truncated,
                         "treat a finite truncation as an unknown deeper tree");
  cmd_rigidity->add_option("--levels", rigidity_levels, "truncation depth for --truncated");
  bool rigidity_json = false;
  cmd_rigidity->add_flag("--json", rigidity_json, "emit JSON");

  // germs
  auto* cmd_germs = app.add_subcommand("germs", "germ calculus on a locally rigid end space");
  TreeSource germs_src;
  add_tree_source(cmd_germs, germs_src);
  std::size_t germs_level = 0;
  auto* germs_level_opt =
      cmd_germs->add_option("--level", germs_level, "list all germs at this level");
  std::string germs_kappa, germs_g1, germs_g2;
  cmd_germs->add_option("--kappa", germs_kappa, "path pair of the germ \"src>tgt\"");
  cmd_germs->add_option("--g1", germs_g1, "first germ \"src>tgt\" to compose");
  cmd_germs->add_option("--g2", germs_g2, "second germ \"src>tgt\" to compose");
  bool germs_json = false;
  cmd_germs->add_flag("--json", germs_json, "emit JSON");

  // tailer
  auto* cmd_tailer = app.add_subcommand("tailer", "tail equivalence of two endpoints");
  TreeSource tailer_src;
  add_tree_source(cmd_tailer, tailer_src);
  std::string tailer_x, tailer_y;
  cmd_tailer->add_option("--x", tailer_x, "endpoint \"pre:cyc\"")->required();
  cmd_tailer->add_option("--y", tailer_y, "endpoint \"pre:cyc\"")->required();
  bool tailer_witness = false;
  cmd_tailer->add_flag("--witness", tailer_witness, "also produce the prefix-swap ball isometry");
  bool tailer_json = false;
  cmd_tailer->add_flag("--json", tailer_json, "emit JSON");

  // thompson
  auto* cmd_thompson = app.add_subcommand("thompson", "prefix-map groups and their representation");
  bool th_classify = false, th_rho = false, th_compose = false, th_verify = false;
  auto* th_modes = cmd_thompson->add_option_group("mode", "exactly one action");
  th_modes->add_flag("--classify", th_classify, "classify the map into F, T, or V");
  th_modes->add_flag("--rho", th_rho, "Cuntz-term image of the map");
  th_modes->add_flag("--compose", th_compose, "compose --map after --with");
  th_modes->add_flag("--verify", th_verify, "run 100 random representation checks");
  th_modes->require_option(1);
  std::string th_map, th_with;
  cmd_thompson->add_option("--map", th_map, "stock name (x0, x1, c, pi0) or JSON file");
  cmd_thompson->add_option("--with", th_with, "second map for --compose");
  std::uint64_t th_seed = 1;
  int th_n = 2;
  std::size_t th_depth = 3;
  cmd_thompson->add_option("--seed", th_seed, "seed for --verify");
  cmd_thompson->add_option("--n", th_n, "alphabet size for --verify");
  cmd_thompson->add_option("--depth", th_depth, "code depth for --verify");
  bool th_json = false;
  cmd_thompson->add_flag("--json", th_json, "emit JSON");

  // dendrogram
  auto* cmd_dendrogram =
      app.add_subcommand("dendrogram", "closed-ball hierarchy of an ultrametric space");
  std::string dendro_space;
  cmd_dendrogram->add_option("--space", dendro_space, "ultrametric space JSON file")->required();
  bool dendro_json = false;
  cmd_dendrogram->add_flag("--json", dendro_json, "emit JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_validate->parsed()) return run_validate(out, validate_src, validate_json);
    if (cmd_profile->parsed()) return run_profile(out, profile_src, profile_levels, profile_json);
    if (cmd_bratteli->parsed())
      return run_bratteli(out, bratteli_src, bratteli_dot, bratteli_levels, bratteli_out,
                          bratteli_json);
    if (cmd_telescope->parsed())
      return run_telescope(out, telescope_src, telescope_cuts, telescope_gaps, telescope_json);
    if (cmd_dimgroup->parsed())
      return run_dimgroup(out, dimgroup_src, dimgroup_element, dimgroup_json);
    if (cmd_rigidity->parsed())
      return run_rigidity(out, rigidity_src, rigidity_truncated, rigidity_levels, rigidity_json);
    if (cmd_germs->parsed())
      return run_germs(out, germs_src, germs_level_opt->count() > 0, germs_level, germs_kappa,
                       germs_g1, germs_g2, germs_json);
    if (cmd_tailer->parsed())
      return run_tailer(out, tailer_src, tailer_x, tailer_y, tailer_witness, tailer_json);
    if (cmd_thompson->parsed())
      return run_thompson(out, th_classify, th_rho, th_compose, th_verify, th_map, th_with,
                          th_seed, th_n, th_depth, th_json);
    if (cmd_dendrogram->parsed()) return run_dendrogram(out, dendro_space, dendro_json);
  } catch (const usage_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace endspace
