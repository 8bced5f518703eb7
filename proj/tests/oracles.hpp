#pragma once
// Independent reference implementations used only by tests. Everything
// here works by explicit unfolding / exhaustive enumeration so that the
// library's partition-refinement, matrix, and germ algorithms are checked
// against a second, dumber computation path.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "endspace/linalg.hpp"
#include "endspace/numbers.hpp"
#include "endspace/thompson.hpp"
#include "endspace/tree_system.hpp"
#include "endspace/ultrametric.hpp"

namespace oracle {

using endspace::FiniteUltrametricSpace;
using endspace::Int;
using endspace::Mat;
using endspace::Rat;
using endspace::TreeSystem;
using endspace::Vertex;

// ---- explicit finite trees ----

struct FiniteTree {
  std::vector<FiniteTree> children;
};

// Unfold the subtree of `ts` below a vertex of class `cls` at `level`,
// down to `depth` further levels, by direct descriptor lookup.
inline FiniteTree unfold(const TreeSystem& ts, std::size_t level, int cls, std::size_t depth) {
  FiniteTree t;
  if (depth == 0) return t;
  if (!ts.eventually_periodic() && level + 1 >= ts.num_levels()) return t;
  const auto& desc = endspace::level_desc(ts, level);
  for (int child : desc.classes.at(static_cast<std::size_t>(cls)).children)
    t.children.push_back(unfold(ts, level + 1, child, depth - 1));
  return t;
}

inline FiniteTree unfold_at(const TreeSystem& ts, const Vertex& v, std::size_t depth) {
  return unfold(ts, v.level(), endspace::class_at(ts, v.positions), depth);
}

// Canonical form under unordered (rooted-isometry) comparison.
inline std::string canon(const FiniteTree& t) {
  std::vector<std::string> parts;
  parts.reserve(t.children.size());
  for (const auto& c : t.children) parts.push_back(canon(c));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (const auto& p : parts) s += p;
  s += ")";
  return s;
}

// Canonical form with child order kept (position-tree equality).
inline std::string ordered_canon(const FiniteTree& t) {
  std::string s = "(";
  for (const auto& c : t.children) s += ordered_canon(c);
  s += ")";
  return s;
}

// Number of rooted isometries a -> b by explicit enumeration of child
// bijections. Only suitable when the count is small (locally rigid
// subtrees); see count_automorphisms for the closed-form variant.
inline Int count_isometries_enum(const FiniteTree& a, const FiniteTree& b) {
  if (a.children.size() != b.children.size()) return 0;
  const std::size_t n = a.children.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int total = 0;
  do {
    Int ways = 1;
    for (std::size_t i = 0; i < n && ways != 0; ++i)
      ways *= count_isometries_enum(a.children[i], b.children[perm[i]]);
    total += ways;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// |Aut| of a rooted finite tree: group children by canonical form; each
// group of m isomorphic subtrees contributes m! * prod(aut(child)).
inline Int count_automorphisms(const FiniteTree& t) {
  std::map<std::string, std::pair<Int, Int>> groups;  // canon -> (count, aut product)
  for (const auto& c : t.children) {
    auto& g = groups[canon(c)];
    if (g.first == 0) g.second = 1;
    g.first += 1;
    g.second *= count_automorphisms(c);
  }
  Int total = 1;
  for (const auto& [key, g] : groups) {
    (void)key;
    Int fact = 1;
    for (Int i = 2; i <= g.first; ++i) fact *= i;
    total *= fact * g.second;
  }
  return total;
}

// Canonical form of a depth-limited unfolding with the boundary vertices
// marked by their bisimulation color. A bare truncation makes distinct
// classes look alike once their subtrees are cut off, creating boundary
// swaps that no isometry of the full end space performs; marking the
// boundary keeps exactly the symmetries that extend to the infinite tree.
inline std::string canon_marked(const TreeSystem& ts, const std::vector<std::vector<int>>& colors,
                                std::size_t level, int cls, std::size_t depth) {
  if (depth == 0) {
    const std::size_t slot = endspace::slot_of_level(ts, level);
    return "[" + std::to_string(colors[slot][static_cast<std::size_t>(cls)]) + "]";
  }
  std::vector<std::string> parts;
  const auto& children =
      endspace::level_desc(ts, level).classes.at(static_cast<std::size_t>(cls)).children;
  parts.reserve(children.size());
  for (int child : children) parts.push_back(canon_marked(ts, colors, level + 1, child, depth - 1));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (const auto& p : parts) s += p;
  s += ")";
  return s;
}

inline Int count_marked_automorphisms(const TreeSystem& ts,
                                      const std::vector<std::vector<int>>& colors,
                                      std::size_t level, int cls, std::size_t depth) {
  if (depth == 0) return 1;
  std::map<std::string, std::pair<Int, Int>> groups;  // canon -> (count, aut product)
  for (int child :
       endspace::level_desc(ts, level).classes.at(static_cast<std::size_t>(cls)).children) {
    auto& g = groups[canon_marked(ts, colors, level + 1, child, depth - 1)];
    if (g.first == 0) g.second = 1;
    g.first += 1;
    g.second *= count_marked_automorphisms(ts, colors, level + 1, child, depth - 1);
  }
  Int total = 1;
  for (const auto& [key, g] : groups) {
    (void)key;
    Int fact = 1;
    for (Int i = 2; i <= g.first; ++i) fact *= i;
    total *= fact * g.second;
  }
  return total;
}

// |Isom(end space)| by brute counting on a finite unfolding: symmetries of
// the depth-limited tree whose boundary classes match. Stable in depth
// once every duplication level is inside the unfolding.
inline Int count_end_isometries(const TreeSystem& ts, std::size_t depth) {
  const auto col = endspace::collapse(ts);
  return count_marked_automorphisms(ts, col.colors, 0, 0, depth);
}

// Rooted isometries between two depth-limited subtree unfoldings whose
// boundary colors agree, by explicit enumeration of child bijections --
// the matchings that extend to the infinite subtrees (and so to ball
// isometries of the end space).
inline Int count_ball_isometries_rec(const TreeSystem& ts,
                                     const std::vector<std::vector<int>>& colors, std::size_t la,
                                     int ca, std::size_t lb, int cb, std::size_t depth) {
  if (depth == 0) {
    const int col_a = colors[endspace::slot_of_level(ts, la)][static_cast<std::size_t>(ca)];
    const int col_b = colors[endspace::slot_of_level(ts, lb)][static_cast<std::size_t>(cb)];
    return col_a == col_b ? 1 : 0;
  }
  const auto& kids_a = endspace::level_desc(ts, la).classes.at(static_cast<std::size_t>(ca)).children;
  const auto& kids_b = endspace::level_desc(ts, lb).classes.at(static_cast<std::size_t>(cb)).children;
  if (kids_a.size() != kids_b.size()) return 0;
  const std::size_t n = kids_a.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int total = 0;
  do {
    Int ways = 1;
    for (std::size_t i = 0; i < n && ways != 0; ++i)
      ways *= count_ball_isometries_rec(ts, colors, la + 1, kids_a[i], lb + 1, kids_b[perm[i]],
                                        depth - 1);
    total += ways;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Int count_ball_isometries(const TreeSystem& ts, const std::vector<std::vector<int>>& colors,
                                 const Vertex& a, const Vertex& b, std::size_t depth) {
  return count_ball_isometries_rec(ts, colors, a.level(), endspace::class_at(ts, a.positions),
                                   b.level(), endspace::class_at(ts, b.positions), depth);
}

// All downward position paths of the given length from a vertex.
inline void collect_paths(const TreeSystem& ts, std::size_t level, int cls, std::size_t depth,
                          std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (depth == 0) {
    out.push_back(cur);
    return;
  }
  const auto& children = endspace::level_desc(ts, level).classes.at(static_cast<std::size_t>(cls)).children;
  for (std::size_t pos = 0; pos < children.size(); ++pos) {
    cur.push_back(static_cast<int>(pos));
    collect_paths(ts, level + 1, children[pos], depth - 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> leaf_paths(const TreeSystem& ts, const Vertex& v,
                                                std::size_t depth) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  collect_paths(ts, v.level(), endspace::class_at(ts, v.positions), depth, cur, out);
  return out;
}

// |V_level| by explicit path enumeration (only for small levels).
inline Int count_vertices(const TreeSystem& ts, std::size_t level) {
  return Int(leaf_paths(ts, Vertex{}, level).size());
}

// Directed top-to-(level,class) path counts in a Bratteli diagram by
// explicit edge recursion, independent of matrix products.
inline std::vector<Int> count_diagram_paths(const endspace::BratteliDiagram& d,
                                            std::size_t level) {
  std::vector<Int> cur{1};
  for (std::size_t i = 0; i < level; ++i) {
    const Mat& a = endspace::step_matrix(d, i);
    std::vector<Int> next(endspace::rows(a), 0);
    for (std::size_t k = 0; k < endspace::rows(a); ++k)
      for (std::size_t l = 0; l < endspace::cols(a); ++l)
        for (Int e = 0; e < a[k][l]; ++e) next[k] += cur[l];  // one step per parallel edge
    cur = std::move(next);
  }
  return cur;
}

// ---- random ultrametric spaces ----

// Random nested partition with globally decreasing per-level thresholds;
// ultrametric by construction. Deterministic for a given generator state.
inline void random_partition(std::mt19937_64& gen, const std::vector<std::size_t>& members,
                             std::size_t level, const std::vector<Rat>& levels,
                             std::vector<std::vector<Rat>>& dist) {
  if (members.size() <= 1) return;
  std::vector<std::size_t> shuffled = members;
  for (std::size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[gen() % i]);
  // split into k >= 2 blocks unless the threshold list is exhausted
  std::size_t k = 2 + gen() % (shuffled.size() > 2 ? shuffled.size() - 1 : 1);
  if (k > shuffled.size()) k = shuffled.size();
  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t i = 0; i < shuffled.size(); ++i)
    blocks[i < k ? i : gen() % k].push_back(shuffled[i]);
  for (const auto& b1 : blocks)
    for (const auto& b2 : blocks)
      if (&b1 != &b2)
        for (auto p : b1)
          for (auto q : b2) dist[p][q] = levels[level];
  for (const auto& b : blocks)
    if (level + 1 < levels.size())
      random_partition(gen, b, level + 1, levels, dist);
    else
      for (auto p : b)
        for (auto q : b)
          if (p != q) dist[p][q] = levels[level];  // flat tail keeps it ultrametric
}

inline FiniteUltrametricSpace random_space(std::mt19937_64& gen, std::size_t n) {
  FiniteUltrametricSpace s;
  for (std::size_t i = 0; i < n; ++i) s.points.push_back("p" + std::to_string(i));
  s.dist.assign(n, std::vector<Rat>(n, 0));
  std::vector<Rat> levels;
  for (std::size_t i = 0; i < n; ++i) levels.emplace_back(Rat(n + 1 - i, n + 1 + i));
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  random_partition(gen, all, 0, levels, s.dist);
  return s;
}

// All distance-preserving permutations by exhaustive search (n <= 8).
inline std::vector<std::vector<std::size_t>> brute_isometries(const FiniteUltrametricSpace& s) {
  const std::size_t n = s.points.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        ok = s.dist[perm[i]][perm[j]] == s.dist[i][j];
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

// ---- random tree systems and endpoints ----

// Random eventually periodic system, valid by construction (every class
// keeps >= 1 child, indices drawn within the next level, root size 1).
inline TreeSystem random_tree_system(std::mt19937_64& gen, std::size_t max_prefix = 2,
                                     std::size_t max_cycle = 2, std::size_t max_classes = 3,
                                     std::size_t max_children = 3) {
  const std::size_t p = gen() % (max_prefix + 1);
  const std::size_t c = 1 + gen() % max_cycle;
  std::vector<std::size_t> sizes(p + c);
  for (std::size_t i = 0; i < p + c; ++i) sizes[i] = i == 0 ? 1 : 1 + gen() % max_classes;
  TreeSystem t;
  for (std::size_t i = 0; i < p + c; ++i) {
    // children of slot i point into slot i+1, wrapping into the cycle
    const std::size_t next = i + 1 < p + c ? sizes[i + 1] : sizes[p];
    endspace::LevelDesc lvl;
    for (std::size_t cl = 0; cl < sizes[i]; ++cl) {
      endspace::ClassDesc cd;
      const std::size_t deg = 1 + gen() % max_children;
      for (std::size_t j = 0; j < deg; ++j)
        cd.children.push_back(static_cast<int>(gen() % next));
      lvl.classes.push_back(std::move(cd));
    }
    (i < p ? t.prefix : t.cycle).push_back(std::move(lvl));
  }
  return t;
}

// Random legal eventually periodic endpoint: walk random positions until
// the (slot, class) state recurs at the same cycle phase; the loop
// becomes the cyc part.
inline endspace::EndPoint random_endpoint(std::mt19937_64& gen, const TreeSystem& ts,
                                          std::size_t min_pre = 0) {
  const std::size_t p = ts.prefix.size(), c = ts.cycle.size();
  std::vector<int> walk;
  std::vector<int> classes{0};  // class at each level along the walk
  auto step = [&](std::size_t level) {
    const auto& ch =
        endspace::level_desc(ts, level).classes[static_cast<std::size_t>(classes.back())].children;
    const std::size_t pos = gen() % ch.size();
    walk.push_back(static_cast<int>(pos));
    classes.push_back(ch[pos]);
  };
  for (std::size_t i = 0; i < std::max(min_pre, p); ++i) step(i);
  // states keyed by (phase within cycle, class); first repeat closes the loop
  std::map<std::pair<std::size_t, int>, std::size_t> seen;  // state -> level
  for (std::size_t level = walk.size();; ++level) {
    const auto key = std::make_pair((level - p) % c, classes.back());
    auto [it, fresh] = seen.emplace(key, level);
    if (!fresh) {
      const std::size_t start = it->second;
      endspace::EndPoint x;
      x.pre.assign(walk.begin(), walk.begin() + static_cast<long>(start));
      x.cyc.assign(walk.begin() + static_cast<long>(start), walk.end());
      return x;
    }
    step(level);
  }
}

// ---- prefix-map action on plain words ----

// Apply g to a finite word long enough to contain a full domain prefix.
inline std::string apply_word(const endspace::PrefixMap& g, const std::string& word) {
  for (const auto& [u, v] : g.pairs)
    if (word.size() >= u.size() && word.compare(0, u.size(), u) == 0)
      return v + word.substr(u.size());
  throw endspace::domain_error("oracle: word shorter than every domain prefix");
}

// Expand an eventually periodic endpoint into its first `len` digits.
inline std::string expand_endpoint(const endspace::EndPoint& x, std::size_t len) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i)
    s += static_cast<char>('0' + endspace::position_at(x, i));
  return s;
}

}  // namespace oracle
