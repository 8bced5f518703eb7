#include "endspace/tree_system.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace endspace {

std::size_t num_slots(const TreeSystem& t) { return t.prefix.size() + t.cycle.size(); }

std::size_t slot_of_level(const TreeSystem& t, std::size_t level) {
  std::size_t p = t.prefix.size();
  if (level < p) return level;
  if (t.cycle.empty()) throw domain_error("level beyond explicit tree depth");
  return p + (level - p) % t.cycle.size();
}

std::size_t slot_successor(const TreeSystem& t, std::size_t slot) {
  std::size_t p = t.prefix.size(), s = num_slots(t);
  if (slot + 1 > s) throw domain_error("slot out of range");
  if (slot + 1 < s) return slot + 1;
  if (t.cycle.empty()) throw domain_error("last level of an explicit tree has no successor");
  return p;  // wrap to the cycle start
}

const LevelDesc& slot_desc(const TreeSystem& t, std::size_t slot) {
  std::size_t p = t.prefix.size();
  if (slot < p) return t.prefix[slot];
  if (slot < p + t.cycle.size()) return t.cycle[slot - p];
  throw domain_error("slot out of range");
}

const LevelDesc& level_desc(const TreeSystem& t, std::size_t level) {
  return slot_desc(t, slot_of_level(t, level));
}

ValidationReport validate(const TreeSystem& t) {
  ValidationReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  if (t.prefix.empty() && t.cycle.empty()) {
    fail("tree has no levels");
    return rep;
  }
  if (slot_desc(t, 0).classes.size() != 1) fail("level 0 must have exactly one class");
  std::size_t s = num_slots(t);
  bool ep = t.eventually_periodic();
  for (std::size_t slot = 0; slot < s; ++slot) {
    const LevelDesc& ld = slot_desc(t, slot);
    if (ld.classes.empty()) {
      fail("level " + std::to_string(slot) + " has no classes");
      continue;
    }
    bool last_explicit = !ep && slot + 1 == s;
    std::size_t next_count =
        last_explicit ? 0 : slot_desc(t, slot_successor(t, slot)).classes.size();
    for (std::size_t k = 0; k < ld.classes.size(); ++k) {
      const ClassDesc& c = ld.classes[k];
      std::string where = "level " + std::to_string(slot) + " class " + std::to_string(k);
      if (last_explicit) {
        if (!c.children.empty())
          fail(where + ": last level of an explicit tree must be childless");
        continue;
      }
      if (c.children.empty())
        fail(where + ": childless (geodesic completeness fails)");
      for (int ch : c.children)
        if (ch < 0 || static_cast<std::size_t>(ch) >= next_count)
          fail(where + ": child index " + std::to_string(ch) + " out of range");
    }
  }
  return rep;
}

void require_valid(const TreeSystem& t) {
  ValidationReport rep = validate(t);
  if (!rep.ok) throw domain_error(rep.violations.front());
}

int class_at(const TreeSystem& t, const std::vector<int>& positions) {
  int cls = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const LevelDesc& ld = level_desc(t, i);
    if (cls < 0 || static_cast<std::size_t>(cls) >= ld.classes.size())
      throw domain_error("class index out of range while walking positions");
    const std::vector<int>& ch = ld.classes[cls].children;
    int p = positions[i];
    if (p < 0 || static_cast<std::size_t>(p) >= ch.size())
      throw domain_error("position out of range at level " + std::to_string(i));
    cls = ch[p];
  }
  return cls;
}

Vec class_vertex_counts(const TreeSystem& t, std::size_t level) {
  Vec counts(level_desc(t, 0).classes.size(), 0);
  counts[0] = 1;
  for (std::size_t i = 0; i < level; ++i) {
    const LevelDesc& ld = level_desc(t, i);
    Vec next(level_desc(t, i + 1).classes.size(), 0);
    for (std::size_t k = 0; k < ld.classes.size(); ++k) {
      if (counts[k] == 0) continue;
      for (int ch : ld.classes[k].children) next[ch] += counts[k];
    }
    counts = std::move(next);
  }
  return counts;
}

std::vector<Int> level_profile(const TreeSystem& t, std::size_t max_level) {
  std::vector<Int> out;
  Vec counts(level_desc(t, 0).classes.size(), 0);
  counts[0] = 1;
  for (std::size_t i = 0;; ++i) {
    Int total = 0;
    for (const Int& c : counts) total += c;
    out.push_back(total);
    if (i == max_level) break;
    if (!t.eventually_periodic() && i + 1 >= t.num_levels()) {
      // an explicit tree simply stops: deeper levels are empty
      out.insert(out.end(), max_level - i, Int(0));
      break;
    }
    const LevelDesc& ld = level_desc(t, i);
    Vec next(level_desc(t, i + 1).classes.size(), 0);
    for (std::size_t k = 0; k < ld.classes.size(); ++k) {
      if (counts[k] == 0) continue;
      for (int ch : ld.classes[k].children) next[ch] += counts[k];
    }
    counts = std::move(next);
  }
  return out;
}

TreeSystem truncate(const TreeSystem& t, std::size_t depth) {
  if (!t.eventually_periodic() && depth >= t.num_levels())
    throw domain_error("truncation depth beyond explicit tree");
  TreeSystem out;
  for (std::size_t i = 0; i <= depth; ++i) out.prefix.push_back(level_desc(t, i));
  for (ClassDesc& c : out.prefix.back().classes) c.children.clear();
  return out;
}

static LevelDesc uniform_level(std::size_t classes, const std::vector<int>& children) {
  LevelDesc ld;
  ld.classes.assign(classes, ClassDesc{children});
  return ld;
}

TreeSystem cantor_tree() { return TreeSystem{{}, {uniform_level(1, {0, 0})}}; }

TreeSystem fibonacci_tree() {
  TreeSystem t;
  t.prefix = {LevelDesc{{ClassDesc{{0, 1}}}}};
  t.cycle = {LevelDesc{{ClassDesc{{0, 1}}, ClassDesc{{0}}}}};
  return t;
}

TreeSystem sturmian_tree() {
  TreeSystem t;
  t.prefix = {LevelDesc{{ClassDesc{{0, 1}}}}};
  t.cycle = {LevelDesc{{ClassDesc{{0, 1}}, ClassDesc{{1}}}}};
  return t;
}

TreeSystem regular_tree(int n) {
  if (n < 1) throw domain_error("regular tree needs branching >= 1");
  return TreeSystem{{uniform_level(1, std::vector<int>(n + 1, 0))},
                    {uniform_level(1, std::vector<int>(n, 0))}};
}

TreeSystem ary_tree(int n) {
  if (n < 1) throw domain_error("ary tree needs branching >= 1");
  return TreeSystem{{}, {uniform_level(1, std::vector<int>(n, 0))}};
}

TreeSystem ended_tree(int n) {
  if (n < 1) throw domain_error("ended tree needs at least one end");
  return TreeSystem{{uniform_level(1, std::vector<int>(n, 0))}, {uniform_level(1, {0})}};
}

TreeSystem from_sft(const std::vector<std::vector<int>>& m) {
  std::size_t n = m.size();
  if (n == 0) throw domain_error("empty transition matrix");
  LevelDesc root, body;
  std::vector<int> symbols(n);
  for (std::size_t i = 0; i < n; ++i) symbols[i] = static_cast<int>(i);
  root.classes = {ClassDesc{symbols}};
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw domain_error("transition matrix must be square");
    ClassDesc c;
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] != 0 && m[i][j] != 1)
        throw domain_error("transition matrix entries must be 0 or 1");
      if (m[i][j] == 1) c.children.push_back(static_cast<int>(j));
    }
    if (c.children.empty())
      throw domain_error("transition matrix row " + std::to_string(i) + " has no successors");
    body.classes.push_back(std::move(c));
  }
  return TreeSystem{{root}, {body}};
}

TreeSystem from_cfrac(const std::vector<Int>& prefix_coeffs, const std::vector<Int>& raw_cycle) {
  if (prefix_coeffs.empty() && raw_cycle.empty())
    throw domain_error("continued fraction needs at least one partial quotient");
  // an empty repeating part means a tail of ones (golden-mean continuation)
  std::vector<Int> cycle_coeffs = raw_cycle.empty() ? std::vector<Int>{1} : raw_cycle;
  for (const Int& a : cycle_coeffs)
    if (a < 1) throw domain_error("repeating partial quotients must be >= 1");
  for (std::size_t i = 0; i < prefix_coeffs.size(); ++i)
    if (prefix_coeffs[i] < (i == 0 ? 0 : 1))
      throw domain_error("partial quotients past the first must be >= 1");
  auto small = [](const Int& a) {
    if (a > 1000000) throw domain_error("partial quotient too large");
    return static_cast<int>(a);
  };
  // two classes per inner level: 0 = free (a children of class 0 then one
  // of class 1), 1 = forced (a single child of class 0)
  auto std_level = [&](const Int& a) {
    LevelDesc ld;
    std::vector<int> free(small(a), 0);
    free.push_back(1);
    ld.classes = {ClassDesc{std::move(free)}, ClassDesc{{0}}};
    return ld;
  };
  Int a0 = prefix_coeffs.empty() ? cycle_coeffs[0] : prefix_coeffs[0];
  LevelDesc root;
  std::vector<int> root_children(small(a0), 0);
  root_children.push_back(1);
  root.classes = {ClassDesc{std::move(root_children)}};
  TreeSystem t;
  t.prefix.push_back(root);
  for (std::size_t i = 1; i < prefix_coeffs.size(); ++i)
    t.prefix.push_back(std_level(prefix_coeffs[i]));
  std::size_t c = cycle_coeffs.size();
  // with no explicit prefix the root consumed cycle_coeffs[0], so the
  // repeating part starts one step later
  std::size_t shift = prefix_coeffs.empty() ? 1 : 0;
  for (std::size_t i = 0; i < c; ++i) t.cycle.push_back(std_level(cycle_coeffs[(i + shift) % c]));
  return t;
}

// One round of partition refinement: recolor every (slot, class) node by
// its children's current colors. Keys are ordered lists or sorted
// multisets; new color ids rank keys by (more children first, then
// lexicographic), which is isomorphism-invariant.
static std::size_t recolor(const TreeSystem& t, bool ordered,
                           std::vector<std::vector<int>>& colors) {
  std::size_t s = num_slots(t);
  std::map<std::pair<std::size_t, std::vector<int>>, int> rank;
  std::vector<std::vector<std::pair<std::size_t, std::vector<int>>>> keys(s);
  for (std::size_t slot = 0; slot < s; ++slot) {
    const LevelDesc& ld = slot_desc(t, slot);
    for (const ClassDesc& c : ld.classes) {
      std::vector<int> child_colors;
      if (!c.children.empty()) {
        std::size_t succ = slot_successor(t, slot);
        for (int ch : c.children) child_colors.push_back(colors[succ][ch]);
        if (!ordered) std::sort(child_colors.begin(), child_colors.end());
      }
      // negate the arity so std::map's ascending order puts wider classes first
      keys[slot].emplace_back(SIZE_MAX - c.children.size(), std::move(child_colors));
      rank[keys[slot].back()] = 0;
    }
  }
  int next = 0;
  for (auto& [key, id] : rank) id = next++;
  for (std::size_t slot = 0; slot < s; ++slot)
    for (std::size_t k = 0; k < keys[slot].size(); ++k) colors[slot][k] = rank[keys[slot][k]];
  return rank.size();
}

static std::vector<std::vector<int>> refine_colors(const TreeSystem& t, bool ordered) {
  std::size_t s = num_slots(t);
  std::vector<std::vector<int>> colors(s);
  for (std::size_t slot = 0; slot < s; ++slot)
    colors[slot].assign(slot_desc(t, slot).classes.size(), 0);
  std::size_t count = 1;
  for (;;) {
    std::size_t next = recolor(t, ordered, colors);
    // refinement is monotone, so an unchanged count means a stable partition
    if (next == count) return colors;
    count = next;
  }
}

CollapseResult collapse(const TreeSystem& t) {
  require_valid(t);
  CollapseResult res;
  res.colors = refine_colors(t, false);
  res.ordered_colors = refine_colors(t, true);

  std::size_t s = num_slots(t);
  std::vector<std::vector<char>> reachable(s);
  for (std::size_t slot = 0; slot < s; ++slot)
    reachable[slot].assign(slot_desc(t, slot).classes.size(), 0);
  std::queue<std::pair<std::size_t, int>> bfs;
  bfs.push({0, 0});
  reachable[0][0] = 1;
  while (!bfs.empty()) {
    auto [slot, cls] = bfs.front();
    bfs.pop();
    const ClassDesc& c = slot_desc(t, slot).classes[cls];
    if (c.children.empty()) continue;
    std::size_t succ = slot_successor(t, slot);
    for (int ch : c.children)
      if (!reachable[succ][ch]) {
        reachable[succ][ch] = 1;
        bfs.push({succ, ch});
      }
  }

  // surviving classes per slot: one per color among reachable classes,
  // ordered by color rank; representative = lowest original index
  res.class_map.resize(s);
  std::vector<std::vector<int>> reps(s);  // per slot, per new class
  for (std::size_t slot = 0; slot < s; ++slot) {
    std::size_t n = slot_desc(t, slot).classes.size();
    res.class_map[slot].assign(n, -1);
    std::map<int, int> color_to_new;
    for (std::size_t k = 0; k < n; ++k)
      if (reachable[slot][k]) color_to_new[res.colors[slot][k]] = 0;
    int next = 0;
    for (auto& [color, id] : color_to_new) id = next++;
    reps[slot].assign(color_to_new.size(), -1);
    for (std::size_t k = 0; k < n; ++k) {
      if (!reachable[slot][k]) continue;
      int nw = color_to_new[res.colors[slot][k]];
      res.class_map[slot][k] = nw;
      if (reps[slot][nw] < 0) reps[slot][nw] = static_cast<int>(k);
    }
  }

  auto collapsed_level = [&](std::size_t slot) {
    LevelDesc ld;
    bool last_explicit = !t.eventually_periodic() && slot + 1 == s;
    for (int rep : reps[slot]) {
      ClassDesc c;
      if (!last_explicit) {
        std::size_t succ = slot_successor(t, slot);
        for (int ch : slot_desc(t, slot).classes[rep].children)
          c.children.push_back(res.class_map[succ][ch]);
        std::sort(c.children.begin(), c.children.end());
      }
      ld.classes.push_back(std::move(c));
    }
    return ld;
  };
  for (std::size_t slot = 0; slot < t.prefix.size(); ++slot)
    res.tree.prefix.push_back(collapsed_level(slot));
  for (std::size_t slot = t.prefix.size(); slot < s; ++slot)
    res.tree.cycle.push_back(collapsed_level(slot));
  return res;
}

}  // namespace endspace
