#include "endspace/rigidity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace endspace {

namespace {

bool duplicating(const ClassDesc& cd) {
  std::vector<int> kids = cd.children;
  std::sort(kids.begin(), kids.end());
  return std::adjacent_find(kids.begin(), kids.end()) != kids.end();
}

// Realizable collapsed classes per level, simulated until the state
// (slot, realizable set) first repeats. Levels >= loop_start recur
// forever; everything earlier is transient. Explicit systems just list
// all their levels (loop_start = number of levels).
struct Analysis {
  CollapseResult col;
  std::vector<std::set<int>> realizable;  // per level, up to the repeat
  std::size_t loop_start = 0;
};

Analysis analyze(const TreeSystem& ts) {
  Analysis an{collapse(ts), {}, 0};
  const TreeSystem& t = an.col.tree;
  std::set<int> cur{0};
  if (!t.eventually_periodic()) {
    for (std::size_t lv = 0; lv < t.num_levels(); ++lv) {
      an.realizable.push_back(cur);
      if (lv + 1 == t.num_levels()) break;
      std::set<int> next;
      for (int m : cur)
        for (int ch : level_desc(t, lv).classes[static_cast<std::size_t>(m)].children)
          next.insert(ch);
      cur = std::move(next);
    }
    an.loop_start = an.realizable.size();
    return an;
  }
  std::map<std::pair<std::size_t, std::set<int>>, std::size_t> seen;
  for (std::size_t lv = 0;; ++lv) {
    const std::size_t slot = slot_of_level(t, lv);
    auto [it, fresh] = seen.emplace(std::make_pair(slot, cur), lv);
    if (!fresh) {
      an.loop_start = it->second;
      return an;
    }
    an.realizable.push_back(cur);
    std::set<int> next;
    for (int m : cur)
      for (int ch : slot_desc(t, slot).classes[static_cast<std::size_t>(m)].children)
        next.insert(ch);
    cur = std::move(next);
  }
}

// Path in the original tree from the root to a vertex at `level` whose
// collapsed class is `target`. Breadth-first parent tracking.
std::vector<int> witness_path_to(const TreeSystem& ts, const CollapseResult& col,
                                 std::size_t level, int target) {
  // per level: original class -> (parent class, child position)
  std::vector<std::map<int, std::pair<int, int>>> parent(level + 1);
  parent[0][0] = {-1, -1};
  for (std::size_t lv = 0; lv < level; ++lv) {
    const LevelDesc& ld = level_desc(ts, lv);
    for (const auto& [cls, from] : parent[lv]) {
      const auto& kids = ld.classes[static_cast<std::size_t>(cls)].children;
      for (std::size_t pos = 0; pos < kids.size(); ++pos)
        parent[lv + 1].emplace(kids[pos], std::make_pair(cls, static_cast<int>(pos)));
    }
  }
  const std::size_t slot = slot_of_level(ts, level);
  int found = -1;
  for (const auto& [cls, from] : parent[level])
    if (col.class_map[slot][static_cast<std::size_t>(cls)] == target) {
      found = cls;
      break;
    }
  if (found < 0) throw domain_error("internal: duplicating class is not realizable");
  std::vector<int> path;
  int cls = found;
  for (std::size_t lv = level; lv > 0; --lv) {
    const auto [pc, pos] = parent[lv].at(cls);
    path.push_back(pos);
    cls = pc;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Int group_order_rec(const TreeSystem& t, std::size_t loop_start, std::size_t level, int cls,
                    std::map<std::pair<std::size_t, int>, Int>& memo) {
  if (t.eventually_periodic() && level >= loop_start) return 1;
  if (!t.eventually_periodic() && level + 1 >= t.num_levels()) return 1;
  const auto key = std::make_pair(level, cls);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<int> kids = level_desc(t, level).classes[static_cast<std::size_t>(cls)].children;
  std::sort(kids.begin(), kids.end());
  Int order = 1;
  for (std::size_t i = 0; i < kids.size();) {
    std::size_t j = i;
    while (j < kids.size() && kids[j] == kids[i]) ++j;
    const std::size_t mult = j - i;
    const Int child = group_order_rec(t, loop_start, level + 1, kids[i], memo);
    Int term = 1;
    for (std::size_t k = 0; k < mult; ++k) term *= child;
    for (std::size_t k = 2; k <= mult; ++k) term *= Int(k);
    order *= term;
    i = j;
  }
  return memo[key] = order;
}

}  // namespace

RigidityVerdict is_locally_rigid(const TreeSystem& ts, bool as_truncation) {
  require_valid(ts);
  const Analysis an = analyze(ts);
  const TreeSystem& t = an.col.tree;

  if (!ts.eventually_periodic() && as_truncation) {
    RigidityVerdict v;
    v.status = RigidityStatus::UnknownBeyondDepth;
    v.depth = ts.num_levels() - 1;
    return v;
  }

  // duplication at a recurring level => infinitely many duplication levels
  if (ts.eventually_periodic()) {
    for (std::size_t lv = an.loop_start; lv < an.realizable.size(); ++lv) {
      const LevelDesc& ld = level_desc(t, lv);
      for (int m : an.realizable[lv])
        if (duplicating(ld.classes[static_cast<std::size_t>(m)])) {
          RigidityVerdict v;
          v.status = RigidityStatus::NotLocallyRigid;
          v.witness_level = lv;
          v.witness_path = witness_path_to(ts, an.col, lv, m);
          return v;
        }
    }
  }

  RigidityVerdict v;
  v.status = RigidityStatus::LocallyRigid;
  for (std::size_t lv = 0; lv < an.realizable.size(); ++lv)
    for (int m : an.realizable[lv])
      if (duplicating(level_desc(t, lv).classes[static_cast<std::size_t>(m)]))
        v.epsilon_level = lv + 1;
  return v;
}

GroupOrder isometry_group_order(const TreeSystem& ts) {
  const auto verdict = is_locally_rigid(ts);
  if (verdict.status == RigidityStatus::NotLocallyRigid) return {false, 0};
  const Analysis an = analyze(ts);
  std::map<std::pair<std::size_t, int>, Int> memo;
  return {true, group_order_rec(an.col.tree, an.loop_start, 0, 0, memo)};
}

}  // namespace endspace
