#include "endspace/bratteli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace endspace {

const Mat& step_matrix(const BratteliDiagram& d, std::size_t i) {
  const std::size_t p = d.prefix.size();
  if (i < p) return d.prefix[i];
  if (d.cycle.empty()) throw domain_error("level beyond finite diagram");
  return d.cycle[(i - p) % d.cycle.size()];
}

std::size_t level_size(const BratteliDiagram& d, std::size_t level) {
  if (level == 0) return cols(step_matrix(d, 0));
  if (!d.eventually_periodic() && level > d.num_matrices())
    throw domain_error("level beyond finite diagram");
  return rows(step_matrix(d, level - 1));
}

void require_valid_diagram(const BratteliDiagram& d) {
  const std::size_t total = d.prefix.size() + d.cycle.size();
  if (total == 0) throw domain_error("diagram has no matrices");
  if (cols(step_matrix(d, 0)) != 1) throw domain_error("top level must have a single vertex");
  auto mat_at = [&](std::size_t i) -> const Mat& {
    return i < d.prefix.size() ? d.prefix[i] : d.cycle[i - d.prefix.size()];
  };
  for (std::size_t i = 0; i < total; ++i) {
    const Mat& a = mat_at(i);
    if (rows(a) == 0 || cols(a) == 0) throw domain_error("empty incidence matrix");
    for (std::size_t k = 0; k < rows(a); ++k) {
      if (a[k].size() != cols(a)) throw domain_error("ragged incidence matrix");
      bool row_zero = true;
      for (const Int& e : a[k]) {
        if (e < 0) throw domain_error("negative edge multiplicity");
        if (e != 0) row_zero = false;
      }
      if (row_zero) throw domain_error("incidence matrix has a zero row");
    }
    for (std::size_t l = 0; l < cols(a); ++l) {
      bool col_zero = true;
      for (std::size_t k = 0; k < rows(a); ++k)
        if (a[k][l] != 0) col_zero = false;
      if (col_zero) throw domain_error("incidence matrix has a zero column");
    }
    // shape chain, wrapping the cycle back onto itself
    const bool last = i + 1 == total;
    if (last && d.cycle.empty()) continue;
    const Mat& next = last ? d.cycle.front() : mat_at(i + 1);
    if (cols(next) != rows(a)) throw domain_error("incidence matrix shapes do not chain");
  }
}

BratteliDiagram diagram_of(const TreeSystem& ts) {
  const auto col = collapse(ts);
  const TreeSystem& t = col.tree;
  const std::size_t slots = num_slots(t);
  BratteliDiagram d;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const bool last_explicit = !t.eventually_periodic() && slot + 1 == slots;
    if (last_explicit) break;  // the childless truncation level emits no matrix
    const LevelDesc& ld = slot_desc(t, slot);
    const std::size_t next = slot_desc(t, slot_successor(t, slot)).classes.size();
    Mat a(next, Vec(ld.classes.size(), 0));
    for (std::size_t l = 0; l < ld.classes.size(); ++l)
      for (int ch : ld.classes[l].children) a[static_cast<std::size_t>(ch)][l] += 1;
    (slot < t.prefix.size() ? d.prefix : d.cycle).push_back(std::move(a));
  }
  return d;
}

BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<std::size_t>& cuts,
                          const std::vector<std::size_t>& tail_gaps) {
  require_valid_diagram(d);
  if (cuts.empty() || cuts.front() != 0) throw domain_error("cut levels must start at 0");
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (cuts[i] <= cuts[i - 1]) throw domain_error("cut levels must be strictly increasing");
  for (std::size_t g : tail_gaps)
    if (g == 0) throw domain_error("telescoping gaps must be positive");

  auto block = [&](std::size_t from, std::size_t to) {  // product A_{to-1} ... A_{from}
    Mat m = identity(level_size(d, from));
    for (std::size_t i = from; i < to; ++i) m = mat_mul(step_matrix(d, i), m);
    return m;
  };

  BratteliDiagram out;
  if (!d.eventually_periodic()) {
    if (!tail_gaps.empty())
      throw domain_error("a finite diagram telescopes by cuts alone; drop the gaps");
    if (cuts.size() < 2) throw domain_error("telescoping a finite diagram needs two cuts");
    if (cuts.back() > d.num_matrices()) throw domain_error("cut level beyond finite diagram");
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      out.prefix.push_back(block(cuts[i], cuts[i + 1]));
    return out;
  }
  if (tail_gaps.empty())
    throw domain_error("an eventually periodic diagram needs tail gaps to telescope");

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.prefix.push_back(block(cuts[i], cuts[i + 1]));

  // After the last cut the tail machine runs: a block of width
  // tail_gaps[t mod |gaps|] starting at a level whose behavior is the pair
  // (slot phase, gap index). The first repeated state closes the cycle.
  const std::size_t p = d.prefix.size(), c = d.cycle.size();
  auto state_of = [&](std::size_t level, std::size_t gap_idx) {
    const std::size_t phase = level < p ? level : p + (level - p) % c;
    return std::make_pair(phase, gap_idx);
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;  // state -> block index
  std::vector<Mat> blocks;
  std::vector<std::size_t> starts;
  std::size_t level = cuts.back(), gap_idx = 0;
  for (;;) {
    const auto st = state_of(level, gap_idx);
    auto [it, fresh] = seen.emplace(st, blocks.size());
    if (!fresh) {
      for (std::size_t i = 0; i < it->second; ++i) out.prefix.push_back(blocks[i]);
      for (std::size_t i = it->second; i < blocks.size(); ++i) out.cycle.push_back(blocks[i]);
      return out;
    }
    const std::size_t width = tail_gaps[gap_idx];
    blocks.push_back(block(level, level + width));
    starts.push_back(level);
    level += width;
    gap_idx = (gap_idx + 1) % tail_gaps.size();
  }
}

// Depth-first search for level permutations pi_i carrying a onto b:
// b.A_i[pi_{i+1}(k)][pi_i(l)] == a.A_i[k][l]. For a pair of eventually
// periodic diagrams the search state (phase_a, phase_b, pi) is finite and
// revisiting a pending state means the match closes into a loop.
namespace {

struct IsoSearch {
  const BratteliDiagram& a;
  const BratteliDiagram& b;
  std::size_t limit;  // compare matrices 0..limit-1 (SIZE_MAX = unbounded)
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, int> memo;
  // memo values: 0 = pending on the current path, 1 = success, -1 = failure

  std::size_t phase(const BratteliDiagram& d, std::size_t i) const {
    const std::size_t p = d.prefix.size();
    return i < p ? i : p + (i - p) % d.cycle.size();
  }

  bool run(std::size_t i, const std::vector<std::size_t>& pi) {
    if (i >= limit) return true;
    const bool ep = a.eventually_periodic() && b.eventually_periodic();
    if (!a.eventually_periodic() && i >= a.num_matrices()) return true;
    if (!b.eventually_periodic() && i >= b.num_matrices()) return true;
    std::tuple<std::size_t, std::size_t, std::vector<std::size_t>> key;
    if (ep) {
      key = {phase(a, i), phase(b, i), pi};
      auto it = memo.find(key);
      if (it != memo.end()) return it->second >= 0;  // pending counts as success
      memo[key] = 0;
    }
    const Mat& ma = step_matrix(a, i);
    const Mat& mb = step_matrix(b, i);
    bool ok = false;
    if (rows(ma) == rows(mb)) {
      std::vector<std::size_t> next(rows(ma));
      std::iota(next.begin(), next.end(), 0);
      do {
        bool match = true;
        for (std::size_t k = 0; k < rows(ma) && match; ++k)
          for (std::size_t l = 0; l < cols(ma) && match; ++l)
            match = mb[next[k]][pi[l]] == ma[k][l];
        if (match && run(i + 1, next)) {
          ok = true;
          break;
        }
      } while (std::next_permutation(next.begin(), next.end()));
    }
    if (ep) memo[key] = ok ? 1 : -1;
    return ok;
  }
};

}  // namespace

IsoResult is_isomorphic(const BratteliDiagram& a, const BratteliDiagram& b, std::size_t depth) {
  require_valid_diagram(a);
  require_valid_diagram(b);
  const bool both_ep = a.eventually_periodic() && b.eventually_periodic();
  std::size_t limit = both_ep ? SIZE_MAX : depth;
  bool exact = both_ep;
  if (!a.eventually_periodic() && !b.eventually_periodic()) {
    // two finite diagrams of equal length compare fully and exactly
    if (a.num_matrices() != b.num_matrices())
      return {false, true};
    if (a.num_matrices() <= depth) {
      limit = a.num_matrices();
      exact = true;
    }
  } else if (!both_ep) {
    const std::size_t flen =
        a.eventually_periodic() ? b.num_matrices() : a.num_matrices();
    limit = std::min(limit, flen);
  }
  IsoSearch search{a, b, limit, {}};
  const bool iso = search.run(0, {0});
  return {iso, exact};
}

EquivalenceResult equivalence_search(const BratteliDiagram& a, const BratteliDiagram& b,
                                     std::size_t bound) {
  EquivalenceResult res;
  res.bound = bound;
  // quadruples (f1, g1, f2, g2) by increasing sum, then lexicographically
  for (std::size_t sum = 4; sum <= 4 * bound; ++sum)
    for (std::size_t f1 = 1; f1 <= bound; ++f1)
      for (std::size_t g1 = 1; g1 <= bound; ++g1)
        for (std::size_t f2 = 1; f2 <= bound; ++f2) {
          if (f1 + g1 + f2 + 1 > sum || sum - f1 - g1 - f2 > bound) continue;
          const std::size_t g2 = sum - f1 - g1 - f2;
          const CutPattern pa{{0, f1}, {g1}}, pb{{0, f2}, {g2}};
          const auto ta = telescope(a, pa.cuts, pa.tail_gaps);
          const auto tb = telescope(b, pb.cuts, pb.tail_gaps);
          if (is_isomorphic(ta, tb, 0).isomorphic) {
            res.equivalent = true;
            res.witness_a = pa;
            res.witness_b = pb;
            return res;
          }
        }
  return res;
}

Vec path_counts(const BratteliDiagram& d, std::size_t level) {
  Vec k{1};
  for (std::size_t i = 0; i < level; ++i) k = mat_apply(step_matrix(d, i), k);
  return k;
}

std::string to_dot(const BratteliDiagram& d, std::size_t max_level) {
  std::ostringstream out;
  out << "digraph bratteli {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=circle fontsize=10];\n";
  for (std::size_t lv = 0; lv <= max_level; ++lv) {
    out << "  { rank=same;";
    for (std::size_t k = 0; k < level_size(d, lv); ++k) out << " v" << lv << "_" << k << ";";
    out << " }\n";
  }
  for (std::size_t i = 0; i < max_level; ++i) {
    const Mat& a = step_matrix(d, i);
    for (std::size_t k = 0; k < rows(a); ++k)
      for (std::size_t l = 0; l < cols(a); ++l)
        for (Int e = 0; e < a[k][l]; ++e)
          out << "  v" << i << "_" << l << " -> v" << i + 1 << "_" << k << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace endspace
