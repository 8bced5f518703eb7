#include <algorithm>
#include <set>

#include "endspace/ultrametric.hpp"

namespace endspace {

// Partition into closed balls of the given radius, blocks ordered by their
// smallest member, members ascending.
static std::vector<std::vector<std::size_t>> ball_partition(const FiniteUltrametricSpace& s,
                                                            const Rat& radius) {
  const std::size_t n = s.points.size();
  std::vector<char> placed(n, 0);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (placed[i]) continue;
    std::vector<std::size_t> block;
    for (std::size_t j = 0; j < n; ++j)
      if (s.dist[i][j] <= radius) {
        block.push_back(j);
        placed[j] = 1;
      }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

Dendrogram dendrogram(const FiniteUltrametricSpace& s) {
  if (s.points.empty()) throw domain_error("empty space has no dendrogram");
  require_ultrametric(s);
  const std::size_t n = s.points.size();

  Dendrogram den;
  std::set<Rat> realized;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) realized.insert(s.dist[i][j]);
  den.thresholds.assign(realized.rbegin(), realized.rend());  // strictly decreasing

  for (const Rat& t : den.thresholds) den.blocks.push_back(ball_partition(s, t));
  std::vector<std::vector<std::size_t>> singletons;
  for (std::size_t i = 0; i < n; ++i) singletons.push_back({i});
  den.blocks.push_back(std::move(singletons));

  // prefix level j: one class per block of blocks[j], children = indices of
  // the next level's blocks it contains; then an eternal single-child level
  // keeps each end ray going.
  const std::size_t k = den.thresholds.size();
  for (std::size_t j = 0; j < k; ++j) {
    LevelDesc ld;
    for (const auto& block : den.blocks[j]) {
      ClassDesc c;
      for (std::size_t b = 0; b < den.blocks[j + 1].size(); ++b)
        if (std::includes(block.begin(), block.end(), den.blocks[j + 1][b].begin(),
                          den.blocks[j + 1][b].end()))
          c.children.push_back(static_cast<int>(b));
      ld.classes.push_back(std::move(c));
    }
    den.tree.prefix.push_back(std::move(ld));
  }
  LevelDesc chains;
  for (std::size_t i = 0; i < n; ++i) chains.classes.push_back(ClassDesc{{static_cast<int>(i)}});
  den.tree.cycle.push_back(std::move(chains));
  return den;
}

std::size_t level_of_distance(const Dendrogram& den, const Rat& d) {
  for (std::size_t i = 0; i < den.thresholds.size(); ++i)
    if (den.thresholds[i] == d) return i;
  throw domain_error("not a realized positive distance: " + format_rational(d));
}

static std::size_t block_of(const std::vector<std::vector<std::size_t>>& partition,
                            std::size_t point) {
  for (std::size_t b = 0; b < partition.size(); ++b)
    if (std::binary_search(partition[b].begin(), partition[b].end(), point)) return b;
  throw domain_error("point missing from partition");
}

std::size_t branch_level(const Dendrogram& den, std::size_t a, std::size_t b) {
  if (a == b) throw domain_error("branch level needs two distinct points");
  for (std::size_t j = 0; j < den.blocks.size(); ++j)
    if (block_of(den.blocks[j], a) != block_of(den.blocks[j], b)) return j - 1;
  throw domain_error("points never separate");  // unreachable: singleton level separates
}

}  // namespace endspace
