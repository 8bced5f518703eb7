#pragma once
// Self-similar rooted trees presented by levels of vertex classes. A level
// descriptor lists its classes; each class lists the classes of its
// children (with multiplicity, in order) at the next level. A tree is
// either eventually periodic (finite prefix of levels followed by a
// repeating cycle of levels) or explicit (a finite truncation whose last
// level has childless classes).

#include <cstddef>
#include <string>
#include <vector>

#include "endspace/linalg.hpp"
#include "endspace/numbers.hpp"

namespace endspace {

struct ClassDesc {
  std::vector<int> children;  // class indices at the next level, ordered
  bool operator==(const ClassDesc&) const = default;
};

struct LevelDesc {
  std::vector<ClassDesc> classes;
  bool operator==(const LevelDesc&) const = default;
};

struct TreeSystem {
  std::vector<LevelDesc> prefix;
  std::vector<LevelDesc> cycle;  // empty <=> explicit finite-depth system

  bool eventually_periodic() const { return !cycle.empty(); }
  // Explicit systems describe levels 0..num_levels()-1 only.
  std::size_t num_levels() const { return prefix.size(); }

  bool operator==(const TreeSystem&) const = default;
};

// Distinct level descriptors: prefix slots 0..p-1 then cycle slots p..p+c-1.
std::size_t num_slots(const TreeSystem& t);
std::size_t slot_of_level(const TreeSystem& t, std::size_t level);
// Slot holding the descriptor one level below the given slot (wraps to the
// cycle start). Throws for the last slot of an explicit system.
std::size_t slot_successor(const TreeSystem& t, std::size_t slot);
const LevelDesc& slot_desc(const TreeSystem& t, std::size_t slot);
const LevelDesc& level_desc(const TreeSystem& t, std::size_t level);

// A vertex of the described tree, addressed by child positions from the
// root (positions[i] picks a child at level i, so level() = path length).
struct Vertex {
  std::vector<int> positions;
  std::size_t level() const { return positions.size(); }
  bool operator==(const Vertex&) const = default;
  bool operator<(const Vertex& o) const { return positions < o.positions; }
};

// Checks: level 0 has exactly one class, every child index addresses a
// class of the next level, every class of an eventually periodic system
// has at least one child, and in an explicit system exactly the last
// level's classes are childless. All violations are listed.
struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};
ValidationReport validate(const TreeSystem& t);
// Throws domain_error carrying the first violation.
void require_valid(const TreeSystem& t);

// Class index reached from the root by the given child positions
// (positions[i] selects a child at level i). Throws on invalid positions.
int class_at(const TreeSystem& t, const std::vector<int>& positions);

// Number of vertices of each class at the given level.
Vec class_vertex_counts(const TreeSystem& t, std::size_t level);

// Total vertex counts |V_0|, ..., |V_max_level|.
std::vector<Int> level_profile(const TreeSystem& t, std::size_t max_level);

// Explicit truncation describing levels 0..depth with the last level's
// children removed.
TreeSystem truncate(const TreeSystem& t, std::size_t depth);

// ---- stock trees ----
TreeSystem cantor_tree();     // binary tree
TreeSystem fibonacci_tree();
TreeSystem sturmian_tree();
TreeSystem regular_tree(int n);  // root degree n+1, inner degree n+1
TreeSystem ary_tree(int n);      // every vertex has n children
TreeSystem ended_tree(int n);    // n rays from the root
// Vertex classes = SFT symbols: root sees one child per symbol, and symbol
// i's children are the symbols j with matrix[i][j] == 1, ascending.
TreeSystem from_sft(const std::vector<std::vector<int>>& zero_one_matrix);
// Continued-fraction tree for [a_0; a_1, a_2, ...] with partial quotients
// given by prefix then cycle repeated (empty cycle = tail of ones).
// Coefficient a_0 shapes the root level; each later coefficient a
// contributes a two-class level descriptor (free class: a copies of free
// plus one forced; forced class: one free).
TreeSystem from_cfrac(const std::vector<Int>& prefix_coeffs,
                      const std::vector<Int>& cycle_coeffs);

// ---- collapse to canonical form ----
// Merges bisimilar classes (equal unordered subtree unfoldings, counted
// with multiplicity), drops classes unreachable from the root, and orders
// the surviving classes of each slot canonically.
struct CollapseResult {
  TreeSystem tree;
  // per slot: old class -> new class index, or -1 if unreachable
  std::vector<std::vector<int>> class_map;
  // per slot: old class -> global bisimulation color; colors are shared
  // across slots, so equal colors at different levels mean isomorphic
  // unfoldings there.
  std::vector<std::vector<int>> colors;
  // same, but children compared as ordered lists (position-tree equality)
  std::vector<std::vector<int>> ordered_colors;
};
CollapseResult collapse(const TreeSystem& t);

}  // namespace endspace
