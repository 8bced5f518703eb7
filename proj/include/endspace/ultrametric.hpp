#pragma once
// Finite ultrametric spaces over exact rationals: validation, the
// isosceles/ball lemmas as executable operations, isometry groups, and the
// dendrogram bridge from distance matrices to tree systems.

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "endspace/numbers.hpp"
#include "endspace/tree_system.hpp"

namespace endspace {

struct FiniteUltrametricSpace {
  std::vector<std::string> points;
  std::vector<std::vector<Rat>> dist;  // symmetric, zero diagonal
};

// Structural problems (asymmetry, nonzero diagonal, shape, negative
// entries, duplicate zero distances) throw domain_error; failures of the
// strong triangle inequality are reported as triples, not thrown.
struct UltrametricReport {
  bool ok = true;
  std::vector<std::array<std::size_t, 3>> violating_triples;  // (x,y,z): d(x,y) > max(d(x,z),d(z,y))
};
UltrametricReport validate_ultrametric(const FiniteUltrametricSpace& s);
void require_ultrametric(const FiniteUltrametricSpace& s);  // throws on either failure

// Point set of the closed ball around `center` of the given radius,
// ascending indices.
std::vector<std::size_t> closed_ball(const FiniteUltrametricSpace& s, std::size_t center,
                                     const Rat& radius);

// Index among {x,y,z} at which the two long sides of the isosceles
// triangle meet; ties (equilateral) break to the smallest index.
std::size_t isb_apex(const FiniteUltrametricSpace& s, std::size_t x, std::size_t y, std::size_t z);

struct BallIsometry {
  std::size_t center;
  Rat radius;
  std::vector<std::pair<std::size_t, std::size_t>> mapping;  // bijection on ball points
};

// The global permutation equal to the ball self-isometry on its ball and
// the identity elsewhere; verified distance-preserving before returning.
// Throws if the mapping is not an isometry of the stated ball onto itself.
std::vector<std::size_t> extend_ball_isometry(const FiniteUltrametricSpace& s,
                                              const BallIsometry& iso);

// All distance-preserving permutations, lexicographically ordered (so the
// identity comes first).
std::vector<std::vector<std::size_t>> isometry_group(const FiniteUltrametricSpace& s);

// Hierarchy of closed-ball partitions at the realized distances
// t_0 > t_1 > ... > t_{s-1}, followed by the singleton partition, then
// infinite single-child chains: an eventually periodic TreeSystem whose
// end space is the input space with t_i rescaled to e^{-i}.
struct Dendrogram {
  TreeSystem tree;
  std::vector<Rat> thresholds;  // strictly decreasing, positive
  // blocks[i] = partition into closed balls of radius thresholds[i] (point
  // indices, each block ascending, blocks ordered by smallest member);
  // blocks.back() = singletons, so blocks.size() = thresholds.size()+1.
  std::vector<std::vector<std::vector<std::size_t>>> blocks;
};
Dendrogram dendrogram(const FiniteUltrametricSpace& s);

// Index i with thresholds[i] == d (the level whose balls have diameter
// <= d); throws if d is not a realized positive distance.
std::size_t level_of_distance(const Dendrogram& den, const Rat& d);

// First position index at which the chains of two distinct points
// disagree (= their end-space distance exponent). The round trip
// thresholds[branch_level(a,b)] == d(a,b) is the scale-equivalence
// contract.
std::size_t branch_level(const Dendrogram& den, std::size_t a, std::size_t b);

}  // namespace endspace
