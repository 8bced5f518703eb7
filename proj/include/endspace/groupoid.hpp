#pragma once
// End points of a tree system as eventually periodic position sequences,
// the end-space ultrametric, germs of the unique ball isometries on
// locally rigid systems, the path groupoid of the Bratteli diagram with
// the kappa correspondence, and tail equivalence with its prefix-swap
// witness isometry.

#include <cstddef>
#include <optional>
#include <vector>

#include "endspace/bratteli.hpp"
#include "endspace/rigidity.hpp"
#include "endspace/tree_system.hpp"

namespace endspace {

struct EndPoint {
  std::vector<int> pre;  // initial positions
  std::vector<int> cyc;  // repeating positions, nonempty
  bool operator==(const EndPoint&) const = default;
};
int position_at(const EndPoint& x, std::size_t i);
// Checks the position sequence is legal at every level (finite state walk).
void require_endpoint(const TreeSystem& ts, const EndPoint& x);
// Vertex on the endpoint's ray at the given level.
Vertex vertex_at(const EndPoint& x, std::size_t level);

// d(x,y) = e^{-level} where level is the first position disagreement;
// zero iff the sequences denote the same ray.
struct EndDistance {
  bool zero;
  std::size_t level;  // valid when !zero
};
EndDistance end_distance(const TreeSystem& ts, const EndPoint& x, const EndPoint& y);

// Whether the subtrees under two vertices (any levels) are rooted
// isometric, i.e. the collapsed classes share a bisimulation color.
bool germ_exists(const TreeSystem& ts, const Vertex& a, const Vertex& b);

// Germ of the unique isometry/similarity between the closed balls under
// source and target; on a locally rigid system at levels >= epsilon the
// vertex pair is the whole datum. sim = e^{shift}.
struct Germ {
  Vertex source, target;
  bool operator==(const Germ&) const = default;
};
inline long germ_shift(const Germ& g) {
  return static_cast<long>(g.source.level()) - static_cast<long>(g.target.level());
}

// Precomputed collapse + rigidity data for germ calculus; construction
// fails unless the system is locally rigid.
struct GermContext {
  TreeSystem tree;
  CollapseResult collapsed;
  std::size_t epsilon_level;
};
GermContext make_germ_context(const TreeSystem& ts);

// Throws unless both vertices are legal, at levels >= epsilon, and of
// equal rooted-isometry class.
Germ make_germ(const GermContext& ctx, Vertex source, Vertex target);
Germ inverse(const Germ& g);
// Composition g2 o g1 (g1 applied first): the germs are restricted to the
// overlap of g1's target ball and g2's source ball by the unique
// class-matching descent; non-nested balls are an error.
Germ compose(const GermContext& ctx, const Germ& g2, const Germ& g1);

// All local-isometry germs with both vertices at the given level
// (>= epsilon): sum over classes of n_c^2 germs, listed in lexicographic
// (source, target) order.
std::vector<Germ> enumerate_germs(const GermContext& ctx, std::size_t level);

// Edge of the Bratteli diagram: occurrence-th child of collapsed class
// `to` among the children of a class-`from` vertex.
struct DiagramEdge {
  int from_class, to_class, occurrence;
  bool operator==(const DiagramEdge&) const = default;
};
using DiagramPath = std::vector<DiagramEdge>;
// Paths of the two ball-isometric vertices; equal terminal class.
struct PathPair {
  DiagramPath p, q;
  bool operator==(const PathPair&) const = default;
};

// The groupoid isomorphism between germs and path pairs: a vertex's
// position walk rewritten as diagram edges and back.
PathPair kappa_star(const GermContext& ctx, const Germ& g);
Germ kappa_star_inv(const GermContext& ctx, const PathPair& pp);
PathPair pp_compose(const PathPair& b, const PathPair& a);  // a first
PathPair pp_inverse(const PathPair& pp);

// Minimal N with x_i = y_i for all i >= N, or nullopt when the tails
// never merge (decided by cycle alignment).
std::optional<std::size_t> tail_equivalent(const TreeSystem& ts, const EndPoint& x,
                                           const EndPoint& y);

// The prefix-swap ball isometry B(x, e^{-N}) -> B(y, e^{-N}) witnessing
// tail equivalence: z maps to y_0...y_{N-1} z_N z_{N+1}.... N is the
// least level >= the tail-merge level at which the ordered subtrees
// under the two level-N vertices become identical (the swap is verified,
// not assumed); if the subtree shapes never coincide -- decided by
// finite-state cycle alignment -- the swap is no isometry at any level
// and a domain_error explains it.
struct BallIsometryWitness {
  std::size_t level;  // N
  Vertex source, target;
};
BallIsometryWitness isometry_witness(const TreeSystem& ts, const EndPoint& x, const EndPoint& y);

}  // namespace endspace
