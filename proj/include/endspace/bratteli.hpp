#pragma once
// Bratteli diagrams as sequences of incidence matrices A_i (rows = level
// i+1 classes, columns = level i classes), eventually periodic or finite.
// Telescoping, level-preserving isomorphism, bounded equivalence search,
// path counts, and DOT output.

#include <cstddef>
#include <string>
#include <vector>

#include "endspace/linalg.hpp"
#include "endspace/tree_system.hpp"

namespace endspace {

struct BratteliDiagram {
  std::vector<Mat> prefix;
  std::vector<Mat> cycle;  // empty <=> finite (explicit) diagram

  bool eventually_periodic() const { return !cycle.empty(); }
  // Finite diagrams describe levels 0..prefix.size() only.
  std::size_t num_matrices() const { return prefix.size(); }

  bool operator==(const BratteliDiagram&) const = default;
};

// Incidence matrix from level i to level i+1.
const Mat& step_matrix(const BratteliDiagram& d, std::size_t i);
// Number of classes at the given level.
std::size_t level_size(const BratteliDiagram& d, std::size_t level);

// Checks the diagram's shape chain (columns of A_{i+1} = rows of A_i,
// wrapping around the cycle), m_0 = 1, nonnegative entries, and the
// no-zero-row / no-zero-column conditions. Throws domain_error.
void require_valid_diagram(const BratteliDiagram& d);

// Collapses the tree and transcribes child multiplicities:
// A_i[k][l] = multiplicity of class k among the children of class l.
BratteliDiagram diagram_of(const TreeSystem& ts);

// Contract the diagram to the given cut levels. `cuts` must be strictly
// increasing and start at 0; after the explicit cuts the pattern continues
// by cycling through `tail_gaps`. An eventually periodic diagram requires
// nonempty tail_gaps (the result is again eventually periodic); a finite
// diagram requires empty tail_gaps and cuts within range.
BratteliDiagram telescope(const BratteliDiagram& d, const std::vector<std::size_t>& cuts,
                          const std::vector<std::size_t>& tail_gaps);

// Level-preserving isomorphism: per-level class permutations carrying
// every A_i onto A'_i. Exact for a pair of eventually periodic diagrams
// (finite state search); otherwise the verdict applies to levels 0..depth
// only and exact = false unless both diagrams end within depth.
struct IsoResult {
  bool isomorphic;
  bool exact;
};
IsoResult is_isomorphic(const BratteliDiagram& a, const BratteliDiagram& b, std::size_t depth);

// Bounded search for telescopings of both diagrams that make them
// isomorphic. Patterns searched: cuts {0, f} continuing with uniform gap
// g, for 1 <= f, g <= bound, in deterministic order of increasing
// f1+g1+f2+g2 then lexicographic. A positive verdict carries the witness;
// a negative one only means "not found within bound".
struct CutPattern {
  std::vector<std::size_t> cuts;
  std::vector<std::size_t> tail_gaps;
};
struct EquivalenceResult {
  bool equivalent = false;
  std::size_t bound = 0;
  CutPattern witness_a, witness_b;  // meaningful when equivalent
};
EquivalenceResult equivalence_search(const BratteliDiagram& a, const BratteliDiagram& b,
                                     std::size_t bound);

// Number of directed paths from the top vertex to each class of the
// given level: k_0 = [1], k_{i+1} = A_i k_i.
Vec path_counts(const BratteliDiagram& d, std::size_t level);

// Deterministic DOT rendering of levels 0..max_level, one rank per level,
// nodes named v<level>_<class>, multiplicities as parallel edges.
std::string to_dot(const BratteliDiagram& d, std::size_t max_level);

}  // namespace endspace
