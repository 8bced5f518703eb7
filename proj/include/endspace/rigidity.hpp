#pragma once
// Local rigidity of end spaces: a collapsed class is branch-duplicating
// when some child class occurs with multiplicity >= 2. The end space is
// locally rigid iff duplicating reachable classes occur at only finitely
// many levels; epsilon_level is the first level after the last one.

#include <cstddef>
#include <optional>
#include <vector>

#include "endspace/numbers.hpp"
#include "endspace/tree_system.hpp"

namespace endspace {

enum class RigidityStatus { LocallyRigid, NotLocallyRigid, UnknownBeyondDepth };

struct RigidityVerdict {
  RigidityStatus status;
  // LocallyRigid: balls of radius < e^{-epsilon_level+...} — concretely,
  // at levels >= epsilon_level every same-class ball isometry is unique.
  std::size_t epsilon_level = 0;
  // NotLocallyRigid: positions of a reachable duplicating vertex inside
  // the periodic part, and its level.
  std::vector<int> witness_path;
  std::size_t witness_level = 0;
  // UnknownBeyondDepth: the inspected depth.
  std::size_t depth = 0;
};

// Exact for eventually periodic systems. An explicit system denotes a
// finite tree, whose end space (its leaves) is always locally rigid; pass
// as_truncation = true to treat it instead as an unknown tree seen to
// finite depth, which honestly yields UnknownBeyondDepth.
RigidityVerdict is_locally_rigid(const TreeSystem& ts, bool as_truncation = false);

struct GroupOrder {
  bool finite;
  Int order;  // valid when finite
};

// |Isom(end space)|: Infinite iff NotLocallyRigid; otherwise the wreath
// product formula over the finitely many duplicating levels:
// order(class) = prod over distinct child classes (order(child)^mult * mult!).
GroupOrder isometry_group_order(const TreeSystem& ts);

}  // namespace endspace
