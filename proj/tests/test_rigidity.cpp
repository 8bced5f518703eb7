// Local rigidity and isometry group orders.  The verdicts below were
// worked out by hand from the collapsed level descriptors; the oracle
// cross-checks count automorphisms of finite unfoldings by brute
// enumeration of subtree matchings.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "endspace/rigidity.hpp"
#include "endspace/tree_system.hpp"
#include "oracles.hpp"

using namespace endspace;

namespace {

// In-cycle branch duplication, visible only after merging bisimilar
// classes: both cycle classes unfold identically.
const TreeSystem hidden_duplication{
    {LevelDesc{{ClassDesc{{0, 1}}}}},
    {LevelDesc{{ClassDesc{{0, 1}}, ClassDesc{{0, 1}}}}}};

// The duplicating cycle class exists but is never reached from the root.
const TreeSystem unreachable_duplication{
    {LevelDesc{{ClassDesc{{0}}}}},
    {LevelDesc{{ClassDesc{{0}}, ClassDesc{{0, 0}}}}}};

// Two doubled branches over a rigid tail: wreath order (1^2 * 2!)^2 * 2!.
const TreeSystem grafted{
    {LevelDesc{{ClassDesc{{0, 0}}}}, LevelDesc{{ClassDesc{{0, 0}}}}},
    {LevelDesc{{ClassDesc{{0}}}}}};

// A NotLocallyRigid witness must address a reachable vertex inside the
// periodic part whose collapsed class duplicates a child class.
void check_witness(const TreeSystem& ts, const RigidityVerdict& v) {
  REQUIRE(v.status == RigidityStatus::NotLocallyRigid);
  CHECK(v.witness_path.size() == v.witness_level);
  CHECK(v.witness_level >= ts.prefix.size());
  int cls = class_at(ts, v.witness_path);  // throws if the path is bogus
  auto col = collapse(ts);
  std::size_t slot = slot_of_level(ts, v.witness_level);
  int merged = col.class_map[slot][static_cast<std::size_t>(cls)];
  REQUIRE(merged >= 0);
  std::size_t cslot = slot_of_level(col.tree, v.witness_level);
  const auto& kids = slot_desc(col.tree, cslot).classes[static_cast<std::size_t>(merged)].children;
  bool duplicating = false;
  for (std::size_t i = 0; i + 1 < kids.size() && !duplicating; ++i)
    for (std::size_t j = i + 1; j < kids.size(); ++j)
      if (kids[i] == kids[j]) { duplicating = true; break; }
  CHECK(duplicating);
}

}  // namespace

TEST_CASE("branching everywhere is never locally rigid") {
  for (const TreeSystem& ts :
       {cantor_tree(), ary_tree(2), ary_tree(3), regular_tree(2), regular_tree(3)}) {
    auto v = is_locally_rigid(ts);
    check_witness(ts, v);
  }
  // the cycle starts at the root, which already duplicates
  auto v = is_locally_rigid(cantor_tree());
  CHECK(v.witness_level == 0);
  CHECK(v.witness_path.empty());
  // for n-regular the prefix holds the root; the witness sits below it
  auto vr = is_locally_rigid(regular_tree(2));
  CHECK(vr.witness_level == 1);
}

TEST_CASE("aperiodic slow branching is locally rigid at the root") {
  for (const TreeSystem& ts : {fibonacci_tree(), sturmian_tree(), from_cfrac({}, {1})}) {
    auto v = is_locally_rigid(ts);
    CHECK(v.status == RigidityStatus::LocallyRigid);
    CHECK(v.epsilon_level == 0);
  }
}

TEST_CASE("continued fractions: rigid iff the tail has no branching") {
  check_witness(from_cfrac({}, {2}), is_locally_rigid(from_cfrac({}, {2})));
  check_witness(from_cfrac({}, {3, 1}), is_locally_rigid(from_cfrac({}, {3, 1})));

  auto v31 = is_locally_rigid(from_cfrac({3}, {1}));
  CHECK(v31.status == RigidityStatus::LocallyRigid);
  CHECK(v31.epsilon_level == 1);

  auto v221 = is_locally_rigid(from_cfrac({2, 2}, {1}));
  CHECK(v221.status == RigidityStatus::LocallyRigid);
  CHECK(v221.epsilon_level == 2);
}

TEST_CASE("duplication hidden behind bisimilar classes is found") {
  check_witness(hidden_duplication, is_locally_rigid(hidden_duplication));
}

TEST_CASE("unreachable duplicating classes do not count") {
  auto v = is_locally_rigid(unreachable_duplication);
  CHECK(v.status == RigidityStatus::LocallyRigid);
  CHECK(v.epsilon_level == 0);
  auto g = isometry_group_order(unreachable_duplication);
  CHECK(g.finite);
  CHECK(g.order == 1);
}

TEST_CASE("n-ended spaces") {
  for (int n = 1; n <= 5; ++n) {
    auto ts = ended_tree(n);
    auto v = is_locally_rigid(ts);
    CHECK(v.status == RigidityStatus::LocallyRigid);
    CHECK(v.epsilon_level == (n >= 2 ? 1 : 0));
    auto g = isometry_group_order(ts);
    REQUIRE(g.finite);
    Int fact = 1;
    for (int k = 2; k <= n; ++k) fact *= k;
    CHECK(g.order == fact);
  }
}

TEST_CASE("grafted doubled branches") {
  auto v = is_locally_rigid(grafted);
  CHECK(v.status == RigidityStatus::LocallyRigid);
  CHECK(v.epsilon_level == 2);
  auto g = isometry_group_order(grafted);
  REQUIRE(g.finite);
  CHECK(g.order == 8);
}

TEST_CASE("isometry group orders of hand-checked systems") {
  CHECK_FALSE(isometry_group_order(cantor_tree()).finite);
  CHECK_FALSE(isometry_group_order(regular_tree(3)).finite);

  auto fib = isometry_group_order(fibonacci_tree());
  REQUIRE(fib.finite);
  CHECK(fib.order == 1);

  auto c31 = isometry_group_order(from_cfrac({3}, {1}));
  REQUIRE(c31.finite);
  CHECK(c31.order == 6);

  auto c221 = isometry_group_order(from_cfrac({2, 2}, {1}));
  REQUIRE(c221.finite);
  CHECK(c221.order == 8);
}

TEST_CASE("explicit systems denote finite leaf spaces") {
  auto trunc = truncate(cantor_tree(), 4);
  auto v = is_locally_rigid(trunc);
  CHECK(v.status == RigidityStatus::LocallyRigid);
  CHECK(v.epsilon_level == 4);
  auto g = isometry_group_order(trunc);
  REQUIRE(g.finite);
  CHECK(g.order == 32768);  // 2^(1+2+4+8)

  auto honest = is_locally_rigid(trunc, true);
  CHECK(honest.status == RigidityStatus::UnknownBeyondDepth);
  CHECK(honest.depth == 4);

  auto rays = truncate(ended_tree(3), 5);
  auto vr = is_locally_rigid(rays);
  CHECK(vr.status == RigidityStatus::LocallyRigid);
  CHECK(vr.epsilon_level == 1);
  CHECK(isometry_group_order(rays).order == 6);
}

TEST_CASE("oracle: group order equals marked automorphism count of deep unfoldings") {
  const TreeSystem cases[] = {ended_tree(2),        ended_tree(3),
                              ended_tree(4),        grafted,
                              from_cfrac({2, 2}, {1}), from_cfrac({3}, {1}),
                              fibonacci_tree(),     sturmian_tree()};
  for (const auto& ts : cases) {
    auto v = is_locally_rigid(ts);
    REQUIRE(v.status == RigidityStatus::LocallyRigid);
    auto g = isometry_group_order(ts);
    REQUIRE(g.finite);
    for (std::size_t depth = v.epsilon_level + 6; depth <= v.epsilon_level + 8; ++depth)
      CHECK(oracle::count_end_isometries(ts, depth) == g.order);
  }
}

TEST_CASE("oracle: infinite groups show strictly growing truncations") {
  for (const TreeSystem& ts : {cantor_tree(), regular_tree(2)}) {
    REQUIRE_FALSE(isometry_group_order(ts).finite);
    Int prev = oracle::count_automorphisms(oracle::unfold(ts, 0, 0, 3));
    for (std::size_t depth = 4; depth <= 5; ++depth) {
      Int cur = oracle::count_automorphisms(oracle::unfold(ts, 0, 0, depth));
      CHECK(cur > prev);
      prev = cur;
    }
  }
}
