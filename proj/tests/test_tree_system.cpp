#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "endspace/tree_system.hpp"
#include "oracles.hpp"

using namespace endspace;

namespace {
LevelDesc L(std::vector<std::vector<int>> cs) {
  LevelDesc d;
  for (auto& c : cs) d.classes.push_back(ClassDesc{std::move(c)});
  return d;
}
std::vector<Int> ints(std::vector<long> v) { return std::vector<Int>(v.begin(), v.end()); }
}  // namespace

TEST_CASE("builtin shapes are the documented descriptors") {
  CHECK(cantor_tree() == TreeSystem{{}, {L({{0, 0}})}});
  CHECK(fibonacci_tree() == TreeSystem{{L({{0, 1}})}, {L({{0, 1}, {0}})}});
  CHECK(sturmian_tree() == TreeSystem{{L({{0, 1}})}, {L({{0, 1}, {1}})}});
  CHECK(regular_tree(2) == TreeSystem{{L({{0, 0, 0}})}, {L({{0, 0}})}});
  CHECK(ary_tree(3) == TreeSystem{{}, {L({{0, 0, 0}})}});
  CHECK(ary_tree(2) == cantor_tree());
  CHECK(ended_tree(3) == TreeSystem{{L({{0, 0, 0}})}, {L({{0}})}});
  CHECK_THROWS_AS(regular_tree(0), domain_error);
  CHECK_THROWS_AS(ary_tree(0), domain_error);
}

TEST_CASE("validation accepts builtins and reports violations") {
  for (const auto& t : {cantor_tree(), fibonacci_tree(), sturmian_tree(), regular_tree(3),
                        ary_tree(4), ended_tree(5)}) {
    auto rep = validate(t);
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
  }

  TreeSystem childless{{L({{0}})}, {L({{}})}};  // empty child list in the cycle
  CHECK_FALSE(validate(childless).ok);
  CHECK_THROWS_AS(require_valid(childless), domain_error);

  TreeSystem bad_index{{L({{0, 2}})}, {L({{0}})}};  // 2 exceeds next level
  CHECK_FALSE(validate(bad_index).ok);

  TreeSystem wide_root{{L({{0}, {0}})}, {L({{0}})}};  // two classes at level 0
  CHECK_FALSE(validate(wide_root).ok);

  // explicit systems: exactly the last level childless
  CHECK(validate(truncate(cantor_tree(), 3)).ok);
  TreeSystem early_leaf{{L({{0, 0}}), L({{}, {0}}), L({{}})}, {}};
  CHECK_FALSE(validate(early_leaf).ok);
}

TEST_CASE("level profiles match the known counting sequences") {
  CHECK(level_profile(cantor_tree(), 3) == ints({1, 2, 4, 8}));
  CHECK(level_profile(fibonacci_tree(), 5) == ints({1, 2, 3, 5, 8, 13}));
  CHECK(level_profile(sturmian_tree(), 5) == ints({1, 2, 3, 4, 5, 6}));
  CHECK(level_profile(regular_tree(2), 3) == ints({1, 3, 6, 12}));
  CHECK(level_profile(ary_tree(3), 3) == ints({1, 3, 9, 27}));
  CHECK(level_profile(ended_tree(3), 3) == ints({1, 3, 3, 3}));

  // independent oracle: explicit path enumeration
  for (const auto& t : {fibonacci_tree(), sturmian_tree(), regular_tree(2), ended_tree(4)}) {
    auto prof = level_profile(t, 5);
    for (std::size_t i = 0; i <= 5; ++i) CHECK(prof[i] == oracle::count_vertices(t, i));
  }
}

TEST_CASE("class_at and vertex counts") {
  const auto fib = fibonacci_tree();
  CHECK(class_at(fib, {}) == 0);
  CHECK(class_at(fib, {0}) == 0);
  CHECK(class_at(fib, {1}) == 1);
  CHECK(class_at(fib, {0, 1}) == 1);
  CHECK(class_at(fib, {1, 0}) == 0);
  CHECK_THROWS_AS(class_at(fib, {2}), domain_error);
  CHECK_THROWS_AS(class_at(fib, {1, 1}), domain_error);  // 1-class has one child
  CHECK(class_vertex_counts(fib, 3) == ints({3, 2}));
  CHECK(class_vertex_counts(fib, 0) == ints({1}));
}

TEST_CASE("truncate produces valid explicit systems agreeing on profiles") {
  for (const auto& t : {cantor_tree(), fibonacci_tree(), sturmian_tree()}) {
    auto cut = truncate(t, 4);
    CHECK_FALSE(cut.eventually_periodic());
    CHECK(cut.num_levels() == 5);
    CHECK(validate(cut).ok);
    CHECK(level_profile(cut, 4) == level_profile(t, 4));
  }
  auto shallower = truncate(truncate(fibonacci_tree(), 4), 2);
  CHECK(validate(shallower).ok);
  CHECK_THROWS_AS(truncate(truncate(fibonacci_tree(), 2), 4), domain_error);
}

TEST_CASE("from_sft realizes vertex-shift trees") {
  const auto full2 = from_sft({{1, 1}, {1, 1}});
  CHECK(full2 == TreeSystem{{L({{0, 1}})}, {L({{0, 1}, {0, 1}})}});
  // both symbol subtrees are full binary: collapse merges them
  CHECK(collapse(full2).tree == TreeSystem{{L({{0, 0}})}, {L({{0, 0}})}});

  const auto two_points = from_sft({{0, 1}, {1, 0}});
  CHECK(level_profile(two_points, 4) == ints({1, 2, 2, 2, 2}));
  // the two single-ray subtrees are rooted isometric
  CHECK(collapse(two_points).tree == TreeSystem{{L({{0, 0}})}, {L({{0}})}});

  const auto sft3 = from_sft({{1, 1, 1}, {1, 1, 1}, {1, 0, 0}});
  CHECK(validate(sft3).ok);
  auto col = collapse(sft3);
  CHECK(col.tree == TreeSystem{{L({{0, 0, 1}})}, {L({{0, 0, 1}, {0}})}});
  CHECK(col.class_map[1][0] == col.class_map[1][1]);  // symbols 0,1 merge
  CHECK(col.class_map[1][2] != col.class_map[1][0]);

  CHECK_THROWS_AS(from_sft({{1, 0}, {0, 0}}), domain_error);  // all-zero row
  CHECK_THROWS_AS(from_sft({{1, 0}, {0}}), domain_error);     // not square
}

TEST_CASE("from_cfrac realizes the continued-fraction trees") {
  CHECK(from_cfrac({}, {1}) == fibonacci_tree());
  CHECK(from_cfrac({1}, {2}) == TreeSystem{{L({{0, 1}})}, {L({{0, 0, 1}, {0}})}});
  CHECK(level_profile(from_cfrac({1}, {2}), 3) == ints({1, 2, 4, 10}));
  // empty cycle means a tail of ones
  CHECK(from_cfrac({2}, {}) == from_cfrac({2}, {1}));

  // a_0 = 0: the root only reaches the forced class; the (unreachable)
  // level-1 free class still has a_1 + 1 children by the descriptor rule
  const auto z = from_cfrac({0, 3}, {2});
  CHECK(z.prefix[0].classes[0].children == std::vector<int>{1});
  CHECK(level_desc(z, 1).classes[0].children.size() == 4);
  CHECK(validate(z).ok);

  CHECK_THROWS_AS(from_cfrac({-1}, {2}), domain_error);
  CHECK_THROWS_AS(from_cfrac({1}, {0}), domain_error);
  CHECK_THROWS_AS(from_cfrac({1, 0}, {1}), domain_error);
  CHECK_THROWS_AS(from_cfrac({}, {}), domain_error);
}

TEST_CASE("collapse merges duplicated descriptors and trims unreachable classes") {
  // two copies of the Fibonacci free class listed side by side
  TreeSystem doubled{{L({{0, 1, 2}})}, {L({{0, 2}, {0, 2}, {0}})}};
  auto col = collapse(doubled);
  CHECK(col.tree == TreeSystem{{L({{0, 0, 1}})}, {L({{0, 1}, {0}})}});
  CHECK(col.class_map[1] == std::vector<int>{0, 0, 1});
  CHECK(col.colors[1][0] == col.colors[1][1]);
  CHECK(col.colors[1][0] != col.colors[1][2]);

  // unreachable class dropped
  TreeSystem spare{{L({{0}})}, {L({{0}, {0, 0}})}};
  auto trimmed = collapse(spare);
  CHECK(trimmed.tree == TreeSystem{{L({{0}})}, {L({{0}})}});
  CHECK(trimmed.class_map[1][1] == -1);
}

TEST_CASE("collapse is idempotent and preserves unfoldings") {
  std::vector<TreeSystem> samples = {cantor_tree(),
                                     fibonacci_tree(),
                                     sturmian_tree(),
                                     ended_tree(3),
                                     from_sft({{1, 1, 1}, {1, 1, 1}, {1, 0, 0}}),
                                     from_cfrac({1}, {2}),
                                     truncate(fibonacci_tree(), 4)};
  std::mt19937_64 gen(2026);
  for (int i = 0; i < 20; ++i) samples.push_back(oracle::random_tree_system(gen));

  for (const auto& t : samples) {
    auto once = collapse(t);
    CHECK(collapse(once.tree).tree == once.tree);
    // the collapsed system unfolds to the same unordered tree
    CHECK(oracle::canon(oracle::unfold(t, 0, 0, 7)) ==
          oracle::canon(oracle::unfold(once.tree, 0, 0, 7)));
    CHECK(level_profile(t, 5) == level_profile(once.tree, 5));
  }
}

TEST_CASE("bisimulation colors agree with deep canonical forms") {
  std::vector<TreeSystem> samples = {fibonacci_tree(), sturmian_tree(),
                                     from_sft({{1, 1, 1}, {1, 1, 1}, {1, 0, 0}}),
                                     from_cfrac({1}, {2})};
  std::mt19937_64 gen(77);
  for (int i = 0; i < 12; ++i) samples.push_back(oracle::random_tree_system(gen, 2, 2, 2, 2));

  for (const auto& t : samples) {
    auto col = collapse(t);
    const std::size_t slots = num_slots(t);
    // deep enough to outlast partition refinement on these class counts
    const std::size_t depth = 10;
    std::vector<std::vector<std::string>> cn(slots);  // slot s realized at level s
    for (std::size_t s = 0; s < slots; ++s)
      for (std::size_t c = 0; c < slot_desc(t, s).classes.size(); ++c)
        cn[s].push_back(oracle::canon(oracle::unfold(t, s, static_cast<int>(c), depth)));
    // colors live across slots: equal color <=> equal deep unordered canon
    for (std::size_t s1 = 0; s1 < slots; ++s1)
      for (std::size_t s2 = 0; s2 < slots; ++s2)
        for (std::size_t c1 = 0; c1 < cn[s1].size(); ++c1)
          for (std::size_t c2 = 0; c2 < cn[s2].size(); ++c2)
            CHECK((col.colors[s1][c1] == col.colors[s2][c2]) == (cn[s1][c1] == cn[s2][c2]));
  }
}

TEST_CASE("ordered colors distinguish order, unordered colors do not") {
  // L2 classes: chain d0, doubling d1; L1 classes list them in both orders
  TreeSystem t{{L({{0}})}, {L({{0, 1}, {1, 0}}), L({{0}, {0, 0}})}};
  REQUIRE(validate(t).ok);
  auto col = collapse(t);
  CHECK(col.colors[1][0] == col.colors[1][1]);
  CHECK(col.ordered_colors[1][0] != col.ordered_colors[1][1]);
  // ordered equality implies unordered equality on all samples
  std::mt19937_64 gen(5);
  for (int i = 0; i < 12; ++i) {
    auto r = oracle::random_tree_system(gen);
    auto c = collapse(r);
    for (std::size_t s = 0; s < c.colors.size(); ++s)
      for (std::size_t a = 0; a < c.colors[s].size(); ++a)
        for (std::size_t b = 0; b < c.colors[s].size(); ++b)
          if (c.ordered_colors[s][a] == c.ordered_colors[s][b])
            CHECK(c.colors[s][a] == c.colors[s][b]);
  }
}

TEST_CASE("slot bookkeeping") {
  const auto fib = fibonacci_tree();
  CHECK(num_slots(fib) == 2);
  CHECK(slot_of_level(fib, 0) == 0);
  CHECK(slot_of_level(fib, 1) == 1);
  CHECK(slot_of_level(fib, 7) == 1);
  CHECK(slot_successor(fib, 0) == 1);
  CHECK(slot_successor(fib, 1) == 1);

  const auto t910 = TreeSystem{{}, {L({{0, 0}}), L({{0, 0, 0}})}};
  CHECK(slot_of_level(t910, 0) == 0);
  CHECK(slot_of_level(t910, 3) == 1);
  CHECK(slot_successor(t910, 1) == 0);

  const auto cut = truncate(fib, 2);
  CHECK(num_slots(cut) == 3);
  CHECK_THROWS_AS(slot_successor(cut, 2), domain_error);
}
