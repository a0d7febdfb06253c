#include <doctest.h>

#include <random>
#include <vector>

#include "aodt/heuristics.hpp"

using namespace aodt;

namespace {

BranchStats make_stats(std::vector<int64_t> counts) {
  BranchStats s;
  s.class_counts = counts;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    s.n_l += counts[k];
    if (counts[k] > s.accuracy_count) {
      s.accuracy_count = counts[k];
      s.majority_class = static_cast<int>(k);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("initial bound takes the better of stopping now and one split") {
  // 3 of 10 rows correct as a leaf, branch holds 5 of 10 rows: one split
  // could at best reach 0.5 - 0.1.
  BranchStats s = make_stats({3, 2});
  InitialBound b = purification_bound(s, 10, 0.1, true);
  CHECK(b.value == doctest::Approx(0.4).epsilon(1e-12));
  CHECK_FALSE(b.solved);
}

TEST_CASE("a pure branch is solved at initialization") {
  BranchStats s = make_stats({5, 0});
  InitialBound b = purification_bound(s, 10, 0.1, true);
  CHECK(b.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.solved);
}

TEST_CASE("without split actions the bound is the terminal value") {
  BranchStats s = make_stats({3, 2});
  InitialBound b = purification_bound(s, 10, 0.1, false);
  CHECK(b.value == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(b.solved);
}

TEST_CASE("a large penalty solves impure branches immediately") {
  BranchStats s = make_stats({3, 2});
  InitialBound b = purification_bound(s, 10, 0.3, true);
  CHECK(b.value == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(b.solved);
}

TEST_CASE("terminal and split valuations") {
  BranchStats s = make_stats({3, 2});
  CHECK(q_terminal(s, 10) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(q_split(0.05, {0.2, 0.3, 0.1}) ==
        doctest::Approx(0.55).epsilon(1e-12));
  CHECK(q_split(0.05, {}) == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("v_update keeps the better of stopping and the best action") {
  ActionQueue queue;
  CHECK(v_update(0.4, queue) == doctest::Approx(0.4));
  ActionEntry e;
  e.q_value = 0.6;
  e.feature = 1;
  queue.push(e);
  CHECK(v_update(0.4, queue) == doctest::Approx(0.6));
  CHECK(v_update(0.7, queue) == doctest::Approx(0.7));
}

TEST_CASE("queue ordering: value desc, solved contribution desc, feature asc") {
  ActionEntry a{0.5, -0.01, 3, {}};
  ActionEntry b{0.5, -0.01, 1, {}};
  ActionEntry c{0.5, 0.10, 7, {}};
  ActionEntry d{0.6, -0.30, 9, {}};
  CHECK(action_entry_before(d, c));
  CHECK(action_entry_before(c, b));
  CHECK(action_entry_before(b, a));
  CHECK_FALSE(action_entry_before(a, b));

  ActionQueue queue;
  for (const ActionEntry& e : {a, b, c, d}) queue.push(e);
  CHECK(queue.peek().feature == 9);
  CHECK(queue.pop().feature == 9);
  CHECK(queue.pop().feature == 7);
  CHECK(queue.pop().feature == 1);
  CHECK(queue.pop().feature == 3);
  CHECK(queue.empty());
  CHECK_THROWS_AS(queue.peek(), UsageError);
}

TEST_CASE("popping always yields the queue's best entry") {
  std::mt19937 rng(11);
  ActionQueue queue;
  std::vector<ActionEntry> entries;
  for (int i = 0; i < 60; ++i) {
    ActionEntry e;
    e.q_value = static_cast<double>(rng() % 10) / 10.0;
    e.solved_contribution = static_cast<double>(rng() % 5) / 10.0 - 0.2;
    e.feature = i;
    entries.push_back(e);
    queue.push(e);
  }
  ActionEntry prev = queue.pop();
  while (!queue.empty()) {
    ActionEntry next = queue.pop();
    CHECK_FALSE(action_entry_before(next, prev));
    prev = next;
  }
}
