#ifndef AODT_HEURISTICS_HPP
#define AODT_HEURISTICS_HPP

#include <cstddef>
#include <vector>

#include "aodt/branch.hpp"

namespace aodt {

// Absolute tolerance for value comparisons (is a split's bound tied with the
// terminal value, is a branch solved at initialization). Values live in
// [-lambda*q, 1] and are sums of count/n fractions and multiples of lambda,
// so 1e-10 cleanly separates genuine ties from distinct values.
inline constexpr double kValueEps = 1e-10;

// The terminal "stop and predict the majority class" action, used wherever
// an action slot can hold either a feature index or the terminal marker.
inline constexpr int kTerminalAction = -1;

// Per split-action record. q_value is the current upper bound for taking
// this split: solved_contribution (the -lambda split cost plus the exact
// values of children already solved) plus the bound values of the children
// still open. Entries are updated lazily, so a stored q_value may be stale,
// but only ever on the high side.
struct ActionEntry {
  double q_value = 0.0;
  double solved_contribution = 0.0;
  int feature = 0;
  std::vector<BranchKey> unsolved_children;
};

// Max-priority collection of a branch's split actions, ordered by q_value
// descending, then solved_contribution descending, then feature ascending.
// The number of actions per branch is at most q, so a flat array with linear
// scans is plenty; what matters is that the ordering is total and
// deterministic.
class ActionQueue {
 public:
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  void push(ActionEntry entry);
  const ActionEntry& peek() const;  // UsageError when empty
  ActionEntry pop();                // removes and returns the best entry

  const std::vector<ActionEntry>& entries() const { return entries_; }

 private:
  std::size_t best_index() const;
  std::vector<ActionEntry> entries_;
};

// True when `a` outranks `b` in the queue order above.
bool action_entry_before(const ActionEntry& a, const ActionEntry& b);

// The value of stopping at the branch: accuracy_count / n. Fixed for the
// branch's lifetime.
double q_terminal(const BranchStats& stats, std::size_t n);

// The split upper bound: -lambda plus the children's bound values.
double q_split(double lambda, const std::vector<double>& child_values);

struct InitialBound {
  double value = 0.0;
  bool solved = false;  // the terminal value already attains the bound
};

// Initialization bound for a fresh branch. With split actions available the
// branch can at best spend one split and classify every row it contains
// correctly, so V = max(accuracy_count/n, -lambda + n_l/n); with no split
// actions left V is the terminal value itself. The branch is solved
// immediately when the terminal value attains the bound (within kValueEps).
InitialBound purification_bound(const BranchStats& stats, std::size_t n,
                                double lambda, bool has_split_actions);

// V(l) = max(q_terminal, best queue entry); q_terminal alone when the queue
// is empty.
double v_update(double q_terminal_value, const ActionQueue& queue);

}  // namespace aodt

#endif  // AODT_HEURISTICS_HPP
