#include "aodt/heuristics.hpp"

#include <algorithm>

namespace aodt {

bool action_entry_before(const ActionEntry& a, const ActionEntry& b) {
  if (a.q_value != b.q_value) return a.q_value > b.q_value;
  if (a.solved_contribution != b.solved_contribution) {
    return a.solved_contribution > b.solved_contribution;
  }
  return a.feature < b.feature;
}

void ActionQueue::push(ActionEntry entry) {
  entries_.push_back(std::move(entry));
}

std::size_t ActionQueue::best_index() const {
  if (entries_.empty()) throw UsageError("peek on empty action queue");
  std::size_t best = 0;
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (action_entry_before(entries_[i], entries_[best])) best = i;
  }
  return best;
}

const ActionEntry& ActionQueue::peek() const { return entries_[best_index()]; }

ActionEntry ActionQueue::pop() {
  std::size_t i = best_index();
  ActionEntry out = std::move(entries_[i]);
  entries_[i] = std::move(entries_.back());
  entries_.pop_back();
  return out;
}

double q_terminal(const BranchStats& stats, std::size_t n) {
  return branch_accuracy(stats, n);
}

double q_split(double lambda, const std::vector<double>& child_values) {
  double q = -lambda;
  for (double v : child_values) q += v;
  return q;
}

InitialBound purification_bound(const BranchStats& stats, std::size_t n,
                                double lambda, bool has_split_actions) {
  double terminal = branch_accuracy(stats, n);
  InitialBound out;
  if (!has_split_actions) {
    out.value = terminal;
    out.solved = true;
    return out;
  }
  double frequency = static_cast<double>(stats.n_l) / static_cast<double>(n);
  out.value = std::max(terminal, -lambda + frequency);
  out.solved = out.value <= terminal + kValueEps;
  return out;
}

double v_update(double q_terminal_value, const ActionQueue& queue) {
  if (queue.empty()) return q_terminal_value;
  return std::max(q_terminal_value, queue.peek().q_value);
}

}  // namespace aodt
