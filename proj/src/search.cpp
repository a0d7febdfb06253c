#include "aodt/search.hpp"

#include <algorithm>

namespace aodt {
namespace {

// Deterministic tie order among candidate children during selection.
bool key_before(const BranchKey& a, const BranchKey& b) { return a < b; }

}  // namespace

SearchEngine::SearchEngine(const EncodedDataset& ds, SearchConfig config)
    : ds_(ds), config_(std::move(config)) {
  if (!(config_.lambda > 0.0 && config_.lambda < 1.0)) {
    throw UsageError("lambda must lie strictly between 0 and 1");
  }
  if (config_.max_depth && *config_.max_depth < 1) {
    throw UsageError("max depth must be at least 1");
  }
  if (ds_.n == 0 || ds_.q == 0) {
    throw UsageError("dataset has no rows or no features");
  }
  std::vector<int32_t> all(ds_.n);
  for (std::size_t r = 0; r < ds_.n; ++r) all[r] = static_cast<int32_t>(r);
  // The root's statistics are the baseline, not a search evaluation.
  root_ = intern(BranchKey{}, std::move(all), /*count_evaluation=*/false);
}

int SearchEngine::depth_cap() const {
  int cap = static_cast<int>(ds_.q);
  if (config_.max_depth) cap = std::min(cap, *config_.max_depth);
  return cap;
}

bool SearchEngine::has_split_actions(int depth) const {
  return depth < depth_cap();
}

BranchNode* SearchEngine::intern(const BranchKey& key,
                                 std::vector<int32_t> members,
                                 bool count_evaluation) {
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second.get();

  auto node = std::make_unique<BranchNode>();
  node->key = key;
  node->depth = static_cast<int>(key.depth());
  node->stats = stats_from_members(ds_, std::move(members));
  node->q_terminal = q_terminal(node->stats, ds_.n);
  InitialBound init = purification_bound(node->stats, ds_.n, config_.lambda,
                                         has_split_actions(node->depth));
  node->v_upper = init.value;
  node->solved = init.solved;
  node->terminal_opt = init.solved;
  node->v_greedy = node->q_terminal;
  node->best_greedy_action = kTerminalAction;
  if (count_evaluation) ++stats_.evaluations;

  BranchNode* raw = node.get();
  memo_.emplace(key, std::move(node));
  return raw;
}

std::pair<BranchNode*, std::vector<BranchNode*>> SearchEngine::select() {
  BranchNode* cur = root_;
  std::vector<BranchNode*> path{cur};
  while (true) {
    if (cur->solved || !cur->expanded || cur->queue.empty()) {
      return {cur, path};
    }
    const ActionEntry& best = cur->queue.peek();
    if (cur->q_terminal >= best.q_value - kValueEps) {
      // Stopping is (at least tied for) best here; nothing to descend into.
      return {cur, path};
    }
    // The entry's unsolved set may be stale: children can have been solved
    // through other parents since it was last refreshed.
    BranchNode* pick = nullptr;
    for (const BranchKey& k : best.unsolved_children) {
      BranchNode* child = memo_.at(k).get();
      if (child->solved) continue;
      if (!pick) {
        pick = child;
        continue;
      }
      double a = config_.child_choice == ChildChoice::kLowestUpper
                     ? child->v_upper
                     : child->v_greedy;
      double b = config_.child_choice == ChildChoice::kLowestUpper
                     ? pick->v_upper
                     : pick->v_greedy;
      if (a < b || (a == b && key_before(child->key, pick->key))) {
        pick = child;
      }
    }
    if (!pick) {
      // Every child of the best action is solved; the caller skips
      // expansion and backpropagation will fold the news in.
      return {cur, path};
    }
    cur = pick;
    path.push_back(cur);
  }
}

void SearchEngine::expand(BranchNode& node) {
  if (node.expanded) {
    throw UsageError("branch " + node.key.text() + " already expanded");
  }
  if (node.solved) {
    throw UsageError("expanding solved branch " + node.key.text());
  }
  if (!has_split_actions(node.depth)) {
    throw UsageError("branch " + node.key.text() + " has no split actions");
  }
  for (int f = 0; f < static_cast<int>(ds_.q); ++f) {
    if (node.key.uses(f)) continue;
    std::vector<std::vector<int32_t>> parts =
        split_members(node.stats.members, f, ds_);
    ActionEntry entry;
    entry.feature = f;
    entry.solved_contribution = -config_.lambda;
    double open_sum = 0.0;
    std::vector<BranchKey> child_keys;
    child_keys.reserve(parts.size());
    for (int j = 0; j < static_cast<int>(parts.size()); ++j) {
      BranchKey ck = node.key.child(f, j);
      bool fresh = memo_.find(ck) == memo_.end();
      BranchNode* child = intern(ck, std::move(parts[j]), fresh);
      if (child->solved) {
        entry.solved_contribution += child->v_upper;
      } else {
        entry.unsolved_children.push_back(ck);
        open_sum += child->v_upper;
      }
      child_keys.push_back(std::move(ck));
    }
    entry.q_value = entry.solved_contribution + open_sum;
    node.children.emplace_back(f, std::move(child_keys));
    node.queue.push(std::move(entry));
  }
  node.expanded = true;
  update_node(node);
}

void SearchEngine::refresh_entry(ActionEntry& entry) const {
  double open_sum = 0.0;
  std::vector<BranchKey> still_open;
  still_open.reserve(entry.unsolved_children.size());
  for (const BranchKey& k : entry.unsolved_children) {
    const BranchNode* child = memo_.at(k).get();
    if (child->solved) {
      entry.solved_contribution += child->v_upper;
    } else {
      open_sum += child->v_upper;
      still_open.push_back(k);
    }
  }
  entry.unsolved_children = std::move(still_open);
  entry.q_value = entry.solved_contribution + open_sum;
}

void SearchEngine::update_node(BranchNode& node) {
  if (node.expanded && !node.queue.empty()) {
    // Lazy fixpoint: refresh the top entry until it stays on top. Stale
    // entries below it only ever overestimate, so a refreshed entry that
    // still outranks them is the true maximum.
    while (true) {
      ActionEntry entry = node.queue.pop();
      refresh_entry(entry);
      int feature = entry.feature;
      node.queue.push(std::move(entry));
      if (node.queue.peek().feature == feature) break;
    }
  }
  if (node.expanded || !node.queue.empty()) {
    const bool have_queue = !node.queue.empty();
    double best_q = have_queue ? node.queue.peek().q_value : node.q_terminal;
    node.v_upper = std::max(node.q_terminal, best_q);
    node.terminal_opt = !have_queue || node.q_terminal >= best_q - kValueEps;
    node.solved = node.terminal_opt ||
                  node.queue.peek().unsolved_children.empty();
  }
  // Greedy values: the best objective actually realizable below this node
  // with what the graph knows so far. Only ever rises.
  double g = node.q_terminal;
  int action = kTerminalAction;
  for (const auto& [f, kids] : node.children) {
    double sum = -config_.lambda;
    for (const BranchKey& k : kids) sum += memo_.at(k)->v_greedy;
    if (sum > g) {
      g = sum;
      action = f;
    }
  }
  if (g > node.v_greedy) {
    node.v_greedy = g;
    node.best_greedy_action = action;
  }
}

void SearchEngine::backpropagate(const std::vector<BranchNode*>& path) {
  if (path.empty() || path.front() != root_) {
    throw UsageError("backpropagation path must start at the root");
  }
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    update_node(**it);
  }
}

DecisionTree SearchEngine::fit() {
  auto started = std::chrono::steady_clock::now();
  auto out_of_budget = [&]() {
    if (config_.max_iterations && stats_.iterations >= *config_.max_iterations)
      return true;
    if (!config_.timeout_seconds) return false;
    std::chrono::duration<double> used =
        std::chrono::steady_clock::now() - started;
    return used.count() >= *config_.timeout_seconds;
  };

  while (!root_->solved) {
    if (out_of_budget()) break;
    ++stats_.iterations;
    auto [node, path] = select();
    if (!node->solved && !node->expanded && has_split_actions(node->depth)) {
      expand(*node);
    }
    backpropagate(path);
    if (tracing_) {
      trace_.push_back({stats_.iterations, node->key.text(), root_->v_upper,
                        root_->v_greedy, memo_.size(), stats_.evaluations});
    }
    if (config_.on_iteration) config_.on_iteration(memo_, stats_);
  }

  std::chrono::duration<double> used =
      std::chrono::steady_clock::now() - started;
  stats_.elapsed_seconds = used.count();
  stats_.termination =
      root_->solved ? Termination::kSolved : Termination::kTimeout;
  return root_->solved ? infer() : infer_anytime();
}

TreeNode SearchEngine::build_optimal(const BranchNode& node) const {
  if (node.terminal_opt || node.queue.empty()) {
    TreeNode leaf;
    leaf.predicted_class = node.stats.majority_class;
    return leaf;
  }
  const ActionEntry& best = node.queue.peek();
  if (!best.unsolved_children.empty()) {
    throw UsageError("optimal action at " + node.key.text() +
                     " has open children; memo is not solved");
  }
  TreeNode split;
  split.feature = best.feature;
  for (const auto& [f, kids] : node.children) {
    if (f != best.feature) continue;
    for (const BranchKey& k : kids) {
      split.children.push_back(build_optimal(*memo_.at(k)));
    }
    break;
  }
  return split;
}

DecisionTree SearchEngine::infer() const {
  if (!root_->solved) {
    throw UsageError("inference requires a solved root");
  }
  return finish_tree(build_optimal(*root_), /*solved=*/true);
}

double SearchEngine::refresh_greedy(
    const BranchKey& key, std::unordered_map<const BranchNode*, double>& done) {
  BranchNode* node = memo_.at(key).get();
  auto it = done.find(node);
  if (it != done.end()) return it->second;
  double g = node->q_terminal;
  int action = kTerminalAction;
  if (node->expanded) {
    for (const auto& [f, kids] : node->children) {
      double sum = -config_.lambda;
      for (const BranchKey& k : kids) sum += refresh_greedy(k, done);
      if (sum > g) {
        g = sum;
        action = f;
      }
    }
  }
  // Recomputing from fresh child values can only raise the stored value:
  // stored sums were taken when children knew less.
  if (g > node->v_greedy) {
    node->v_greedy = g;
    node->best_greedy_action = action;
  }
  done.emplace(node, node->v_greedy);
  return node->v_greedy;
}

TreeNode SearchEngine::build_greedy(const BranchNode& node) const {
  if (node.best_greedy_action == kTerminalAction) {
    TreeNode leaf;
    leaf.predicted_class = node.stats.majority_class;
    return leaf;
  }
  TreeNode split;
  split.feature = node.best_greedy_action;
  for (const auto& [f, kids] : node.children) {
    if (f != node.best_greedy_action) continue;
    for (const BranchKey& k : kids) {
      split.children.push_back(build_greedy(*memo_.at(k)));
    }
    break;
  }
  return split;
}

DecisionTree SearchEngine::infer_anytime() {
  std::unordered_map<const BranchNode*, double> done;
  refresh_greedy(root_->key, done);
  return finish_tree(build_greedy(*root_), root_->solved);
}

DecisionTree SearchEngine::finish_tree(TreeNode root, bool solved) const {
  return make_tree(ds_, std::move(root), config_.lambda, solved);
}

std::pair<DecisionTree, SearchStats> fit(const EncodedDataset& ds,
                                         const SearchConfig& config) {
  SearchEngine engine(ds, config);
  DecisionTree tree = engine.fit();
  return {std::move(tree), engine.stats()};
}

}  // namespace aodt
