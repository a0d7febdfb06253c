#ifndef AODT_SEARCH_HPP
#define AODT_SEARCH_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "aodt/heuristics.hpp"
#include "aodt/tree.hpp"

namespace aodt {

// Everything the engine knows about one memoized branch. Mutated only by
// the engine that owns the memo.
struct BranchNode {
  BranchKey key;
  BranchStats stats;
  int depth = 0;

  double q_terminal = 0.0;    // terminal value, fixed after initialization
  double v_upper = 0.0;       // V(l), non-increasing over the run
  double v_greedy = 0.0;      // best objective realized below l so far
  int best_greedy_action = kTerminalAction;

  bool expanded = false;
  bool solved = false;
  bool terminal_opt = false;  // the optimal action is to stop and predict

  // Child keys per expanded feature, in category order.
  std::vector<std::pair<int, std::vector<BranchKey>>> children;
  ActionQueue queue;
};

using Memo = std::unordered_map<BranchKey, std::unique_ptr<BranchNode>,
                                BranchKeyHash>;

enum class ChildChoice { kLowestGreedy, kLowestUpper };

struct SearchStats;

struct SearchConfig {
  double lambda = 0.01;                    // in (0, 1)
  std::optional<int> max_depth;            // cap on clauses per branch
  std::optional<double> timeout_seconds;   // checked at iteration boundaries
  std::optional<std::int64_t> max_iterations;  // test instrumentation
  ChildChoice child_choice = ChildChoice::kLowestGreedy;

  // Test instrumentation: called after each iteration's backpropagation
  // with the memo and running stats.
  std::function<void(const Memo&, const SearchStats&)> on_iteration;
};

enum class Termination { kSolved, kTimeout };

struct SearchStats {
  std::int64_t iterations = 0;
  std::int64_t evaluations = 0;  // fresh branch statistics computed
  double elapsed_seconds = 0.0;
  Termination termination = Termination::kSolved;
};

// One trace line per iteration, written tab-separated as
// iteration, selected branch key, V(root), V-hat(root), memo size,
// evaluations.
struct TraceRow {
  std::int64_t iteration = 0;
  std::string selected;
  double v_root = 0.0;
  double v_greedy_root = 0.0;
  std::size_t memo_size = 0;
  std::int64_t evaluations = 0;
};

class SearchEngine {
 public:
  SearchEngine(const EncodedDataset& ds, SearchConfig config);

  // Runs iterations until the root is solved or the budget runs out, then
  // extracts the optimal tree (solved) or the best greedy tree (timeout).
  DecisionTree fit();

  // The three phases, public so tests can drive them one step at a time.
  // select() walks best actions from the root and returns the stop node and
  // the full path; expand() grows the memo at an unexpanded node;
  // backpropagate() re-tightens bounds from the deepest path node upward.
  std::pair<BranchNode*, std::vector<BranchNode*>> select();
  void expand(BranchNode& node);
  void backpropagate(const std::vector<BranchNode*>& path);

  // Reads the optimal tree off a solved memo (UsageError otherwise).
  DecisionTree infer() const;

  // Refreshes greedy values over the expanded graph, then unrolls the best
  // greedy actions into a tree whose objective equals v_greedy(root).
  // Usable at any point of the run.
  DecisionTree infer_anytime();

  const SearchStats& stats() const { return stats_; }
  const Memo& memo() const { return memo_; }
  const BranchNode& root() const { return *root_; }
  std::vector<TraceRow> take_trace() { return std::move(trace_); }
  void set_tracing(bool on) { tracing_ = on; }

 private:
  BranchNode* intern(const BranchKey& key, std::vector<int32_t> members,
                     bool count_evaluation);
  void update_node(BranchNode& node);
  void refresh_entry(ActionEntry& entry) const;
  double refresh_greedy(const BranchKey& key,
                        std::unordered_map<const BranchNode*, double>& done);
  TreeNode build_optimal(const BranchNode& node) const;
  TreeNode build_greedy(const BranchNode& node) const;
  DecisionTree finish_tree(TreeNode root, bool solved) const;
  bool has_split_actions(int depth) const;
  int depth_cap() const;

  const EncodedDataset& ds_;
  SearchConfig config_;
  Memo memo_;
  BranchNode* root_ = nullptr;
  SearchStats stats_;
  std::vector<TraceRow> trace_;
  bool tracing_ = false;
};

// Convenience wrapper: build an engine, fit, and return tree plus stats.
std::pair<DecisionTree, SearchStats> fit(const EncodedDataset& ds,
                                         const SearchConfig& config);

}  // namespace aodt

#endif  // AODT_SEARCH_HPP
