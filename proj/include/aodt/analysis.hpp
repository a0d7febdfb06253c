#ifndef AODT_ANALYSIS_HPP
#define AODT_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aodt/branch.hpp"
#include "aodt/heuristics.hpp"
#include "aodt/tree.hpp"

namespace aodt {

using BigInt = boost::multiprecision::cpp_int;

// Exhaustive dynamic program over every branch: the exact optimum of the
// regularized objective with no bounds, no queues and no pruning, kept
// deliberately independent of the search engine so the two can check each
// other. Tie-breaking matches the engine: stopping wins value ties, then
// the smallest feature index.
class Oracle {
 public:
  // Refuses q > 12 unless force is set; the table is exponential in q.
  Oracle(const EncodedDataset& ds, double lambda,
         std::optional<int> max_depth = std::nullopt, bool force = false);

  double optimal_value() const;
  DecisionTree optimal_tree() const;

  // Exact optimum for one branch (computes on demand, memoized).
  double value(const BranchKey& key);

  // The per-branch optima accumulated so far, for invariant checks against
  // a search run's memo.
  const std::map<BranchKey, double>& values() const { return values_; }

  // Best achievable accuracy with at most `splits` internal nodes, for
  // budgets 0..max_splits. frontier[s] is non-decreasing in s.
  std::vector<double> accuracy_frontier(int max_splits);

 private:
  struct Entry {
    double value = 0.0;
    int best_action = kTerminalAction;
  };
  const Entry& solve(const BranchKey& key, const std::vector<int32_t>& members);
  TreeNode build(const BranchKey& key,
                 const std::vector<int32_t>& members) const;
  std::size_t depth_cap() const;
  double best_accuracy(const BranchKey& key,
                       const std::vector<int32_t>& members, int budget);

  const EncodedDataset& ds_;
  double lambda_;
  std::optional<int> max_depth_;
  std::map<BranchKey, Entry> table_;
  std::map<BranchKey, double> values_;
  std::map<std::pair<BranchKey, int>, double> accuracy_table_;
};

std::pair<double, DecisionTree> brute_force_optimal(
    const EncodedDataset& ds, double lambda,
    std::optional<int> max_depth = std::nullopt, bool force = false);

// Inputs for the evaluation-count bound. C is the uniform category count;
// for mixed datasets use the maximum C_i, which keeps the bound valid.
struct BoundInputs {
  int q = 2;
  int C = 2;
  int K = 2;
  double lambda = 0.01;
  std::optional<int> s_star;       // splits of the optimal tree, if known
  std::optional<double> h_star;    // accuracy of the optimal tree, if known
};

// Depth cutoff for the bound: floor(1/(K*lambda)) - 1 capped at q, or the
// problem-dependent floor(s* - 1 + (1 - H*)/lambda) capped at q when the
// optimum is supplied. Negative means the bound sum is empty.
int bound_kappa(const BoundInputs& in);

// Sum over h = 0..kappa of (q - h) * C^(h+1) * binom(q, h), evaluated in
// exact integer arithmetic. Zero when kappa < 0.
BigInt gamma_bound(const BoundInputs& in);

BigInt binomial(int n, int k);

// floor(log10(x)) for positive x; -1 for zero (the bound can be 0).
int log10_floor(const BigInt& x);

// Closed form 3^(qC) - (2C+1)^q for the number of one-hot branch
// expressions that describe no reachable cell of the original categorical
// space.
BigInt unnecessary_branch_count(int q, int C);

// Exact count by enumerating all 3^(qC) clause assignments over the one-hot
// features (each binary feature absent, =0 or =1) and testing whether any
// original-space input satisfies them. Guarded to qC <= 12. Diverges from
// the closed form: for (1,2) the closed form gives 4 but only 2 assignments
// are genuinely unsatisfiable, and the tools report both numbers.
std::int64_t enumerate_empty_branches(int q, int C);

}  // namespace aodt

#endif  // AODT_ANALYSIS_HPP
