#include "aodt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "aodt/heuristics.hpp"

namespace aodt {
namespace {

std::vector<int32_t> all_rows(const EncodedDataset& ds) {
  std::vector<int32_t> rows(ds.n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

}  // namespace

Oracle::Oracle(const EncodedDataset& ds, double lambda,
               std::optional<int> max_depth, bool force)
    : ds_(ds), lambda_(lambda), max_depth_(max_depth) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw UsageError("lambda must lie strictly between 0 and 1");
  }
  if (ds.n == 0) throw UsageError("dataset has no rows");
  if (max_depth_ && *max_depth_ < 1) {
    throw UsageError("max_depth must be at least 1");
  }
  if (ds.q > 12 && !force) {
    throw UsageError("exhaustive solve over " + std::to_string(ds.q) +
                     " features would enumerate every branch; pass force to "
                     "run it anyway");
  }
  solve(BranchKey{}, all_rows(ds_));
}

std::size_t Oracle::depth_cap() const {
  if (!max_depth_) return ds_.q;
  return std::min(static_cast<std::size_t>(*max_depth_), ds_.q);
}

const Oracle::Entry& Oracle::solve(const BranchKey& key,
                                   const std::vector<int32_t>& members) {
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;

  BranchStats stats = stats_from_members(ds_, members);
  Entry entry;
  entry.value = branch_accuracy(stats, ds_.n);
  entry.best_action = kTerminalAction;

  // An empty branch is a zero-value leaf; splitting it only costs lambda.
  if (!members.empty() && key.depth() < depth_cap()) {
    for (std::size_t f = 0; f < ds_.q; ++f) {
      int feature = static_cast<int>(f);
      if (key.uses(feature)) continue;
      auto parts = split_members(members, feature, ds_);
      double total = -lambda_;
      for (std::size_t j = 0; j < parts.size(); ++j) {
        total += solve(key.child(feature, static_cast<int>(j)), parts[j]).value;
      }
      if (total > entry.value + kValueEps) {
        entry.value = total;
        entry.best_action = feature;
      }
    }
  }

  auto [pos, inserted] = table_.emplace(key, entry);
  values_.emplace(key, entry.value);
  return pos->second;
}

double Oracle::optimal_value() const { return table_.at(BranchKey{}).value; }

DecisionTree Oracle::optimal_tree() const {
  TreeNode root = build(BranchKey{}, all_rows(ds_));
  return make_tree(ds_, std::move(root), lambda_, true);
}

double Oracle::value(const BranchKey& key) {
  auto it = table_.find(key);
  if (it != table_.end()) return it->second.value;
  std::vector<int32_t> members;
  for (std::size_t r = 0; r < ds_.n; ++r) {
    bool inside = true;
    for (const Clause& c : key.clauses) {
      if (ds_.value(r, static_cast<std::size_t>(c.feature)) != c.value) {
        inside = false;
        break;
      }
    }
    if (inside) members.push_back(static_cast<int32_t>(r));
  }
  return solve(key, members).value;
}

TreeNode Oracle::build(const BranchKey& key,
                       const std::vector<int32_t>& members) const {
  const Entry& entry = table_.at(key);
  if (entry.best_action == kTerminalAction) {
    TreeNode leaf;
    leaf.predicted_class = stats_from_members(ds_, members).majority_class;
    return leaf;
  }
  TreeNode split;
  split.feature = entry.best_action;
  auto parts = split_members(members, entry.best_action, ds_);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    split.children.push_back(
        build(key.child(entry.best_action, static_cast<int>(j)), parts[j]));
  }
  return split;
}

std::vector<double> Oracle::accuracy_frontier(int max_splits) {
  if (max_splits < 0) throw UsageError("max_splits must be at least 0");
  std::vector<double> frontier;
  frontier.reserve(static_cast<std::size_t>(max_splits) + 1);
  BranchKey root;
  std::vector<int32_t> rows = all_rows(ds_);
  for (int s = 0; s <= max_splits; ++s) {
    frontier.push_back(best_accuracy(root, rows, s) /
                       static_cast<double>(ds_.n));
  }
  return frontier;
}

double Oracle::best_accuracy(const BranchKey& key,
                             const std::vector<int32_t>& members, int budget) {
  if (members.empty()) return 0.0;
  auto memo_key = std::make_pair(key, budget);
  auto it = accuracy_table_.find(memo_key);
  if (it != accuracy_table_.end()) return it->second;

  BranchStats stats = stats_from_members(ds_, members);
  double best = static_cast<double>(stats.accuracy_count);
  if (budget >= 1 && key.depth() < depth_cap()) {
    int remaining = budget - 1;
    for (std::size_t f = 0; f < ds_.q; ++f) {
      int feature = static_cast<int>(f);
      if (key.uses(feature)) continue;
      auto parts = split_members(members, feature, ds_);
      // Distribute the remaining split budget over the children.
      std::vector<double> dp(static_cast<std::size_t>(remaining) + 1, 0.0);
      for (std::size_t j = 0; j < parts.size(); ++j) {
        BranchKey child = key.child(feature, static_cast<int>(j));
        std::vector<double> next(dp.size(), 0.0);
        for (int t = 0; t <= remaining; ++t) {
          for (int u = 0; u <= t; ++u) {
            double cand = dp[static_cast<std::size_t>(t - u)] +
                          best_accuracy(child, parts[j], u);
            if (cand > next[static_cast<std::size_t>(t)]) {
              next[static_cast<std::size_t>(t)] = cand;
            }
          }
        }
        dp = std::move(next);
      }
      if (dp.back() > best) best = dp.back();
    }
  }
  accuracy_table_.emplace(memo_key, best);
  return best;
}

std::pair<double, DecisionTree> brute_force_optimal(const EncodedDataset& ds,
                                                    double lambda,
                                                    std::optional<int> max_depth,
                                                    bool force) {
  Oracle oracle(ds, lambda, max_depth, force);
  return {oracle.optimal_value(), oracle.optimal_tree()};
}

int bound_kappa(const BoundInputs& in) {
  if (in.q < 2) throw UsageError("q must be at least 2");
  if (in.C < 2) throw UsageError("C must be at least 2");
  if (in.K < 2) throw UsageError("K must be at least 2");
  if (!(in.lambda > 0.0 && in.lambda < 1.0)) {
    throw UsageError("lambda must lie strictly between 0 and 1");
  }
  // The nudge keeps exact-integer quotients like 1/(2*0.05) from landing a
  // hair below their integer before the floor.
  double raw;
  if (in.s_star && in.h_star) {
    raw = std::floor(static_cast<double>(*in.s_star) - 1.0 +
                     (1.0 - *in.h_star) / in.lambda + 1e-9);
  } else {
    raw = std::floor(1.0 / (static_cast<double>(in.K) * in.lambda) + 1e-9) -
          1.0;
  }
  return static_cast<int>(std::min(raw, static_cast<double>(in.q)));
}

BigInt gamma_bound(const BoundInputs& in) {
  int kappa = bound_kappa(in);
  if (kappa < 0) return BigInt(0);
  BigInt total = 0;
  for (int h = 0; h <= kappa; ++h) {
    total += BigInt(in.q - h) *
             boost::multiprecision::pow(BigInt(in.C),
                                        static_cast<unsigned>(h + 1)) *
             binomial(in.q, h);
  }
  return total;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return BigInt(0);
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

int log10_floor(const BigInt& x) {
  if (x < 0) throw UsageError("log10 of a negative value");
  if (x == 0) return -1;
  return static_cast<int>(x.str().size()) - 1;
}

BigInt unnecessary_branch_count(int q, int C) {
  if (q < 1) throw UsageError("q must be at least 1");
  if (C < 2) throw UsageError("C must be at least 2");
  using boost::multiprecision::pow;
  return pow(BigInt(3), static_cast<unsigned>(q * C)) -
         pow(BigInt(2 * C + 1), static_cast<unsigned>(q));
}

std::int64_t enumerate_empty_branches(int q, int C) {
  if (q < 1) throw UsageError("q must be at least 1");
  if (C < 2) throw UsageError("C must be at least 2");
  int cells = q * C;
  if (cells > 12) {
    throw UsageError("enumerating 3^" + std::to_string(cells) +
                     " clause assignments is too large; keep q*C <= 12");
  }
  // One ternary digit per one-hot cell: 0 absent, 1 pinned to 0, 2 pinned
  // to 1. A branch is empty when some original feature admits no category.
  std::vector<int> state(static_cast<std::size_t>(cells), 0);
  std::int64_t empty = 0;
  while (true) {
    bool feasible = true;
    for (int f = 0; f < q && feasible; ++f) {
      int ones = 0;
      int zeros = 0;
      for (int j = 0; j < C; ++j) {
        int s = state[static_cast<std::size_t>(f * C + j)];
        if (s == 2) ++ones;
        if (s == 1) ++zeros;
      }
      if (ones >= 2 || (ones == 0 && zeros == C)) feasible = false;
    }
    if (!feasible) ++empty;

    std::size_t pos = 0;
    while (pos < state.size() && state[pos] == 2) {
      state[pos] = 0;
      ++pos;
    }
    if (pos == state.size()) break;
    ++state[pos];
  }
  return empty;
}

}  // namespace aodt
