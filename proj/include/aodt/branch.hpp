#ifndef AODT_BRANCH_HPP
#define AODT_BRANCH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aodt/dataset.hpp"

namespace aodt {

// One feature=category condition of a branch.
struct Clause {
  int feature = 0;
  int value = 0;

  friend bool operator==(const Clause& a, const Clause& b) {
    return a.feature == b.feature && a.value == b.value;
  }
};

// A branch is a conjunction of clauses with no feature repeated. Clauses are
// kept sorted by feature index, which makes the key (and its textual form
// "(i,j)(i,j)...") unique per semantic branch, so permuted split orders
// deduplicate in the memo.
struct BranchKey {
  std::vector<Clause> clauses;

  std::size_t depth() const { return clauses.size(); }
  bool uses(int feature) const;
  std::string text() const;

  // Returns this key extended with (feature, value), keeping the sort order.
  BranchKey child(int feature, int value) const;

  friend bool operator==(const BranchKey& a, const BranchKey& b) {
    return a.clauses == b.clauses;
  }
  friend bool operator<(const BranchKey& a, const BranchKey& b);
};

struct BranchKeyHash {
  std::size_t operator()(const BranchKey& k) const;
};

// Builds a key from clauses in any order; a repeated feature index is a
// UsageError.
BranchKey canonical_key(std::vector<Clause> clauses);

// The data statistics of a branch: which rows fall in it and how their
// labels distribute.
struct BranchStats {
  std::vector<int32_t> members;        // ascending row indices
  std::vector<int64_t> class_counts;   // size K
  int64_t n_l = 0;
  int majority_class = 0;              // ties go to the smaller class index
  int64_t accuracy_count = 0;          // class_counts[majority_class]
};

BranchStats stats_from_members(const EncodedDataset& ds,
                               std::vector<int32_t> members);
BranchStats root_stats(const EncodedDataset& ds);

// accuracy_count / n, the branch's contribution to tree accuracy when it is
// made a leaf. An empty branch contributes 0.
double branch_accuracy(const BranchStats& stats, std::size_t n);

// Partitions the parent's members over the categories of `feature`, which
// must not occur in the parent key. Returns one member set per category, in
// category order; empty categories yield empty sets. The rows are filtered
// through a shrinking working set (each matched row is removed before the
// next category is scanned, and the last category takes the remainder); the
// result is identical to filtering each category independently.
std::vector<std::vector<int32_t>> split_members(
    const std::vector<int32_t>& parent_members, int feature,
    const EncodedDataset& ds);

// split_members plus child keys and statistics. The engine itself uses
// split_members and computes statistics only for children missing from its
// memo; this convenience form is for callers that always want the stats.
std::vector<std::pair<BranchKey, BranchStats>> split_branch(
    const BranchKey& parent, const std::vector<int32_t>& parent_members,
    int feature, const EncodedDataset& ds);

}  // namespace aodt

#endif  // AODT_BRANCH_HPP
