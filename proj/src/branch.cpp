#include "aodt/branch.hpp"

#include <algorithm>

namespace aodt {

bool BranchKey::uses(int feature) const {
  for (const Clause& c : clauses) {
    if (c.feature == feature) return true;
    if (c.feature > feature) return false;
  }
  return false;
}

std::string BranchKey::text() const {
  std::string out;
  for (const Clause& c : clauses) {
    out += "(" + std::to_string(c.feature) + "," + std::to_string(c.value) + ")";
  }
  return out;
}

BranchKey BranchKey::child(int feature, int value) const {
  BranchKey out;
  out.clauses.reserve(clauses.size() + 1);
  bool placed = false;
  for (const Clause& c : clauses) {
    if (!placed && feature < c.feature) {
      out.clauses.push_back({feature, value});
      placed = true;
    }
    out.clauses.push_back(c);
  }
  if (!placed) out.clauses.push_back({feature, value});
  return out;
}

bool operator<(const BranchKey& a, const BranchKey& b) {
  return std::lexicographical_compare(
      a.clauses.begin(), a.clauses.end(), b.clauses.begin(), b.clauses.end(),
      [](const Clause& x, const Clause& y) {
        if (x.feature != y.feature) return x.feature < y.feature;
        return x.value < y.value;
      });
}

std::size_t BranchKeyHash::operator()(const BranchKey& k) const {
  std::size_t h = 1469598103934665603ull;  // FNV-1a over the clause ints
  for (const Clause& c : k.clauses) {
    h = (h ^ static_cast<std::size_t>(c.feature)) * 1099511628211ull;
    h = (h ^ static_cast<std::size_t>(c.value)) * 1099511628211ull;
  }
  return h;
}

BranchKey canonical_key(std::vector<Clause> clauses) {
  std::sort(clauses.begin(), clauses.end(),
            [](const Clause& a, const Clause& b) {
              return a.feature < b.feature;
            });
  for (std::size_t i = 1; i < clauses.size(); ++i) {
    if (clauses[i].feature == clauses[i - 1].feature) {
      throw UsageError("feature " + std::to_string(clauses[i].feature) +
                       " repeated in branch");
    }
  }
  return BranchKey{std::move(clauses)};
}

BranchStats stats_from_members(const EncodedDataset& ds,
                               std::vector<int32_t> members) {
  BranchStats s;
  s.members = std::move(members);
  s.class_counts.assign(ds.K, 0);
  for (int32_t r : s.members) ++s.class_counts[ds.labels[r]];
  s.n_l = static_cast<int64_t>(s.members.size());
  s.majority_class = 0;
  for (int k = 1; k < ds.K; ++k) {
    if (s.class_counts[k] > s.class_counts[s.majority_class]) {
      s.majority_class = k;
    }
  }
  s.accuracy_count = ds.K > 0 ? s.class_counts[s.majority_class] : 0;
  return s;
}

BranchStats root_stats(const EncodedDataset& ds) {
  std::vector<int32_t> all(ds.n);
  for (std::size_t r = 0; r < ds.n; ++r) all[r] = static_cast<int32_t>(r);
  return stats_from_members(ds, std::move(all));
}

double branch_accuracy(const BranchStats& stats, std::size_t n) {
  return static_cast<double>(stats.accuracy_count) / static_cast<double>(n);
}

std::vector<std::vector<int32_t>> split_members(
    const std::vector<int32_t>& parent_members, int feature,
    const EncodedDataset& ds) {
  int C = ds.categories[feature];
  const std::vector<int32_t>& col = ds.columns[feature];
  std::vector<std::vector<int32_t>> out(C);
  std::vector<int32_t> remaining = parent_members;
  std::vector<int32_t> next;
  for (int j = 0; j + 1 < C; ++j) {
    next.clear();
    for (int32_t r : remaining) {
      (col[r] == j ? out[j] : next).push_back(r);
    }
    remaining.swap(next);
  }
  out[C - 1] = std::move(remaining);
  return out;
}

std::vector<std::pair<BranchKey, BranchStats>> split_branch(
    const BranchKey& parent, const std::vector<int32_t>& parent_members,
    int feature, const EncodedDataset& ds) {
  if (parent.uses(feature)) {
    throw UsageError("feature " + std::to_string(feature) +
                     " already used in branch " + parent.text());
  }
  std::vector<std::vector<int32_t>> parts =
      split_members(parent_members, feature, ds);
  std::vector<std::pair<BranchKey, BranchStats>> out;
  out.reserve(parts.size());
  for (int j = 0; j < static_cast<int>(parts.size()); ++j) {
    out.emplace_back(parent.child(feature, j),
                     stats_from_members(ds, std::move(parts[j])));
  }
  return out;
}

}  // namespace aodt
