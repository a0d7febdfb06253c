#ifndef AODT_TESTS_TEST_UTIL_HPP
#define AODT_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aodt/dataset.hpp"

namespace aodt_test {

// Modulo-based draws keep generated instances identical across standard
// library implementations, unlike std::uniform_int_distribution.
inline int draw(std::mt19937& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

// A random categorical table: q features with 2 or 3 categories each,
// 8..40 rows, 2 or 3 classes, every class present at least once. Rows are
// category texts so the table exercises the real encoding path.
inline aodt::RawTable random_table(std::mt19937& rng, int q_lo = 2,
                                   int q_hi = 4, int n_lo = 8, int n_hi = 40) {
  int q = draw(rng, q_lo, q_hi);
  int n = draw(rng, n_lo, n_hi);
  int k = draw(rng, 2, 3);
  std::vector<int> cats(static_cast<std::size_t>(q));
  for (int f = 0; f < q; ++f) cats[static_cast<std::size_t>(f)] = draw(rng, 2, 3);

  std::vector<std::string> columns;
  for (int f = 0; f < q; ++f) columns.push_back("f" + std::to_string(f));
  columns.push_back("y");

  std::vector<std::vector<std::string>> rows;
  while (true) {
    rows.clear();
    std::vector<bool> seen_class(static_cast<std::size_t>(k), false);
    std::vector<std::vector<bool>> seen_cat(static_cast<std::size_t>(q));
    for (int f = 0; f < q; ++f) {
      seen_cat[static_cast<std::size_t>(f)].assign(
          static_cast<std::size_t>(cats[static_cast<std::size_t>(f)]), false);
    }
    for (int r = 0; r < n; ++r) {
      std::vector<std::string> row;
      for (int f = 0; f < q; ++f) {
        int c = draw(rng, 0, cats[static_cast<std::size_t>(f)] - 1);
        seen_cat[static_cast<std::size_t>(f)][static_cast<std::size_t>(c)] =
            true;
        row.push_back(std::to_string(c));
      }
      int label = draw(rng, 0, k - 1);
      seen_class[static_cast<std::size_t>(label)] = true;
      row.push_back(std::to_string(label));
      rows.push_back(std::move(row));
    }
    bool ok = true;
    for (bool s : seen_class) ok = ok && s;
    // Every category must appear or the column's category count shrinks
    // (or the column goes constant) under lexicographic encoding.
    for (const auto& col : seen_cat) {
      for (bool s : col) ok = ok && s;
    }
    if (ok) break;
  }
  return aodt::make_table(columns, rows, "y");
}

inline aodt::EncodedDataset random_dataset(std::mt19937& rng, int q_lo = 2,
                                           int q_hi = 4, int n_lo = 8,
                                           int n_hi = 40) {
  return aodt::encode(random_table(rng, q_lo, q_hi, n_lo, n_hi),
                      aodt::Encoding::kOrdinal);
}

inline aodt::EncodedDataset xor_dataset() {
  aodt::RawTable raw = aodt::make_table({"f0", "f1", "y"},
                                        {{"0", "0", "0"},
                                         {"0", "1", "1"},
                                         {"1", "0", "1"},
                                         {"1", "1", "0"}},
                                        "y");
  return aodt::encode(raw, aodt::Encoding::kOrdinal);
}

}  // namespace aodt_test

#endif  // AODT_TESTS_TEST_UTIL_HPP
