#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "aodt/dataset.hpp"

using namespace aodt;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << text;
  return path;
}

RawTable fruit_table() {
  return make_table({"color", "size", "y"},
                    {{"red", "small", "no"},
                     {"green", "big", "yes"},
                     {"blue", "small", "yes"},
                     {"red", "big", "no"},
                     {"green", "small", "yes"}},
                    "y");
}

}  // namespace

TEST_CASE("load_csv parses headers, class selectors, and blank lines") {
  std::string path = write_temp("aodt_basic.csv",
                                "a,b,y\r\n0,x,1\n\n1,y,0\n");
  RawTable by_name = load_csv(path, "y", true);
  CHECK(by_name.column_names == std::vector<std::string>{"a", "b", "y"});
  CHECK(by_name.rows.size() == 2);
  CHECK(by_name.class_column == 2);

  RawTable by_index = load_csv(path, "2", true);
  CHECK(by_index.class_column == 2);
  RawTable by_negative = load_csv(path, "-1", true);
  CHECK(by_negative.class_column == 2);
  RawTable first = load_csv(path, "0", true);
  CHECK(first.class_column == 0);

  std::remove(path.c_str());
}

TEST_CASE("load_csv without a header synthesizes column names") {
  std::string path = write_temp("aodt_nohdr.csv", "0,x,1\n1,y,0\n");
  RawTable t = load_csv(path, "-1", false);
  CHECK(t.column_names == std::vector<std::string>{"c0", "c1", "c2"});
  CHECK(t.rows.size() == 2);
  CHECK(t.class_column == 2);
  CHECK_THROWS_AS(load_csv(path, "y", false), DataError);
  std::remove(path.c_str());
}

TEST_CASE("load_csv rejects ragged rows naming the line") {
  std::string path = write_temp("aodt_ragged.csv", "a,b,y\n0,1\n");
  CHECK_THROWS_WITH_AS(load_csv(path, "y", true),
                       doctest::Contains("line 2"), DataError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_csv("/nonexistent/file.csv", "y", true), DataError);
}

TEST_CASE("ordinal encoding is lexicographic over category text") {
  EncodedDataset ds = encode(fruit_table(), Encoding::kOrdinal);
  CHECK(ds.n == 5);
  CHECK(ds.q == 2);
  CHECK(ds.K == 2);
  CHECK(ds.categories == std::vector<int>{3, 2});
  // color categories sorted: blue, green, red; size: big, small.
  CHECK(ds.value(0, 0) == 2);
  CHECK(ds.value(1, 0) == 1);
  CHECK(ds.value(2, 0) == 0);
  CHECK(ds.value(0, 1) == 1);
  CHECK(ds.value(1, 1) == 0);
  // classes sorted: no, yes.
  CHECK(ds.class_names == std::vector<std::string>{"no", "yes"});
  CHECK(ds.labels == std::vector<int32_t>{0, 1, 1, 0, 1});
  CHECK(ds.feature_names == std::vector<std::string>{"color", "size"});
}

TEST_CASE("one-hot encoding widens each column to its categories") {
  EncodedDataset ds = encode(fruit_table(), Encoding::kOnehotFull);
  CHECK(ds.q == 5);
  CHECK(ds.feature_names ==
        std::vector<std::string>{"color=blue", "color=green", "color=red",
                                 "size=big", "size=small"});
  for (int c : ds.categories) CHECK(c == 2);
  // Row 0 is red/small: third and fifth indicators set.
  CHECK(ds.value(0, 0) == 0);
  CHECK(ds.value(0, 1) == 0);
  CHECK(ds.value(0, 2) == 1);
  CHECK(ds.value(0, 3) == 0);
  CHECK(ds.value(0, 4) == 1);
}

TEST_CASE("drop-first and drop-last shrink each group by one") {
  EncodedDataset first = encode(fruit_table(), Encoding::kOnehotDropFirst);
  CHECK(first.q == 3);
  CHECK(first.feature_names ==
        std::vector<std::string>{"color=green", "color=red", "size=small"});
  EncodedDataset last = encode(fruit_table(), Encoding::kOnehotDropLast);
  CHECK(last.q == 3);
  CHECK(last.feature_names ==
        std::vector<std::string>{"color=blue", "color=green", "size=big"});
  // Row 2 is blue/small: blue is the dropped first category, so its color
  // group is all zeros.
  CHECK(first.value(2, 0) == 0);
  CHECK(first.value(2, 1) == 0);
  CHECK(first.value(2, 2) == 1);
}

TEST_CASE("decode_row inverts every scheme including dropped categories") {
  RawTable raw = fruit_table();
  for (Encoding scheme :
       {Encoding::kOrdinal, Encoding::kOnehotFull, Encoding::kOnehotDropFirst,
        Encoding::kOnehotDropLast}) {
    EncodedDataset ds = encode(raw, scheme);
    for (std::size_t r = 0; r < ds.n; ++r) {
      std::vector<std::string> want = {raw.rows[r][0], raw.rows[r][1]};
      CHECK(decode_row(ds, r) == want);
    }
  }
}

TEST_CASE("encode rejects constant columns naming the offender") {
  RawTable raw = make_table({"a", "b", "y"},
                            {{"1", "x", "0"}, {"1", "z", "1"}}, "y");
  for (Encoding scheme :
       {Encoding::kOrdinal, Encoding::kOnehotFull, Encoding::kOnehotDropFirst,
        Encoding::kOnehotDropLast}) {
    CHECK_THROWS_WITH_AS(encode(raw, scheme), doctest::Contains("'a'"),
                         DataError);
  }
}

TEST_CASE("single-class tables encode with K = 1") {
  RawTable raw = make_table({"a", "y"}, {{"0", "same"}, {"1", "same"}}, "y");
  EncodedDataset ds = encode(raw, Encoding::kOrdinal);
  CHECK(ds.K == 1);
  CHECK(ds.labels == std::vector<int32_t>{0, 0});
}

TEST_CASE("question marks are ordinary category text") {
  RawTable raw = make_table(
      {"a", "y"}, {{"?", "0"}, {"x", "1"}, {"?", "0"}}, "y");
  EncodedDataset ds = encode(raw, Encoding::kOrdinal);
  CHECK(ds.category_maps[0] == std::vector<std::string>{"?", "x"});
  CHECK(ds.value(0, 0) == 0);
  CHECK(ds.value(1, 0) == 1);
}

TEST_CASE("encode_row matches the training encoding and flags unknowns") {
  RawTable raw = fruit_table();
  for (Encoding scheme : {Encoding::kOrdinal, Encoding::kOnehotDropFirst}) {
    EncodedDataset ds = encode(raw, scheme);
    for (std::size_t r = 0; r < ds.n; ++r) {
      std::vector<int32_t> enc = encode_row(
          ds.source_columns, scheme, {raw.rows[r][0], raw.rows[r][1]}, "row");
      for (std::size_t f = 0; f < ds.q; ++f) CHECK(enc[f] == ds.value(r, f));
    }
  }
  EncodedDataset ds = encode(raw, Encoding::kOrdinal);
  CHECK_THROWS_WITH_AS(
      encode_row(ds.source_columns, ds.scheme, {"purple", "small"}, "row 9"),
      doctest::Contains("purple"), DataError);
  CHECK_THROWS_AS(encode_row(ds.source_columns, ds.scheme, {"red"}, "row"),
                  DataError);
}

TEST_CASE("dataset JSON round-trips and serializes deterministically") {
  EncodedDataset ds = encode(fruit_table(), Encoding::kOnehotDropLast);
  nlohmann::ordered_json j = dataset_to_json(ds);
  CHECK(j["n"] == 5);
  CHECK(j["q"] == 3);
  CHECK(j["K"] == 2);
  CHECK(j["encoding_scheme"] == "onehot_drop_last");
  EncodedDataset back = dataset_from_json(j);
  CHECK(back.n == ds.n);
  CHECK(back.q == ds.q);
  CHECK(back.K == ds.K);
  CHECK(back.labels == ds.labels);
  CHECK(back.columns == ds.columns);
  CHECK(back.feature_names == ds.feature_names);
  CHECK(back.class_names == ds.class_names);
  CHECK(back.scheme == ds.scheme);
  CHECK(dataset_to_json(back).dump() == j.dump());
}

TEST_CASE("class selector validation") {
  CHECK_THROWS_AS(make_table({"a", "y"}, {{"0", "1"}}, "missing"), DataError);
  CHECK_THROWS_AS(make_table({"a", "y"}, {{"0", "1"}}, "7"), DataError);
  CHECK_THROWS_AS(make_table({"a"}, {{"0"}}, "0"), DataError);
}
