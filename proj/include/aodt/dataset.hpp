#ifndef AODT_DATASET_HPP
#define AODT_DATASET_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace aodt {

// Raised for anything wrong with input data: unreadable files, ragged rows,
// constant columns, unknown categories at prediction time. The CLI maps it
// to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Contract violations inside the library (bad arguments, misuse of the
// engine). The CLI maps these to exit code 1.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// A parsed CSV with the class column identified but nothing encoded yet.
// Feature columns are every column except class_column, in file order.
struct RawTable {
  std::vector<std::string> column_names;
  std::vector<std::vector<std::string>> rows;  // all columns, class included
  std::size_t class_column = 0;

  std::size_t feature_count() const { return column_names.size() - 1; }
};

enum class Encoding { kOrdinal, kOnehotFull, kOnehotDropFirst, kOnehotDropLast };

const char* encoding_name(Encoding e);
Encoding encoding_from_name(const std::string& name);

// One original (pre-encoding) feature column: its name and its category
// texts in index order. Kept alongside the encoded matrix so that rows can
// be decoded back to text and raw text rows can be encoded at prediction
// time.
struct SourceColumn {
  std::string name;
  std::vector<std::string> categories;  // sorted lexicographically
};

struct EncodedDataset {
  std::size_t n = 0;  // rows
  std::size_t q = 0;  // encoded features
  int K = 0;          // classes
  std::vector<int> categories;                      // C_i per encoded feature
  std::vector<std::vector<int32_t>> columns;        // q columns of n values
  std::vector<int32_t> labels;                      // n class indices
  std::vector<std::string> feature_names;           // per encoded feature
  std::vector<std::vector<std::string>> category_maps;  // per encoded feature
  std::vector<SourceColumn> source_columns;         // original feature columns
  std::vector<std::string> class_names;             // sorted lexicographically
  std::string class_column_name;
  Encoding scheme = Encoding::kOrdinal;

  int32_t value(std::size_t row, std::size_t feature) const {
    return columns[feature][row];
  }
};

// Parses a comma-delimited file. `class_selector` is a column name (requires
// a header) or a 0-based index; negative indices count from the end. Blank
// lines are skipped; a row whose field count differs from the header or
// first row is a DataError naming the row.
RawTable load_csv(const std::string& path, const std::string& class_selector,
                  bool has_header);

// In-memory variant used by the bindings and tests.
RawTable make_table(std::vector<std::string> column_names,
                    std::vector<std::vector<std::string>> rows,
                    const std::string& class_selector);

// Category and class order is lexicographic over the cell text, so encoding
// is deterministic across runs and platforms. A "?" cell is a category like
// any other. Columns with a single distinct value are rejected under every
// scheme. A single-class table is accepted (the optimal tree is one leaf).
EncodedDataset encode(const RawTable& raw, Encoding scheme);

// Recovers the original category texts of one row (original column order).
// Under the drop variants an all-zeros group decodes to the dropped
// category.
std::vector<std::string> decode_row(const EncodedDataset& ds, std::size_t row);

// Encodes one raw text row (original feature columns, class excluded) into
// the dataset's encoded feature space. Unknown category text is a DataError
// naming the column; `row_label` is used in that message.
std::vector<int32_t> encode_row(const std::vector<SourceColumn>& source,
                                Encoding scheme,
                                const std::vector<std::string>& raw,
                                const std::string& row_label);

nlohmann::ordered_json dataset_to_json(const EncodedDataset& ds);
EncodedDataset dataset_from_json(const nlohmann::ordered_json& j);

}  // namespace aodt

#endif  // AODT_DATASET_HPP
