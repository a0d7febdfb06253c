#include "aodt/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace aodt {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::size_t resolve_class_column(const std::vector<std::string>& names,
                                 const std::string& selector) {
  // An integer selector (possibly negative) picks by position, anything
  // else by name.
  bool numeric = !selector.empty();
  std::size_t start = (selector[0] == '-' && selector.size() > 1) ? 1 : 0;
  for (std::size_t i = start; i < selector.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(selector[i]))) {
      numeric = false;
      break;
    }
  }
  if (numeric) {
    long idx = std::stol(selector);
    long m = static_cast<long>(names.size());
    if (idx < 0) idx += m;
    if (idx < 0 || idx >= m) {
      throw DataError("class column index " + selector + " out of range for " +
                      std::to_string(m) + " columns");
    }
    return static_cast<std::size_t>(idx);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == selector) return i;
  }
  throw DataError("class column '" + selector + "' not found");
}

void validate_table(const RawTable& table, const std::string& origin) {
  if (table.rows.empty()) {
    throw DataError(origin + ": no data rows");
  }
  if (table.column_names.size() < 2) {
    throw DataError(origin + ": need at least one feature column besides the class");
  }
}

// Width of one original column in the encoded feature space.
std::size_t group_width(const SourceColumn& col, Encoding scheme) {
  switch (scheme) {
    case Encoding::kOrdinal:
      return 1;
    case Encoding::kOnehotFull:
      return col.categories.size();
    case Encoding::kOnehotDropFirst:
    case Encoding::kOnehotDropLast:
      return col.categories.size() - 1;
  }
  return 0;
}

// Category index of the original column that encoded position `offset`
// within the column's group refers to.
int group_category(Encoding scheme, std::size_t offset) {
  if (scheme == Encoding::kOnehotDropFirst) return static_cast<int>(offset) + 1;
  return static_cast<int>(offset);  // full and drop-last start at category 0
}

}  // namespace

const char* encoding_name(Encoding e) {
  switch (e) {
    case Encoding::kOrdinal: return "ordinal";
    case Encoding::kOnehotFull: return "onehot_full";
    case Encoding::kOnehotDropFirst: return "onehot_drop_first";
    case Encoding::kOnehotDropLast: return "onehot_drop_last";
  }
  return "ordinal";
}

Encoding encoding_from_name(const std::string& name) {
  if (name == "ordinal") return Encoding::kOrdinal;
  if (name == "onehot" || name == "onehot_full") return Encoding::kOnehotFull;
  if (name == "onehot-drop-first" || name == "onehot_drop_first")
    return Encoding::kOnehotDropFirst;
  if (name == "onehot-drop-last" || name == "onehot_drop_last")
    return Encoding::kOnehotDropLast;
  throw UsageError("unknown encoding '" + name + "'");
}

RawTable load_csv(const std::string& path, const std::string& class_selector,
                  bool has_header) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  RawTable table;
  std::string line;
  std::size_t line_no = 0;
  std::size_t arity = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (arity == 0) {
      arity = fields.size();
      if (has_header) {
        table.column_names = std::move(fields);
        continue;
      }
      table.column_names.reserve(arity);
      for (std::size_t i = 0; i < arity; ++i) {
        table.column_names.push_back("c" + std::to_string(i));
      }
    }
    if (fields.size() != arity) {
      throw DataError(path + ": row at line " + std::to_string(line_no) +
                      " has " + std::to_string(fields.size()) +
                      " fields, expected " + std::to_string(arity));
    }
    table.rows.push_back(std::move(fields));
  }
  validate_table(table, path);
  table.class_column = resolve_class_column(table.column_names, class_selector);
  return table;
}

RawTable make_table(std::vector<std::string> column_names,
                    std::vector<std::vector<std::string>> rows,
                    const std::string& class_selector) {
  RawTable table;
  table.column_names = std::move(column_names);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != table.column_names.size()) {
      throw DataError("row " + std::to_string(r) + " has " +
                      std::to_string(rows[r].size()) + " fields, expected " +
                      std::to_string(table.column_names.size()));
    }
  }
  table.rows = std::move(rows);
  validate_table(table, "table");
  table.class_column = resolve_class_column(table.column_names, class_selector);
  return table;
}

EncodedDataset encode(const RawTable& raw, Encoding scheme) {
  EncodedDataset ds;
  ds.scheme = scheme;
  ds.n = raw.rows.size();
  ds.class_column_name = raw.column_names[raw.class_column];

  // Original feature columns with lexicographically ordered categories.
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < raw.column_names.size(); ++c) {
    if (c == raw.class_column) continue;
    feature_cols.push_back(c);
    std::set<std::string> distinct;
    for (const auto& row : raw.rows) distinct.insert(row[c]);
    if (distinct.size() < 2) {
      throw DataError("column '" + raw.column_names[c] +
                      "' is constant; every feature needs at least two categories");
    }
    SourceColumn col;
    col.name = raw.column_names[c];
    col.categories.assign(distinct.begin(), distinct.end());
    ds.source_columns.push_back(std::move(col));
  }

  {
    std::set<std::string> distinct;
    for (const auto& row : raw.rows) distinct.insert(row[raw.class_column]);
    ds.class_names.assign(distinct.begin(), distinct.end());
    ds.K = static_cast<int>(ds.class_names.size());
  }

  std::map<std::string, int32_t> class_index;
  for (std::size_t k = 0; k < ds.class_names.size(); ++k) {
    class_index[ds.class_names[k]] = static_cast<int32_t>(k);
  }
  ds.labels.reserve(ds.n);
  for (const auto& row : raw.rows) {
    ds.labels.push_back(class_index.at(row[raw.class_column]));
  }

  // Encoded feature layout.
  for (std::size_t s = 0; s < ds.source_columns.size(); ++s) {
    const SourceColumn& col = ds.source_columns[s];
    std::size_t width = group_width(col, scheme);
    for (std::size_t off = 0; off < width; ++off) {
      if (scheme == Encoding::kOrdinal) {
        ds.feature_names.push_back(col.name);
        ds.category_maps.push_back(col.categories);
        ds.categories.push_back(static_cast<int>(col.categories.size()));
      } else {
        int cat = group_category(scheme, off);
        ds.feature_names.push_back(col.name + "=" + col.categories[cat]);
        ds.category_maps.push_back({"0", "1"});
        ds.categories.push_back(2);
      }
    }
  }
  ds.q = ds.feature_names.size();

  ds.columns.assign(ds.q, std::vector<int32_t>(ds.n));
  std::size_t f = 0;
  for (std::size_t s = 0; s < ds.source_columns.size(); ++s) {
    const SourceColumn& col = ds.source_columns[s];
    std::map<std::string, int32_t> index;
    for (std::size_t j = 0; j < col.categories.size(); ++j) {
      index[col.categories[j]] = static_cast<int32_t>(j);
    }
    std::size_t width = group_width(col, scheme);
    for (std::size_t r = 0; r < ds.n; ++r) {
      int32_t cat = index.at(raw.rows[r][feature_cols[s]]);
      if (scheme == Encoding::kOrdinal) {
        ds.columns[f][r] = cat;
      } else {
        for (std::size_t off = 0; off < width; ++off) {
          ds.columns[f + off][r] =
              (group_category(scheme, off) == cat) ? 1 : 0;
        }
      }
    }
    f += width;
  }
  return ds;
}

std::vector<std::string> decode_row(const EncodedDataset& ds, std::size_t row) {
  std::vector<std::string> out;
  out.reserve(ds.source_columns.size());
  std::size_t f = 0;
  for (const SourceColumn& col : ds.source_columns) {
    if (ds.scheme == Encoding::kOrdinal) {
      out.push_back(col.categories[ds.columns[f][row]]);
      f += 1;
      continue;
    }
    std::size_t width = group_width(col, ds.scheme);
    int cat = -1;
    for (std::size_t off = 0; off < width; ++off) {
      if (ds.columns[f + off][row] == 1) {
        cat = group_category(ds.scheme, off);
        break;
      }
    }
    if (cat < 0) {
      // All zeros: the category the drop variant removed.
      if (ds.scheme == Encoding::kOnehotDropFirst) {
        cat = 0;
      } else if (ds.scheme == Encoding::kOnehotDropLast) {
        cat = static_cast<int>(col.categories.size()) - 1;
      } else {
        throw DataError("row " + std::to_string(row) + ", column '" +
                        col.name + "': no category bit set");
      }
    }
    out.push_back(col.categories[cat]);
    f += width;
  }
  return out;
}

std::vector<int32_t> encode_row(const std::vector<SourceColumn>& source,
                                Encoding scheme,
                                const std::vector<std::string>& raw,
                                const std::string& row_label) {
  if (raw.size() != source.size()) {
    throw DataError(row_label + " has " + std::to_string(raw.size()) +
                    " feature values, expected " +
                    std::to_string(source.size()));
  }
  std::vector<int32_t> out;
  for (std::size_t s = 0; s < source.size(); ++s) {
    const SourceColumn& col = source[s];
    auto it = std::find(col.categories.begin(), col.categories.end(), raw[s]);
    if (it == col.categories.end()) {
      throw DataError(row_label + ", column '" + col.name +
                      "': unknown category '" + raw[s] + "'");
    }
    int cat = static_cast<int>(it - col.categories.begin());
    if (scheme == Encoding::kOrdinal) {
      out.push_back(cat);
    } else {
      std::size_t width = group_width(col, scheme);
      for (std::size_t off = 0; off < width; ++off) {
        out.push_back(group_category(scheme, off) == cat ? 1 : 0);
      }
    }
  }
  return out;
}

nlohmann::ordered_json dataset_to_json(const EncodedDataset& ds) {
  nlohmann::ordered_json j;
  j["n"] = ds.n;
  j["q"] = ds.q;
  j["K"] = ds.K;
  j["categories"] = ds.categories;
  j["category_maps"] = ds.category_maps;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < ds.n; ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < ds.q; ++f) row.push_back(ds.columns[f][r]);
    rows.push_back(std::move(row));
  }
  j["features"] = std::move(rows);
  j["labels"] = ds.labels;
  j["encoding_scheme"] = encoding_name(ds.scheme);
  j["feature_names"] = ds.feature_names;
  nlohmann::ordered_json cols = nlohmann::ordered_json::array();
  for (const SourceColumn& col : ds.source_columns) {
    cols.push_back({{"name", col.name}, {"categories", col.categories}});
  }
  j["source_columns"] = std::move(cols);
  j["class_names"] = ds.class_names;
  j["class_column"] = ds.class_column_name;
  return j;
}

EncodedDataset dataset_from_json(const nlohmann::ordered_json& j) {
  EncodedDataset ds;
  ds.n = j.at("n").get<std::size_t>();
  ds.q = j.at("q").get<std::size_t>();
  ds.K = j.at("K").get<int>();
  ds.categories = j.at("categories").get<std::vector<int>>();
  ds.category_maps =
      j.at("category_maps").get<std::vector<std::vector<std::string>>>();
  ds.columns.assign(ds.q, std::vector<int32_t>(ds.n));
  const auto& rows = j.at("features");
  for (std::size_t r = 0; r < ds.n; ++r) {
    for (std::size_t f = 0; f < ds.q; ++f) {
      ds.columns[f][r] = rows.at(r).at(f).get<int32_t>();
    }
  }
  ds.labels = j.at("labels").get<std::vector<int32_t>>();
  ds.scheme = encoding_from_name(j.at("encoding_scheme").get<std::string>());
  ds.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  for (const auto& col : j.at("source_columns")) {
    SourceColumn sc;
    sc.name = col.at("name").get<std::string>();
    sc.categories = col.at("categories").get<std::vector<std::string>>();
    ds.source_columns.push_back(std::move(sc));
  }
  ds.class_names = j.at("class_names").get<std::vector<std::string>>();
  ds.class_column_name = j.at("class_column").get<std::string>();
  return ds;
}

}  // namespace aodt
