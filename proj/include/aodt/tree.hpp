#ifndef AODT_TREE_HPP
#define AODT_TREE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "aodt/dataset.hpp"

namespace aodt {

// Either a leaf predicting a class or a split with one child per category
// of its feature. Feature indices refer to the encoded feature space the
// tree was trained in.
struct TreeNode {
  int feature = kLeafMarker;  // kLeafMarker for leaves
  int predicted_class = 0;    // leaves only
  std::vector<TreeNode> children;

  static constexpr int kLeafMarker = -1;
  bool is_leaf() const { return feature == kLeafMarker; }
};

struct DecisionTree {
  TreeNode root;
  int splits = 0;  // internal node count
  double lambda = 0.0;
  Encoding scheme = Encoding::kOrdinal;
  bool solved = true;  // false when the tree came from an anytime extraction

  // Enough of the training schema to predict from raw text rows and to
  // label exports: the original feature columns with their category texts,
  // the class names, and the encoded feature names/categories.
  std::vector<SourceColumn> source_columns;
  std::vector<std::string> class_names;
  std::string class_column_name;
  std::vector<std::string> feature_names;
  std::vector<std::vector<std::string>> feature_categories;
};

int count_splits(const TreeNode& node);

// Wraps a built node structure with the dataset's schema so the tree can
// predict, export and serialize on its own.
DecisionTree make_tree(const EncodedDataset& ds, TreeNode root, double lambda,
                       bool solved);

// Descends by the datum's category at each split. The datum lives in the
// encoded feature space; out-of-range values are a UsageError.
int predict(const DecisionTree& tree, const std::vector<int32_t>& datum);

// Encodes a raw text row through the tree's stored schema, then predicts.
int predict_raw(const DecisionTree& tree, const std::vector<std::string>& raw,
                const std::string& row_label);

struct ObjectiveReport {
  double objective = 0.0;
  double accuracy = 0.0;
  int splits = 0;
};

// accuracy = fraction of rows whose prediction matches their label;
// objective = accuracy - lambda * splits. The two-argument form uses the
// lambda stored in the tree.
ObjectiveReport objective(const DecisionTree& tree, const EncodedDataset& ds,
                          double lambda);
ObjectiveReport objective(const DecisionTree& tree, const EncodedDataset& ds);

// Model JSON is self-contained: it carries lambda, the scheme, the original
// per-column category maps and class names, and the tree structure, so a
// loaded model can predict from raw text rows. Round-trips losslessly.
nlohmann::ordered_json tree_to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const nlohmann::ordered_json& j);

// Graphviz rendering: one node per tree node, split nodes labeled with the
// encoded feature name, edges labeled with the category text, leaves labeled
// with the predicted class text.
std::string tree_to_dot(const DecisionTree& tree);

}  // namespace aodt

#endif  // AODT_TREE_HPP
