#include "aodt/tree.hpp"

#include <sstream>

namespace aodt {
namespace {

nlohmann::ordered_json node_to_json(const TreeNode& node) {
  if (node.is_leaf()) {
    return nlohmann::ordered_json{{"leaf", node.predicted_class}};
  }
  nlohmann::ordered_json children = nlohmann::ordered_json::array();
  for (const TreeNode& c : node.children) children.push_back(node_to_json(c));
  return nlohmann::ordered_json{{"feature", node.feature},
                                {"children", std::move(children)}};
}

TreeNode node_from_json(const nlohmann::ordered_json& j) {
  TreeNode node;
  if (j.contains("leaf")) {
    node.predicted_class = j.at("leaf").get<int>();
    return node;
  }
  node.feature = j.at("feature").get<int>();
  for (const auto& c : j.at("children")) {
    node.children.push_back(node_from_json(c));
  }
  if (node.children.empty()) {
    throw DataError("split node without children in model");
  }
  return node;
}

void check_no_repeats(const TreeNode& node, std::vector<bool>& used) {
  if (node.is_leaf()) return;
  std::size_t f = static_cast<std::size_t>(node.feature);
  if (f >= used.size() || used[f]) {
    throw DataError("model repeats or misindexes feature " +
                    std::to_string(node.feature) + " along a path");
  }
  used[f] = true;
  for (const TreeNode& c : node.children) check_no_repeats(c, used);
  used[f] = false;
}

}  // namespace

int count_splits(const TreeNode& node) {
  if (node.is_leaf()) return 0;
  int total = 1;
  for (const TreeNode& c : node.children) total += count_splits(c);
  return total;
}

DecisionTree make_tree(const EncodedDataset& ds, TreeNode root, double lambda,
                       bool solved) {
  DecisionTree tree;
  tree.root = std::move(root);
  tree.splits = count_splits(tree.root);
  tree.lambda = lambda;
  tree.scheme = ds.scheme;
  tree.solved = solved;
  tree.source_columns = ds.source_columns;
  tree.class_names = ds.class_names;
  tree.class_column_name = ds.class_column_name;
  tree.feature_names = ds.feature_names;
  tree.feature_categories = ds.category_maps;
  return tree;
}

int predict(const DecisionTree& tree, const std::vector<int32_t>& datum) {
  const TreeNode* node = &tree.root;
  while (!node->is_leaf()) {
    std::size_t f = static_cast<std::size_t>(node->feature);
    if (f >= datum.size()) {
      throw UsageError("datum has no feature " + std::to_string(node->feature));
    }
    int32_t v = datum[f];
    if (v < 0 || v >= static_cast<int32_t>(node->children.size())) {
      throw UsageError("feature " + std::to_string(node->feature) +
                       " value " + std::to_string(v) + " out of range");
    }
    node = &node->children[v];
  }
  return node->predicted_class;
}

int predict_raw(const DecisionTree& tree, const std::vector<std::string>& raw,
                const std::string& row_label) {
  return predict(tree, encode_row(tree.source_columns, tree.scheme, raw,
                                  row_label));
}

ObjectiveReport objective(const DecisionTree& tree, const EncodedDataset& ds,
                          double lambda) {
  ObjectiveReport rep;
  rep.splits = count_splits(tree.root);
  std::size_t correct = 0;
  std::vector<int32_t> datum(ds.q);
  for (std::size_t r = 0; r < ds.n; ++r) {
    for (std::size_t f = 0; f < ds.q; ++f) datum[f] = ds.columns[f][r];
    if (predict(tree, datum) == ds.labels[r]) ++correct;
  }
  rep.accuracy = static_cast<double>(correct) / static_cast<double>(ds.n);
  rep.objective = rep.accuracy - lambda * rep.splits;
  return rep;
}

ObjectiveReport objective(const DecisionTree& tree, const EncodedDataset& ds) {
  return objective(tree, ds, tree.lambda);
}

nlohmann::ordered_json tree_to_json(const DecisionTree& tree) {
  nlohmann::ordered_json j;
  j["lambda"] = tree.lambda;
  j["encoding_scheme"] = encoding_name(tree.scheme);
  j["provenance"] = tree.solved ? "solved" : "anytime";
  j["splits"] = tree.splits;
  j["class_column"] = tree.class_column_name;
  j["class_names"] = tree.class_names;
  nlohmann::ordered_json maps = nlohmann::ordered_json::array();
  for (const SourceColumn& col : tree.source_columns) {
    maps.push_back({{"column", col.name}, {"categories", col.categories}});
  }
  j["category_maps"] = std::move(maps);
  j["feature_names"] = tree.feature_names;
  j["feature_categories"] = tree.feature_categories;
  j["root"] = node_to_json(tree.root);
  return j;
}

DecisionTree tree_from_json(const nlohmann::ordered_json& j) {
  DecisionTree tree;
  tree.lambda = j.at("lambda").get<double>();
  tree.scheme = encoding_from_name(j.at("encoding_scheme").get<std::string>());
  tree.solved = j.at("provenance").get<std::string>() == "solved";
  tree.class_column_name = j.at("class_column").get<std::string>();
  tree.class_names = j.at("class_names").get<std::vector<std::string>>();
  for (const auto& col : j.at("category_maps")) {
    SourceColumn sc;
    sc.name = col.at("column").get<std::string>();
    sc.categories = col.at("categories").get<std::vector<std::string>>();
    tree.source_columns.push_back(std::move(sc));
  }
  tree.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  tree.feature_categories =
      j.at("feature_categories").get<std::vector<std::vector<std::string>>>();
  tree.root = node_from_json(j.at("root"));
  tree.splits = count_splits(tree.root);
  if (j.at("splits").get<int>() != tree.splits) {
    throw DataError("model split count disagrees with its tree structure");
  }
  std::vector<bool> used(tree.feature_names.size(), false);
  check_no_repeats(tree.root, used);
  return tree;
}

std::string tree_to_dot(const DecisionTree& tree) {
  std::ostringstream out;
  out << "digraph tree {\n  node [shape=box];\n";
  int next_id = 0;
  // Iterative preorder walk carrying (node, id) pairs.
  std::vector<std::pair<const TreeNode*, int>> stack;
  stack.push_back({&tree.root, next_id++});
  std::ostringstream edges;
  while (!stack.empty()) {
    auto [node, id] = stack.back();
    stack.pop_back();
    if (node->is_leaf()) {
      const std::string& cls = tree.class_names[node->predicted_class];
      out << "  n" << id << " [label=\"" << cls << "\", shape=ellipse];\n";
      continue;
    }
    out << "  n" << id << " [label=\"" << tree.feature_names[node->feature]
        << "\"];\n";
    const auto& cats = tree.feature_categories[node->feature];
    for (std::size_t j = 0; j < node->children.size(); ++j) {
      int cid = next_id++;
      edges << "  n" << id << " -> n" << cid << " [label=\"" << cats[j]
            << "\"];\n";
      stack.push_back({&node->children[j], cid});
    }
  }
  out << edges.str() << "}\n";
  return out.str();
}

}  // namespace aodt
