#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aodt/analysis.hpp"
#include "aodt/search.hpp"

namespace {

using nlohmann::ordered_json;

constexpr const char* kTraceHelp =
    "Trace file: one tab-separated line per iteration with columns "
    "iteration, selected branch key, V(root), V-hat(root), memo size, "
    "evaluations. Values use 12 significant digits; the root's key is the "
    "empty string.";

std::string dataset_id(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw aodt::DataError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw aodt::DataError("failed writing " + path);
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    write_text(output_path, text);
  }
}

aodt::EncodedDataset load_encoded(const std::string& data_path,
                                  const std::string& class_column,
                                  const std::string& encoding,
                                  bool no_header) {
  aodt::RawTable raw = aodt::load_csv(data_path, class_column, !no_header);
  return aodt::encode(raw, aodt::encoding_from_name(encoding));
}

ordered_json run_report(const std::string& data_path,
                        const aodt::EncodedDataset& ds,
                        const aodt::SearchConfig& config,
                        const aodt::DecisionTree& tree,
                        const aodt::SearchStats& stats) {
  aodt::ObjectiveReport rep = aodt::objective(tree, ds);
  ordered_json j;
  j["dataset"] = dataset_id(data_path);
  j["encoding"] = aodt::encoding_name(ds.scheme);
  j["lambda"] = config.lambda;
  j["max_depth"] =
      config.max_depth ? ordered_json(*config.max_depth) : ordered_json();
  j["objective"] = rep.objective;
  j["accuracy"] = rep.accuracy;
  j["splits"] = rep.splits;
  j["time"] = stats.elapsed_seconds;
  j["iterations"] = stats.iterations;
  j["evaluations"] = stats.evaluations;
  j["termination"] =
      stats.termination == aodt::Termination::kSolved ? "solved" : "timeout";
  return j;
}

std::string trace_text(const std::vector<aodt::TraceRow>& rows) {
  std::ostringstream out;
  for (const aodt::TraceRow& r : rows) {
    out << r.iteration << '\t' << r.selected << '\t' << fmt12(r.v_root)
        << '\t' << fmt12(r.v_greedy_root) << '\t' << r.memo_size << '\t'
        << r.evaluations << '\n';
  }
  return out.str();
}

std::string memo_dump_text(const aodt::Memo& memo) {
  std::vector<const aodt::BranchNode*> nodes;
  nodes.reserve(memo.size());
  for (const auto& [key, node] : memo) nodes.push_back(node.get());
  std::sort(nodes.begin(), nodes.end(),
            [](const aodt::BranchNode* a, const aodt::BranchNode* b) {
              return a->key < b->key;
            });
  std::ostringstream out;
  for (const aodt::BranchNode* node : nodes) {
    out << node->key.text() << '\t' << node->stats.n_l << '\t'
        << fmt12(node->v_upper) << '\t' << fmt12(node->v_greedy) << '\t'
        << (node->solved ? 1 : 0) << '\t' << (node->expanded ? 1 : 0) << '\n';
  }
  return out.str();
}

struct FitArgs {
  std::string data;
  double lambda = 0.01;
  std::string encoding;
  std::string class_column;
  std::optional<int> max_depth;
  std::optional<double> timeout;
  std::string output;
  std::string trace;
  std::string dump_memo;
  std::optional<long long> seed;
  bool no_header = false;
};

int cmd_fit(const FitArgs& args) {
  aodt::EncodedDataset ds =
      load_encoded(args.data, args.class_column, args.encoding, args.no_header);
  aodt::SearchConfig config;
  config.lambda = args.lambda;
  config.max_depth = args.max_depth;
  config.timeout_seconds = args.timeout;

  aodt::SearchEngine engine(ds, config);
  engine.set_tracing(!args.trace.empty());
  aodt::DecisionTree tree = engine.fit();

  if (!args.trace.empty()) write_text(args.trace, trace_text(engine.take_trace()));
  if (!args.dump_memo.empty()) write_text(args.dump_memo, memo_dump_text(engine.memo()));
  if (!args.output.empty()) {
    write_text(args.output, aodt::tree_to_json(tree).dump(2) + "\n");
  }
  std::cout << run_report(args.data, ds, config, tree, engine.stats()).dump()
            << "\n";
  return engine.stats().termination == aodt::Termination::kSolved ? 0 : 3;
}

struct PredictArgs {
  std::string model;
  std::string data;
  std::string output;
  bool no_header = false;
};

aodt::DecisionTree load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw aodt::DataError("cannot open model file " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw aodt::DataError("model file " + path + " is not valid JSON: " +
                          e.what());
  }
  return aodt::tree_from_json(j);
}

int cmd_predict(const PredictArgs& args) {
  aodt::DecisionTree tree = load_model(args.model);

  std::ifstream in(args.data);
  if (!in) throw aodt::DataError("cannot open data file " + args.data);

  // With a header, feature columns are matched by name and extra columns
  // (the class, say) are ignored. Without one, rows must carry exactly the
  // model's feature columns in training order.
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::string field;
      std::istringstream ss(line);
      while (std::getline(ss, field, ',')) fields.push_back(field);
      if (line.back() == ',') fields.push_back("");
      if (!args.no_header && header.empty()) {
        header = std::move(fields);
        continue;
      }
      rows.push_back(std::move(fields));
    }
  }

  std::vector<int> positions;
  if (args.no_header) {
    for (std::size_t c = 0; c < tree.source_columns.size(); ++c) {
      positions.push_back(static_cast<int>(c));
    }
  } else {
    for (const aodt::SourceColumn& col : tree.source_columns) {
      auto it = std::find(header.begin(), header.end(), col.name);
      if (it == header.end()) {
        throw aodt::DataError("data file lacks column '" + col.name +
                              "' required by the model");
      }
      positions.push_back(static_cast<int>(it - header.begin()));
    }
  }

  std::ostringstream out;
  out << "prediction\n";
  std::vector<std::string> raw(tree.source_columns.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string label = "row " + std::to_string(r + 1);
    for (std::size_t c = 0; c < positions.size(); ++c) {
      std::size_t pos = static_cast<std::size_t>(positions[c]);
      if (pos >= rows[r].size()) {
        throw aodt::DataError(label + " has " +
                              std::to_string(rows[r].size()) +
                              " fields, fewer than the model needs");
      }
      raw[c] = rows[r][pos];
    }
    int cls = aodt::predict_raw(tree, raw, label);
    out << tree.class_names.at(static_cast<std::size_t>(cls)) << "\n";
  }
  emit(out.str(), args.output);
  return 0;
}

struct ExportArgs {
  std::string model;
  std::string format = "json";
  std::string output;
};

int cmd_export(const ExportArgs& args) {
  aodt::DecisionTree tree = load_model(args.model);
  if (args.format == "json") {
    emit(aodt::tree_to_json(tree).dump(2) + "\n", args.output);
  } else if (args.format == "dot") {
    emit(aodt::tree_to_dot(tree), args.output);
  } else {
    throw aodt::UsageError("unknown export format '" + args.format +
                           "' (expected json or dot)");
  }
  return 0;
}

struct BoundArgs {
  int q = 2;
  int c = 2;
  int k = 2;
  double lambda = 0.01;
  std::optional<int> s_star;
  std::optional<double> h_star;
};

int cmd_bound(const BoundArgs& args) {
  if (args.s_star.has_value() != args.h_star.has_value()) {
    throw aodt::UsageError("--s-star and --h-star must be given together");
  }
  aodt::BoundInputs in;
  in.q = args.q;
  in.C = args.c;
  in.K = args.k;
  in.lambda = args.lambda;
  in.s_star = args.s_star;
  in.h_star = args.h_star;
  aodt::BigInt gamma = aodt::gamma_bound(in);
  ordered_json j;
  j["form"] = in.s_star ? "dependent" : "independent";
  j["kappa"] = aodt::bound_kappa(in);
  j["gamma"] = gamma.str();
  j["log10_floor"] = aodt::log10_floor(gamma);
  std::cout << j.dump() << "\n";
  return 0;
}

struct OracleArgs {
  std::string data;
  double lambda = 0.01;
  std::string encoding;
  std::string class_column;
  std::optional<int> max_depth;
  bool force = false;
  std::string output;
  bool no_header = false;
};

int cmd_oracle(const OracleArgs& args) {
  aodt::EncodedDataset ds =
      load_encoded(args.data, args.class_column, args.encoding, args.no_header);
  auto [value, tree] = aodt::brute_force_optimal(ds, args.lambda,
                                                 args.max_depth, args.force);
  aodt::ObjectiveReport rep = aodt::objective(tree, ds);
  if (!args.output.empty()) {
    write_text(args.output, aodt::tree_to_json(tree).dump(2) + "\n");
  }
  ordered_json j;
  j["dataset"] = dataset_id(args.data);
  j["encoding"] = aodt::encoding_name(ds.scheme);
  j["lambda"] = args.lambda;
  j["max_depth"] =
      args.max_depth ? ordered_json(*args.max_depth) : ordered_json();
  j["objective"] = rep.objective;
  j["accuracy"] = rep.accuracy;
  j["splits"] = rep.splits;
  std::cout << j.dump() << "\n";
  return 0;
}

struct EmptyBranchArgs {
  int q = 1;
  int c = 2;
};

int cmd_empty_branches(const EmptyBranchArgs& args) {
  ordered_json j;
  j["q"] = args.q;
  j["C"] = args.c;
  j["closed_form"] = aodt::unnecessary_branch_count(args.q, args.c).str();
  if (args.q * args.c <= 12) {
    j["enumerated"] = aodt::enumerate_empty_branches(args.q, args.c);
  } else {
    j["enumerated"] = nullptr;
  }
  std::cout << j.dump() << "\n";
  return 0;
}

struct BenchArgs {
  std::string suite;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

int cmd_bench(const BenchArgs& args) {
  std::ifstream in(args.suite);
  if (!in) throw aodt::DataError("cannot open suite file " + args.suite);
  std::filesystem::path base = std::filesystem::path(args.suite).parent_path();

  const std::vector<std::string> expected_header = {
      "name",   "path",   "class_column",       "encoding",
      "lambda", "expected_objective", "expected_accuracy", "expected_splits"};

  std::string line;
  std::vector<std::string> header;
  int failures = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (header.empty()) {
      header = fields;
      if (header != expected_header) {
        throw aodt::DataError(
            "suite header must be name,path,class_column,encoding,lambda,"
            "expected_objective,expected_accuracy,expected_splits");
      }
      continue;
    }
    if (fields.size() != expected_header.size()) {
      throw aodt::DataError("suite line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields");
    }
    ordered_json j;
    j["name"] = fields[0];
    try {
      std::filesystem::path data_path(fields[1]);
      if (data_path.is_relative()) data_path = base / data_path;
      aodt::EncodedDataset ds = load_encoded(data_path.string(), fields[2],
                                             fields[3], false);
      aodt::SearchConfig config;
      config.lambda = std::stod(fields[4]);
      auto [tree, stats] = aodt::fit(ds, config);
      aodt::ObjectiveReport rep = aodt::objective(tree, ds);
      double want_obj = std::stod(fields[5]);
      double want_acc = std::stod(fields[6]);
      int want_splits = std::stoi(fields[7]);
      bool pass = std::abs(rep.objective - want_obj) <= 1e-3 &&
                  std::abs(rep.accuracy - want_acc) <= 1e-3 &&
                  rep.splits == want_splits &&
                  stats.termination == aodt::Termination::kSolved;
      j["objective"] = rep.objective;
      j["accuracy"] = rep.accuracy;
      j["splits"] = rep.splits;
      j["time"] = stats.elapsed_seconds;
      j["iterations"] = stats.iterations;
      j["evaluations"] = stats.evaluations;
      j["expected_objective"] = want_obj;
      j["expected_accuracy"] = want_acc;
      j["expected_splits"] = want_splits;
      j["pass"] = pass;
      if (!pass) ++failures;
    } catch (const std::exception& e) {
      j["error"] = e.what();
      j["pass"] = false;
      ++failures;
    }
    std::cout << j.dump() << "\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Optimal sparse decision trees by best-first search over branches.\n"
      "Subcommand reports are single JSON lines on standard output; exit\n"
      "codes are the machine-readable outcome (0 ok, 1 usage error, 2 data\n"
      "error, 3 fit stopped by timeout with an anytime tree)."};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand(
      "fit", std::string("Learn a provably optimal tree. ") + kTraceHelp);
  fit->add_option("--data", fit_args.data, "Training CSV")->required();
  fit->add_option("--lambda", fit_args.lambda,
                  "Per-split penalty, strictly between 0 and 1")
      ->required();
  fit->add_option("--encoding", fit_args.encoding,
                  "ordinal, onehot, onehot-drop-first or onehot-drop-last")
      ->required();
  fit->add_option("--class-column", fit_args.class_column,
                  "Class column name, or 0-based index (negative counts "
                  "from the end)")
      ->required();
  fit->add_option("--max-depth", fit_args.max_depth,
                  "Cap on clauses per branch (depth of the tree)");
  fit->add_option("--timeout", fit_args.timeout,
                  "Wall-clock budget in seconds, checked between iterations");
  fit->add_option("--output", fit_args.output, "Write the model JSON here");
  fit->add_option("--trace", fit_args.trace, "Write a per-iteration trace");
  fit->add_option("--dump-memo", fit_args.dump_memo,
                  "Write the final memo, one branch per line: key, rows, "
                  "V, V-hat, solved, expanded; sorted by key");
  fit->add_option("--seed", fit_args.seed,
                  "Accepted for harness compatibility; the search is "
                  "deterministic and ignores it");
  fit->add_flag("--no-header", fit_args.no_header,
                "Treat the first CSV line as data; columns are named c0..");

  PredictArgs predict_args;
  CLI::App* predict = app.add_subcommand(
      "predict",
      "Predict classes for a CSV using a fitted model. With a header, "
      "feature columns are matched by name and extra columns are ignored; "
      "with --no-header, rows must hold exactly the model's feature columns "
      "in training order.");
  predict->add_option("--model", predict_args.model, "Model JSON from fit")
      ->required();
  predict->add_option("--data", predict_args.data, "Input CSV")->required();
  predict->add_option("--output", predict_args.output,
                      "Write predictions here instead of standard output");
  predict->add_flag("--no-header", predict_args.no_header,
                    "Input has no header row");

  ExportArgs export_args;
  CLI::App* exp = app.add_subcommand("export",
                                     "Re-emit a model as JSON or Graphviz");
  exp->add_option("--model", export_args.model, "Model JSON from fit")
      ->required();
  exp->add_option("--format", export_args.format, "json or dot")->required();
  exp->add_option("--output", export_args.output,
                  "Write here instead of standard output");

  BoundArgs bound_args;
  CLI::App* bound = app.add_subcommand(
      "bound",
      "Upper bound on branch evaluations, exact integer plus base-10 "
      "exponent");
  bound->add_option("--q", bound_args.q, "Feature count")->required();
  bound->add_option("--c", bound_args.c, "Categories per feature")->required();
  bound->add_option("--k", bound_args.k, "Class count")->required();
  bound->add_option("--lambda", bound_args.lambda, "Per-split penalty")
      ->required();
  bound->add_option("--s-star", bound_args.s_star,
                    "Split count of the known optimum (problem-dependent "
                    "form; needs --h-star)");
  bound->add_option("--h-star", bound_args.h_star,
                    "Accuracy of the known optimum (problem-dependent form; "
                    "needs --s-star)");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand(
      "oracle",
      "Exhaustive exact optimum by dynamic programming over all branches; "
      "independent of the search engine");
  oracle->add_option("--data", oracle_args.data, "Training CSV")->required();
  oracle->add_option("--lambda", oracle_args.lambda, "Per-split penalty")
      ->required();
  oracle->add_option("--encoding", oracle_args.encoding,
                     "ordinal, onehot, onehot-drop-first or onehot-drop-last")
      ->required();
  oracle->add_option("--class-column", oracle_args.class_column,
                     "Class column name or 0-based index")
      ->required();
  oracle->add_option("--max-depth", oracle_args.max_depth,
                     "Cap on clauses per branch");
  oracle->add_flag("--force", oracle_args.force,
                   "Run even with more than 12 features");
  oracle->add_option("--output", oracle_args.output,
                     "Write the oracle's tree as model JSON");
  oracle->add_flag("--no-header", oracle_args.no_header,
                   "Treat the first CSV line as data");

  EmptyBranchArgs empty_args;
  CLI::App* empty = app.add_subcommand(
      "empty-branches",
      "How many one-hot branch expressions describe no reachable input: "
      "closed form alongside exact enumeration (the two differ; both are "
      "reported)");
  empty->add_option("--q", empty_args.q, "Original feature count")->required();
  empty->add_option("--c", empty_args.c, "Categories per feature")->required();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench",
      "Run a regression suite CSV (name,path,class_column,encoding,lambda,"
      "expected_objective,expected_accuracy,expected_splits). Relative "
      "dataset paths resolve against the suite file. Exit 0 only if every "
      "entry matches within 1e-3 (splits exactly).");
  bench->add_option("--suite", bench_args.suite, "Suite CSV")->required();

  try {
    app.parse(argc, argv);
    if (fit->parsed()) return cmd_fit(fit_args);
    if (predict->parsed()) return cmd_predict(predict_args);
    if (exp->parsed()) return cmd_export(export_args);
    if (bound->parsed()) return cmd_bound(bound_args);
    if (oracle->parsed()) return cmd_oracle(oracle_args);
    if (empty->parsed()) return cmd_empty_branches(empty_args);
    if (bench->parsed()) return cmd_bench(bench_args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const aodt::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const aodt::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
