#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aodt/analysis.hpp"
#include "aodt/search.hpp"

namespace py = pybind11;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(py::str(j.dump()));
}

nlohmann::ordered_json py_to_json(const py::object& obj) {
  std::string dumped =
      py::cast<std::string>(py::module_::import("json").attr("dumps")(obj));
  return nlohmann::ordered_json::parse(dumped);
}

py::object bigint_to_py(const aodt::BigInt& x) {
  return py::module_::import("builtins").attr("int")(py::str(x.str()));
}

aodt::EncodedDataset build_dataset(const std::vector<std::string>& columns,
                                   const std::vector<std::vector<std::string>>& rows,
                                   const std::string& class_column,
                                   const std::string& encoding) {
  aodt::RawTable raw = aodt::make_table(columns, rows, class_column);
  return aodt::encode(raw, aodt::encoding_from_name(encoding));
}

aodt::SearchConfig build_config(double lam, std::optional<int> max_depth,
                                std::optional<double> timeout) {
  aodt::SearchConfig config;
  config.lambda = lam;
  config.max_depth = max_depth;
  config.timeout_seconds = timeout;
  return config;
}

py::dict fit_result(const aodt::EncodedDataset& ds,
                    const aodt::DecisionTree& tree,
                    const aodt::SearchStats& stats) {
  aodt::ObjectiveReport rep = aodt::objective(tree, ds);
  py::dict out;
  out["objective"] = rep.objective;
  out["accuracy"] = rep.accuracy;
  out["splits"] = rep.splits;
  out["iterations"] = stats.iterations;
  out["evaluations"] = stats.evaluations;
  out["time"] = stats.elapsed_seconds;
  out["termination"] =
      stats.termination == aodt::Termination::kSolved ? "solved" : "timeout";
  out["model"] = json_to_py(aodt::tree_to_json(tree));
  return out;
}

py::dict py_fit(const std::vector<std::string>& columns,
                const std::vector<std::vector<std::string>>& rows,
                const std::string& class_column, double lam,
                const std::string& encoding, std::optional<int> max_depth,
                std::optional<double> timeout) {
  aodt::EncodedDataset ds = build_dataset(columns, rows, class_column, encoding);
  auto [tree, stats] = aodt::fit(ds, build_config(lam, max_depth, timeout));
  return fit_result(ds, tree, stats);
}

py::dict py_fit_csv(const std::string& path, const std::string& class_column,
                    double lam, const std::string& encoding, bool has_header,
                    std::optional<int> max_depth,
                    std::optional<double> timeout) {
  aodt::RawTable raw = aodt::load_csv(path, class_column, has_header);
  aodt::EncodedDataset ds =
      aodt::encode(raw, aodt::encoding_from_name(encoding));
  auto [tree, stats] = aodt::fit(ds, build_config(lam, max_depth, timeout));
  return fit_result(ds, tree, stats);
}

std::vector<std::string> py_predict(
    const py::object& model, const std::vector<std::vector<std::string>>& rows) {
  aodt::DecisionTree tree = aodt::tree_from_json(py_to_json(model));
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int cls = aodt::predict_raw(tree, rows[r],
                                "row " + std::to_string(r + 1));
    out.push_back(tree.class_names.at(static_cast<std::size_t>(cls)));
  }
  return out;
}

py::dict py_oracle(const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows,
                   const std::string& class_column, double lam,
                   const std::string& encoding, std::optional<int> max_depth,
                   bool force) {
  aodt::EncodedDataset ds = build_dataset(columns, rows, class_column, encoding);
  auto [value, tree] = aodt::brute_force_optimal(ds, lam, max_depth, force);
  aodt::ObjectiveReport rep = aodt::objective(tree, ds);
  py::dict out;
  out["objective"] = rep.objective;
  out["accuracy"] = rep.accuracy;
  out["splits"] = rep.splits;
  out["model"] = json_to_py(aodt::tree_to_json(tree));
  return out;
}

aodt::BoundInputs make_inputs(int q, int c, int k, double lam,
                              std::optional<int> s_star,
                              std::optional<double> h_star) {
  if (s_star.has_value() != h_star.has_value()) {
    throw aodt::UsageError("s_star and h_star must be given together");
  }
  aodt::BoundInputs in;
  in.q = q;
  in.C = c;
  in.K = k;
  in.lambda = lam;
  in.s_star = s_star;
  in.h_star = h_star;
  return in;
}

}  // namespace

PYBIND11_MODULE(aodt, m) {
  m.doc() =
      "Provably optimal sparse decision trees by best-first search over "
      "branches, with an exhaustive oracle and combinatorial bound "
      "calculators.";

  py::register_exception<aodt::DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<aodt::UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("fit", &py_fit, py::arg("columns"), py::arg("rows"),
        py::arg("class_column"), py::arg("lam"),
        py::arg("encoding") = "ordinal", py::arg("max_depth") = py::none(),
        py::arg("timeout") = py::none(),
        "Learn an optimal tree from in-memory text rows. Returns a dict "
        "with objective, accuracy, splits, iterations, evaluations, time, "
        "termination and the model as a JSON-shaped dict.");

  m.def("fit_csv", &py_fit_csv, py::arg("path"), py::arg("class_column"),
        py::arg("lam"), py::arg("encoding") = "ordinal",
        py::arg("has_header") = true, py::arg("max_depth") = py::none(),
        py::arg("timeout") = py::none(),
        "Learn an optimal tree from a CSV file; same result shape as fit.");

  m.def("predict", &py_predict, py::arg("model"), py::arg("rows"),
        "Predict class texts for raw feature rows (training column order) "
        "using a model dict from fit.");

  m.def("oracle", &py_oracle, py::arg("columns"), py::arg("rows"),
        py::arg("class_column"), py::arg("lam"),
        py::arg("encoding") = "ordinal", py::arg("max_depth") = py::none(),
        py::arg("force") = false,
        "Exact optimum by exhaustive dynamic programming, independent of "
        "the search engine. Refuses more than 12 encoded features unless "
        "force is set.");

  m.def(
      "gamma_bound",
      [](int q, int c, int k, double lam, std::optional<int> s_star,
         std::optional<double> h_star) {
        return bigint_to_py(
            aodt::gamma_bound(make_inputs(q, c, k, lam, s_star, h_star)));
      },
      py::arg("q"), py::arg("c"), py::arg("k"), py::arg("lam"),
      py::arg("s_star") = py::none(), py::arg("h_star") = py::none(),
      "Exact upper bound on branch evaluations, as a Python int. Supplying "
      "s_star and h_star switches to the problem-dependent form.");

  m.def(
      "bound_kappa",
      [](int q, int c, int k, double lam, std::optional<int> s_star,
         std::optional<double> h_star) {
        return aodt::bound_kappa(make_inputs(q, c, k, lam, s_star, h_star));
      },
      py::arg("q"), py::arg("c"), py::arg("k"), py::arg("lam"),
      py::arg("s_star") = py::none(), py::arg("h_star") = py::none(),
      "Depth cutoff used inside gamma_bound; negative means the bound is 0.");

  m.def(
      "unnecessary_branch_count",
      [](int q, int c) { return bigint_to_py(aodt::unnecessary_branch_count(q, c)); },
      py::arg("q"), py::arg("c"),
      "Closed form 3^(q*C) - (2C+1)^q for one-hot branch expressions that "
      "match no reachable input.");

  m.def("enumerate_empty_branches", &aodt::enumerate_empty_branches,
        py::arg("q"), py::arg("c"),
        "Exact count by enumeration (q*C <= 12). Differs from the closed "
        "form; both are intentionally exposed.");
}
