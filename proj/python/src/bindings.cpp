#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mti/collapse.hpp"
#include "mti/dense_limit.hpp"
#include "mti/ensemble.hpp"
#include "mti/graph.hpp"
#include "mti/indices.hpp"
#include "mti/inequalities.hpp"
#include "mti/models.hpp"
#include "mti/oracle.hpp"
#include "mti/results.hpp"

namespace py = pybind11;
using namespace mti;

namespace {

using EdgePairs = std::vector<std::pair<VertexId, VertexId>>;

Graph make_graph(std::size_t n, const EdgePairs& pairs) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [u, v] : pairs) edges.push_back({u, v});
  return Graph::build(n, edges);
}

EdgePairs edge_pairs(const Graph& g) {
  EdgePairs out;
  for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

ModelSpec make_spec(const std::string& model, std::optional<std::size_t> n,
                    std::optional<std::size_t> n1, std::optional<std::size_t> n2,
                    std::optional<double> p, std::optional<double> r, std::optional<double> k) {
  const auto kind = parse_model_kind(model);
  ModelSpec spec;
  if (kind == ModelKind::BR) {
    if (!n1 || !n2) throw std::invalid_argument("br needs n1 and n2");
    if (k)
      spec = spec_for_mean_degree(kind, *n1, *n2, *k);
    else if (p)
      spec = BipartiteRandom{*n1, *n2, *p};
    else
      throw std::invalid_argument("br needs p or k");
  } else {
    if (!n) throw std::invalid_argument(model + " needs n");
    if (k)
      spec = spec_for_mean_degree(kind, *n, 0, *k);
    else if (kind == ModelKind::ER && p)
      spec = ErdosRenyi{*n, *p};
    else if (kind == ModelKind::RG && r)
      spec = RandomGeometric{*n, *r};
    else
      throw std::invalid_argument(model + (kind == ModelKind::RG ? " needs r or k" : " needs p or k"));
  }
  validate(spec);
  return spec;
}

std::optional<double> as_optional(const LogIndexValue& v) {
  if (v.is_log_zero()) return std::nullopt;
  return v.value();
}

DegreeFunction function_for(const std::string& name) { return parse_function_spec(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiplicative degree-based topological indices on random graphs";

  static py::exception<GraphError> graph_error(m, "GraphError", PyExc_ValueError);
  static py::exception<EvaluationError> evaluation_error(m, "EvaluationError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const GraphError& e) {
      graph_error(e.what());
    } catch (const EvaluationError& e) {
      evaluation_error(e.what());
    } catch (const UnsupportedPrediction& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const CollapseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"),
           "Simple undirected graph on vertices 0..n-1. Rejects self-loops, duplicates and "
           "out-of-range endpoints.")
      .def_property_readonly("n", &Graph::vertex_count)
      .def_property_readonly("m", &Graph::edge_count)
      .def_property_readonly("edges", &edge_pairs)
      .def_property_readonly("degrees",
                             [](const Graph& g) {
                               return std::vector<Degree>(g.degrees().begin(), g.degrees().end());
                             })
      .def("degree_summary",
           [](const Graph& g) {
             const auto s = degree_summary(g);
             py::dict d;
             d["min_degree"] = s.min_degree;
             d["max_degree"] = s.max_degree;
             d["mean_degree"] = s.mean_degree_empirical;
             d["isolated"] = s.isolated_count;
             return d;
           })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.vertex_count()) + " m=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("path_graph", &path_graph, py::arg("n"));
  m.def("cycle_graph", &cycle_graph, py::arg("n"));
  m.def("complete_graph", &complete_graph, py::arg("n"));
  m.def("read_edge_list", &read_edge_list_file, py::arg("path"));
  m.def("write_edge_list", &write_edge_list_file, py::arg("path"), py::arg("graph"));

  m.def(
      "generate",
      [](const std::string& model, std::optional<std::size_t> n, std::optional<std::size_t> n1,
         std::optional<std::size_t> n2, std::optional<double> p, std::optional<double> r,
         std::optional<double> k, std::uint64_t seed, std::uint64_t point_id, std::uint64_t replica) {
        return generate(make_spec(model, n, n1, n2, p, r, k), {seed, point_id, replica});
      },
      py::arg("model"), py::kw_only(), py::arg("n") = py::none(), py::arg("n1") = py::none(),
      py::arg("n2") = py::none(), py::arg("p") = py::none(), py::arg("r") = py::none(),
      py::arg("k") = py::none(), py::arg("seed"), py::arg("point_id") = 0, py::arg("replica") = 0,
      "Sample one graph of model 'er', 'rg' or 'br'. Same arguments give the same graph.");

  m.def(
      "mean_degree",
      [](const std::string& model, std::optional<std::size_t> n, std::optional<std::size_t> n1,
         std::optional<std::size_t> n2, std::optional<double> p, std::optional<double> r) {
        return mean_degree(make_spec(model, n, n1, n2, p, r, std::nullopt));
      },
      py::arg("model"), py::kw_only(), py::arg("n") = py::none(), py::arg("n1") = py::none(),
      py::arg("n2") = py::none(), py::arg("p") = py::none(), py::arg("r") = py::none());
  m.def("g_of_r", &g_of_r, py::arg("r"));

  m.def("index_names", [] {
    std::vector<std::string> names;
    for (auto k : all_index_kinds()) names.push_back(index_name(k));
    return names;
  });
  m.def("additive_names", [] {
    std::vector<std::string> names;
    for (auto k : all_additive_kinds()) names.push_back(additive_name(k));
    return names;
  });

  m.def(
      "ln_index",
      [](const Graph& g, const std::string& index, const std::string& policy, bool compensated) {
        const auto eval = ln_multiplicative_index(g, function_for(index), parse_policy(policy),
                                                  compensated ? Summation::Compensated : Summation::Plain);
        return as_optional(eval.ln);
      },
      py::arg("graph"), py::arg("index"), py::arg("policy") = "exclude", py::arg("compensated") = false,
      "ln of a multiplicative index, or None for a log-zero product. `index` is a built-in name "
      "or a function spec such as 'edge:sum-pow:2'.");
  m.def(
      "additive_index",
      [](const Graph& g, const std::string& index, const std::string& policy) {
        DegreeFunction f;
        try {
          f = term_function(parse_additive_kind(index));
        } catch (const std::invalid_argument&) {
          f = function_for(index);
        }
        return additive_index(g, f, parse_policy(policy));
      },
      py::arg("graph"), py::arg("index"), py::arg("policy") = "exclude");
  m.def(
      "oracle_ln_index",
      [](const Graph& g, const std::string& index, const std::string& policy) {
        return as_optional(exact_ln_oracle(g, parse_index_kind(index), parse_policy(policy)));
      },
      py::arg("graph"), py::arg("index"), py::arg("policy") = "exclude");

  m.def(
      "predict",
      [](const std::string& model, const std::string& index, double d1, std::optional<double> d2) {
        return predict(parse_model_kind(model), parse_index_kind(index), MeanDegrees(d1, d2.value_or(d1)));
      },
      py::arg("model"), py::arg("index"), py::arg("d1"), py::arg("d2") = py::none(),
      "Dense-limit ln X / n (ln X / n1 for 'br').");
  m.def(
      "predict_per_vertex",
      [](const std::string& model, const std::string& index, double d1, std::optional<double> d2) {
        return predict_per_vertex(parse_model_kind(model), parse_index_kind(index),
                                  MeanDegrees(d1, d2.value_or(d1)));
      },
      py::arg("model"), py::arg("index"), py::arg("d1"), py::arg("d2") = py::none());

  m.def(
      "sweep",
      [](const std::string& model, std::vector<std::size_t> n, std::vector<std::size_t> n1,
         std::vector<std::size_t> n2, std::vector<double> p, std::vector<double> r,
         std::vector<double> k, std::vector<std::string> indices, std::uint64_t budget,
         std::uint64_t seed, const std::string& policy, unsigned workers) {
        EnsembleSpec spec;
        const auto kind = parse_model_kind(model);
        std::vector<std::pair<std::size_t, std::size_t>> sizes;
        if (kind == ModelKind::BR) {
          if (n1.size() != n2.size()) throw std::invalid_argument("n1 and n2 must have equal lengths");
          for (std::size_t i = 0; i < n1.size(); ++i) sizes.emplace_back(n1[i], n2[i]);
        } else {
          for (auto v : n) sizes.emplace_back(v, 0);
        }
        const auto& params = !k.empty() ? k : (kind == ModelKind::RG ? r : p);
        for (auto [a, b] : sizes)
          for (double v : params) {
            const std::optional<double> pv = k.empty() && kind != ModelKind::RG ? std::optional(v) : std::nullopt;
            const std::optional<double> rv = k.empty() && kind == ModelKind::RG ? std::optional(v) : std::nullopt;
            const std::optional<double> kv = k.empty() ? std::nullopt : std::optional(v);
            spec.grid.push_back(kind == ModelKind::BR ? make_spec(model, {}, a, b, pv, rv, kv)
                                                      : make_spec(model, a, {}, {}, pv, rv, kv));
          }
        if (spec.grid.empty()) throw std::invalid_argument("empty grid");
        for (const auto& name : indices) spec.indices.push_back(parse_index_kind(name));
        if (spec.indices.empty()) spec.indices = all_index_kinds();
        spec.budget = budget;
        spec.master_seed = seed;
        spec.policy = parse_policy(policy);
        spec.workers = workers == 0 ? 1 : workers;
        std::vector<ResultRow> rows;
        {
          py::gil_scoped_release release;
          rows = to_rows(sweep(spec));
        }
        return results_csv(rows);
      },
      py::arg("model"), py::kw_only(), py::arg("n") = std::vector<std::size_t>{},
      py::arg("n1") = std::vector<std::size_t>{}, py::arg("n2") = std::vector<std::size_t>{},
      py::arg("p") = std::vector<double>{}, py::arg("r") = std::vector<double>{},
      py::arg("k") = std::vector<double>{}, py::arg("indices") = std::vector<std::string>{},
      py::arg("budget") = kDefaultBudget, py::arg("seed"), py::arg("policy") = "exclude",
      py::arg("workers") = 1,
      "Ensemble averages over a grid; returns the results table as CSV text.");

  m.def(
      "collapse",
      [](const std::vector<std::string>& tables, const std::string& index, double tolerance,
         double sem_factor, std::size_t min_points) {
        const auto kind = parse_index_kind(index);
        std::vector<Curve> curves;
        for (std::size_t i = 0; i < tables.size(); ++i) {
          std::istringstream in(tables[i]);
          const auto rows = read_results_csv(in);
          const std::string prefix = tables.size() > 1 ? "#" + std::to_string(i + 1) + " " : "";
          for (auto& c : curves_from_rows(rows, kind, prefix)) curves.push_back(std::move(c));
        }
        const CollapseOptions options{tolerance, sem_factor, min_points};
        const auto report = collapse_check(curves, kind, options);
        std::ostringstream summary;
        write_collapse_summary(summary, report, options);
        py::dict d;
        d["labels"] = report.labels;
        d["grid"] = report.grid;
        d["curves"] = report.interpolated;
        d["max_deviation"] = report.max_deviation;
        d["max_deviation_k"] = report.max_deviation_k;
        d["within_tolerance"] = report.within_tolerance;
        d["dense_deviation"] = report.dense_deviation;
        d["summary"] = summary.str();
        return d;
      },
      py::arg("tables"), py::arg("index"), py::arg("tolerance") = 0.05, py::arg("sem_factor") = 5.0,
      py::arg("min_points") = 5,
      "Compare mean_ln/n curves from results CSV texts (as returned by sweep).");

  m.def(
      "verify",
      [](std::uint64_t seed, std::vector<std::size_t> sizes, std::size_t graphs,
         std::vector<std::string> functions, bool include_counterexample) {
        std::vector<DegreeFunction> fs;
        for (const auto& name : functions) fs.push_back(function_for(name));
        if (fs.empty())
          for (auto kind : all_index_kinds()) fs.push_back(factor_function(kind));
        std::vector<VerificationRecord> records;
        {
          py::gil_scoped_release release;
          records = verify_corpus(default_corpus({sizes, graphs, seed}), fs);
        }
        if (include_counterexample)
          for (auto& c : check_all(petrovic_counterexample_factors()))
            records.push_back({"constructed", 0, 0.0, std::move(c)});
        std::ostringstream csv;
        write_verification_csv(csv, records);
        py::dict d;
        d["passed"] = verification_passed(records);
        d["checks"] = records.size();
        std::size_t violated = 0, flagged = 0;
        for (const auto& r : records) {
          violated += r.check.hypothesis_ok && !r.check.holds;
          flagged += !r.check.hypothesis_ok;
        }
        d["violated"] = violated;
        d["flagged"] = flagged;
        d["csv"] = csv.str();
        return d;
      },
      py::kw_only(), py::arg("seed"), py::arg("sizes") = std::vector<std::size_t>{8, 16, 32},
      py::arg("graphs") = 100, py::arg("functions") = std::vector<std::string>{},
      py::arg("include_counterexample") = false);
}
