#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
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
#include "mti/results.hpp"

namespace mti::cli {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridFlags {
  std::string model = "er";
  std::vector<std::size_t> n;
  std::vector<std::size_t> n1;
  std::vector<std::size_t> n2;
  std::vector<double> p;
  std::vector<double> r;
  std::vector<double> k;
};

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--model", g.model, "Random graph model")
      ->check(CLI::IsMember({"er", "rg", "br"}))
      ->capture_default_str();
  cmd->add_option("--n", g.n, "Graph sizes (ER, RG), comma separated")->delimiter(',');
  cmd->add_option("--n1", g.n1, "BR set-1 sizes, paired with --n2")->delimiter(',');
  cmd->add_option("--n2", g.n2, "BR set-2 sizes, paired with --n1")->delimiter(',');
  cmd->add_option("--p", g.p, "Connection probabilities (ER, BR)")->delimiter(',');
  cmd->add_option("--r", g.r, "Connection radii (RG)")->delimiter(',');
  cmd->add_option("--k", g.k, "Target mean degrees <k>; sets p or r per size")->delimiter(',');
}

std::vector<ModelSpec> build_grid(const GridFlags& g) {
  const ModelKind kind = parse_model_kind(g.model);

  struct Size {
    std::size_t a, b;
  };
  std::vector<Size> sizes;
  if (kind == ModelKind::BR) {
    if (g.n1.empty() || g.n2.empty()) throw UsageError("--model br needs --n1 and --n2");
    const std::size_t len = std::max(g.n1.size(), g.n2.size());
    if ((g.n1.size() != len && g.n1.size() != 1) || (g.n2.size() != len && g.n2.size() != 1))
      throw UsageError("--n1 and --n2 must have equal lengths (or one of them a single value)");
    for (std::size_t i = 0; i < len; ++i)
      sizes.push_back({g.n1[g.n1.size() == 1 ? 0 : i], g.n2[g.n2.size() == 1 ? 0 : i]});
  } else {
    if (g.n.empty()) throw UsageError("--model " + g.model + " needs --n");
    for (auto n : g.n) sizes.push_back({n, 0});
  }

  const bool use_k = !g.k.empty();
  const auto& params = kind == ModelKind::RG ? g.r : g.p;
  if (use_k && !params.empty())
    throw UsageError("give either --k or --" + std::string(kind == ModelKind::RG ? "r" : "p"));
  if (!use_k && params.empty())
    throw UsageError("missing parameter grid: --" + std::string(kind == ModelKind::RG ? "r" : "p") +
                     " or --k");
  if (kind == ModelKind::RG && !g.p.empty()) throw UsageError("--model rg takes --r, not --p");
  if (kind != ModelKind::RG && !g.r.empty()) throw UsageError("--r applies to --model rg only");

  std::vector<ModelSpec> grid;
  for (const auto& s : sizes) {
    for (double value : use_k ? g.k : params) {
      ModelSpec spec;
      if (use_k)
        spec = spec_for_mean_degree(kind, s.a, s.b, value);
      else if (kind == ModelKind::ER)
        spec = ErdosRenyi{s.a, value};
      else if (kind == ModelKind::RG)
        spec = RandomGeometric{s.a, value};
      else
        spec = BipartiteRandom{s.a, s.b, value};
      validate(spec);
      grid.push_back(spec);
    }
  }
  return grid;
}

std::vector<IndexKind> parse_indices(const std::vector<std::string>& names) {
  std::vector<IndexKind> out;
  for (const auto& name : names) out.push_back(parse_index_kind(name));
  return out;
}

std::vector<std::string> default_index_names() {
  std::vector<std::string> names;
  for (auto kind : all_index_kinds()) names.push_back(index_name(kind));
  return names;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  bool to_stdout() const { return !file_.is_open(); }

 private:
  std::ofstream file_;
};

// --- generate ---------------------------------------------------------------

struct GenerateFlags {
  GridFlags grid;
  std::size_t replicas = 1;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
};

int cmd_generate(const GenerateFlags& f) {
  const auto grid = build_grid(f.grid);
  std::filesystem::create_directories(f.out);
  for (std::size_t id = 0; id < grid.size(); ++id) {
    const auto& spec = grid[id];
    for (std::size_t rep = 0; rep < f.replicas; ++rep) {
      const SeedTriple seed{*f.seed, id, rep};
      std::ostringstream name;
      name << model_name(model_kind(spec)) << "_n" << total_vertices(spec) << '_'
           << parameter_name(spec) << format_real(parameter_value(spec)) << "_seed" << seed.master_seed
           << "_pt" << seed.point_id << "_rep" << seed.replica_index << ".edges";
      const auto path = std::filesystem::path(f.out) / name.str();
      write_edge_list_file(path.string(), generate(spec, seed));
      std::cout << path.string() << '\n';
    }
  }
  return kOk;
}

// --- index ------------------------------------------------------------------

struct IndexFlags {
  std::vector<std::string> files;
  std::vector<std::string> indices;
  std::string policy = "exclude";
  std::string out;
};

int cmd_index(const IndexFlags& f) {
  const auto policy = parse_policy(f.policy);
  const auto names = f.indices.empty() ? default_index_names() : f.indices;
  Output out(f.out);
  auto& os = out.stream();
  os << "file,n,m,index,form,value,excluded\n";
  for (const auto& path : f.files) {
    const Graph g = read_edge_list_file(path);
    for (const auto& name : names) {
      std::string form = "ln_product", value;
      std::size_t excluded = 0;
      bool multiplicative = true;
      IndexKind kind{};
      try {
        kind = parse_index_kind(name);
      } catch (const std::invalid_argument&) {
        multiplicative = false;
      }
      if (multiplicative) {
        const auto eval = ln_multiplicative_index(g, kind, policy);
        value = eval.ln.is_log_zero() ? "logzero" : format_real(eval.ln.value());
        excluded = eval.excluded_vertices;
      } else {
        form = "sum";
        value = format_real(additive_index(g, parse_additive_kind(name), policy));
      }
      os << path << ',' << g.vertex_count() << ',' << g.edge_count() << ',' << name << ',' << form
         << ',' << value << ',' << excluded << '\n';
    }
  }
  return kOk;
}

// --- sweep ------------------------------------------------------------------

struct SweepFlags {
  GridFlags grid;
  std::vector<std::string> indices;
  std::uint64_t budget = kDefaultBudget;
  std::optional<std::uint64_t> seed;
  std::string policy = "exclude";
  unsigned workers = 1;
  std::string out;
};

int cmd_sweep(const SweepFlags& f) {
  EnsembleSpec spec;
  spec.grid = build_grid(f.grid);
  spec.indices = parse_indices(f.indices.empty() ? default_index_names() : f.indices);
  spec.budget = f.budget;
  spec.master_seed = *f.seed;
  spec.policy = parse_policy(f.policy);
  spec.workers = std::max(1u, f.workers);
  std::size_t max_n = 0;
  for (const auto& point : spec.grid) max_n = std::max(max_n, total_vertices(point));
  if (spec.budget < max_n)
    throw UsageError("--budget must be at least the largest graph size (" + std::to_string(max_n) + ")");

  const auto rows = to_rows(sweep(spec));
  Output out(f.out);
  write_results_csv(out.stream(), rows);
  return kOk;
}

// --- collapse ---------------------------------------------------------------

struct CollapseFlags {
  std::vector<std::string> files;
  std::string index;
  double tolerance = 0.05;
  double sem_factor = 5.0;
  std::size_t min_points = 5;
  std::string out;
};

int cmd_collapse(const CollapseFlags& f) {
  const auto index = parse_index_kind(f.index);
  std::vector<Curve> curves;
  for (std::size_t i = 0; i < f.files.size(); ++i) {
    const auto rows = read_results_csv_file(f.files[i]);
    const std::string prefix = f.files.size() > 1 ? "#" + std::to_string(i + 1) + " " : "";
    for (auto& c : curves_from_rows(rows, index, prefix)) curves.push_back(std::move(c));
  }
  const CollapseOptions options{f.tolerance, f.sem_factor, f.min_points};
  const auto report = collapse_check(curves, index, options);
  Output out(f.out);
  write_collapse_csv(out.stream(), report, curves);
  write_collapse_summary(out.to_stdout() ? std::cerr : std::cout, report, options);
  return report.within_tolerance ? kOk : kCheckFailed;
}

// --- predict ----------------------------------------------------------------

struct PredictFlags {
  std::string model = "er";
  std::vector<std::string> indices;
  std::vector<double> k;
  std::vector<double> d1;
  std::vector<double> d2;
};

int cmd_predict(const PredictFlags& f) {
  const auto model = parse_model_kind(f.model);
  std::vector<MeanDegrees> points;
  if (!f.d1.empty() || !f.d2.empty()) {
    if (model != ModelKind::BR) throw UsageError("--d1/--d2 apply to --model br only");
    if (f.d1.size() != f.d2.size()) throw UsageError("--d1 and --d2 must have equal lengths");
    for (std::size_t i = 0; i < f.d1.size(); ++i) points.emplace_back(f.d1[i], f.d2[i]);
  }
  for (double k : f.k) points.emplace_back(k);
  if (points.empty()) throw UsageError("give mean degrees with --k (or --d1/--d2 for br)");

  const auto names = f.indices.empty() ? std::vector<std::string>{} : f.indices;
  std::vector<IndexKind> kinds = names.empty() ? studied_index_kinds() : parse_indices(names);
  std::cout << "model,index,mean_degree_1,mean_degree_2,prediction,prediction_per_vertex\n";
  for (const auto& d : points)
    for (auto kind : kinds)
      std::cout << f.model << ',' << index_name(kind) << ',' << format_real(d.set1) << ','
                << format_real(d.set2) << ',' << format_real(predict(model, kind, d)) << ','
                << format_real(predict_per_vertex(model, kind, d)) << '\n';
  return kOk;
}

// --- verify -----------------------------------------------------------------

struct VerifyFlags {
  std::vector<std::size_t> sizes{8, 16, 32};
  std::size_t graphs = 100;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> functions;
  bool include_counterexample = false;
  std::string out;
};

int cmd_verify(const VerifyFlags& f) {
  std::vector<DegreeFunction> functions;
  if (f.functions.empty())
    for (auto kind : all_index_kinds()) functions.push_back(factor_function(kind));
  for (const auto& spec : f.functions) functions.push_back(parse_function_spec(spec));

  const auto corpus = default_corpus({f.sizes, f.graphs, *f.seed});
  std::vector<VerificationRecord> records;
  try {
    records = verify_corpus(corpus, functions);
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  }

  std::vector<CorpusGraph> regular;
  for (std::size_t n : f.sizes) {
    regular.push_back({ErdosRenyi{n, 1.0}, {}, complete_graph(n)});
    if (n >= 3) regular.push_back({ErdosRenyi{n, 0.0}, {}, cycle_graph(n)});
  }
  for (auto& r : verify_corpus(regular, functions)) {
    r.model = "regular";
    records.push_back(std::move(r));
  }
  if (f.include_counterexample) {
    for (auto& check : check_all(petrovic_counterexample_factors()))
      records.push_back({"constructed", 0, 0.0, std::move(check)});
    auto [graph, fn] = petrovic_counterexample_graph();
    for (auto& check : check_all(collect_factors(graph, fn)))
      records.push_back({"constructed", graph.vertex_count(), 0.0, std::move(check)});
  }

  Output out(f.out);
  write_verification_csv(out.stream(), records);
  const auto violations = std::count_if(records.begin(), records.end(), [](const auto& r) {
    return r.check.hypothesis_ok && !r.check.holds;
  });
  const auto flagged = std::count_if(records.begin(), records.end(), [](const auto& r) {
    return !r.check.hypothesis_ok;
  });
  auto& summary = out.to_stdout() ? std::cerr : std::cout;
  summary << records.size() << " checks over " << corpus.size() << " sampled and "
          << regular.size() << " regular graphs, " << functions.size() << " functions: "
          << violations << " violated, " << flagged << " with unmet hypothesis (not asserted)\n";
  return verification_passed(records) ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Multiplicative topological indices on random graph ensembles"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate_cmd = app.add_subcommand("generate", "Write sampled graphs as edge-list files");
  add_grid_flags(generate_cmd, gen.grid);
  generate_cmd->add_option("--replicas", gen.replicas, "Graphs per grid point")->capture_default_str();
  generate_cmd->add_option("--seed", gen.seed, "Master seed")->required();
  generate_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();

  IndexFlags idx;
  auto* index_cmd = app.add_subcommand("index", "Evaluate indices on edge-list files");
  index_cmd->add_option("files", idx.files, "Edge-list files")->required();
  index_cmd->add_option("--index", idx.indices,
                        "Indices: nk,pi1,pi2,pi1s,rpi,hpi,chipi,idpi,gapi (ln of product) or "
                        "m1,m2,r,h,chi,id (sums)")
      ->delimiter(',');
  index_cmd->add_option("--policy", idx.policy, "Isolated vertices: exclude | logzero")
      ->check(CLI::IsMember({"exclude", "logzero"}))
      ->capture_default_str();
  index_cmd->add_option("--out", idx.out, "Output CSV (default stdout)");

  SweepFlags sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Ensemble averages over a parameter grid");
  add_grid_flags(sweep_cmd, sw.grid);
  sweep_cmd->add_option("--index", sw.indices, "Indices (default: all)")->delimiter(',');
  sweep_cmd->add_option("--budget", sw.budget, "Replica budget B; R(n) = ceil(B/n)")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sw.seed, "Master seed")->required();
  sweep_cmd->add_option("--policy", sw.policy, "Isolated vertices: exclude | logzero")
      ->check(CLI::IsMember({"exclude", "logzero"}))
      ->capture_default_str();
  sweep_cmd->add_option("--workers", sw.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--out", sw.out, "Results CSV (default stdout)");

  CollapseFlags col;
  auto* collapse_cmd = app.add_subcommand("collapse", "Scaling-collapse check over results CSVs");
  collapse_cmd->add_option("files", col.files, "Results CSV files")->required();
  collapse_cmd->add_option("--index", col.index, "Index to compare")->required();
  collapse_cmd->add_option("--tolerance", col.tolerance, "Absolute tolerance on mean_ln/n")
      ->capture_default_str();
  collapse_cmd->add_option("--sem-factor", col.sem_factor, "Tolerance floor in pooled SEMs")
      ->capture_default_str();
  collapse_cmd->add_option("--min-points", col.min_points, "Points required in the overlap")
      ->capture_default_str();
  collapse_cmd->add_option("--out", col.out, "Interpolated curves CSV (default stdout)");

  PredictFlags pr;
  auto* predict_cmd = app.add_subcommand("predict", "Dense-limit prediction of ln X / n");
  predict_cmd->add_option("--model", pr.model, "Random graph model")
      ->check(CLI::IsMember({"er", "rg", "br"}))
      ->capture_default_str();
  predict_cmd->add_option("--index", pr.indices, "Indices (default: the eight studied)")
      ->delimiter(',');
  predict_cmd->add_option("--k", pr.k, "Mean degrees (<d>, or <d1> = <d2> for br)")->delimiter(',');
  predict_cmd->add_option("--d1", pr.d1, "BR set-1 mean degrees")->delimiter(',');
  predict_cmd->add_option("--d2", pr.d2, "BR set-2 mean degrees")->delimiter(',');

  VerifyFlags vf;
  auto* verify_cmd = app.add_subcommand("verify", "Check the sum/product inequalities on a corpus");
  verify_cmd->add_option("--n", vf.sizes, "Corpus graph sizes")->delimiter(',')->capture_default_str();
  verify_cmd->add_option("--graphs", vf.graphs, "Graphs per model and size")->capture_default_str();
  verify_cmd->add_option("--seed", vf.seed, "Master seed")->required();
  verify_cmd->add_option("--function", vf.functions,
                         "Functions: index names, sum:<additive>, vertex:pow:<a>, "
                         "vertex:const:<c>, edge:prod-pow:<a>, edge:sum-pow:<a>, edge:const:<c> "
                         "(default: all built-ins)")
      ->delimiter(',');
  verify_cmd->add_flag("--include-counterexample", vf.include_counterexample,
                       "Add the constructed mixed-sign Petrovic counterexample");
  verify_cmd->add_option("--out", vf.out, "Report CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate_cmd) return cmd_generate(gen);
    if (*index_cmd) return cmd_index(idx);
    if (*sweep_cmd) return cmd_sweep(sw);
    if (*collapse_cmd) return cmd_collapse(col);
    if (*predict_cmd) return cmd_predict(pr);
    if (*verify_cmd) return cmd_verify(vf);
  } catch (const EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace mti::cli
