#include "mti/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mti/results.hpp"

namespace mti {

std::string inequality_name(InequalityId id) {
  switch (id) {
    case InequalityId::Jensen: return "jensen";
    case InequalityId::JensenConverse: return "jensen_converse";
    case InequalityId::KoberLower: return "kober_lower";
    case InequalityId::KoberUpper: return "kober_upper";
    case InequalityId::PetrovicSum: return "petrovic_sum";
    case InequalityId::ExpLinear: return "exp_linear";
  }
  return "?";
}

FactorSet collect_factors(const Graph& g, const DegreeFunction& f) {
  FactorSet set;
  set.function = function_name(f);
  set.vertex_form = std::holds_alternative<VertexFunction>(f);
  set.n = g.vertex_count();
  set.m = g.edge_count();
  for (double v : factor_values(g, f)) set.values.emplace_back(v);
  return set;
}

namespace {

struct Aggregates {
  std::size_t k = 0;
  ExtendedReal sum = 0;          // S
  ExtendedReal sum_squares = 0;  // S2
  ExtendedReal log_sum = 0;      // L
  ExtendedReal product = 1;      // P = e^L
  ExtendedReal geometric = 0;    // G = P^(1/k)
  ExtendedReal min_log = 0;
  ExtendedReal max_log = 0;
  std::vector<ExtendedReal> logs;
};

Aggregates aggregate(const FactorSet& set) {
  Aggregates agg;
  agg.k = set.values.size();
  agg.logs.reserve(agg.k);
  for (const auto& f : set.values) {
    if (!(f > 0)) throw std::domain_error("factor values must be positive");
    agg.sum += f;
    agg.sum_squares += f * f;
    agg.logs.push_back(log(f));
    agg.log_sum += agg.logs.back();
  }
  agg.product = exp(agg.log_sum);
  if (agg.k > 0) {
    agg.geometric = exp(agg.log_sum / agg.k);
    const auto [lo, hi] = std::minmax_element(agg.logs.begin(), agg.logs.end());
    agg.min_log = *lo;
    agg.max_log = *hi;
  }
  return agg;
}

InequalityCheck make_check(InequalityId id, const FactorSet& set, const Aggregates& agg,
                           ExtendedReal lhs, ExtendedReal rhs) {
  InequalityCheck c;
  c.id = id;
  c.function = set.function;
  c.n = set.n;
  c.m = set.m;
  c.terms = agg.k;
  c.lhs = std::move(lhs);
  c.rhs = std::move(rhs);
  c.slack = c.rhs - c.lhs;
  const ExtendedReal scale = std::max({ExtendedReal(1), abs(c.lhs), abs(c.rhs)});
  c.holds = c.slack >= -kInequalityRelativeTolerance * scale;
  return c;
}

InequalityCheck empty_check(InequalityId id, const FactorSet& set) {
  InequalityCheck c;
  c.id = id;
  c.function = set.function;
  c.n = set.n;
  c.m = set.m;
  c.hypothesis_ok = false;
  c.diagnostic = "no factors";
  return c;
}

InequalityCheck jensen(const FactorSet& set, const Aggregates& agg) {
  if (agg.k == 0) return empty_check(InequalityId::Jensen, set);
  return make_check(InequalityId::Jensen, set, agg, agg.geometric, agg.sum / agg.k);
}

InequalityCheck jensen_converse(const FactorSet& set, const Aggregates& agg,
                                const std::optional<BoundsWindow>& given) {
  if (agg.k == 0) return empty_check(InequalityId::JensenConverse, set);
  const BoundsWindow w = given ? *given : BoundsWindow{agg.min_log, agg.max_log};
  auto c = make_check(InequalityId::JensenConverse, set, agg, agg.sum / agg.k,
                      exp(w.a) + exp(w.b) - exp(w.a + w.b) / agg.geometric);
  if (w.a > w.b) {
    c.hypothesis_ok = false;
    c.diagnostic = "window has a > b";
  } else if (agg.min_log < w.a || agg.max_log > w.b) {
    c.hypothesis_ok = false;
    c.diagnostic = "window [" + format_extended(w.a) + ", " + format_extended(w.b) +
                   "] does not contain ln F range [" + format_extended(agg.min_log) + ", " +
                   format_extended(agg.max_log) + "]";
  }
  return c;
}

std::pair<InequalityCheck, InequalityCheck> kober(const FactorSet& set, const Aggregates& agg) {
  if (agg.k == 0)
    return {empty_check(InequalityId::KoberLower, set), empty_check(InequalityId::KoberUpper, set)};
  const ExtendedReal k = agg.k;
  const ExtendedReal g2 = agg.geometric * agg.geometric;
  const ExtendedReal square = agg.sum * agg.sum;
  return {make_check(InequalityId::KoberLower, set, agg, agg.sum_squares + k * (k - 1) * g2, square),
          make_check(InequalityId::KoberUpper, set, agg, square, (k - 1) * agg.sum_squares + k * g2)};
}

InequalityCheck petrovic_sum(const FactorSet& set, const Aggregates& agg) {
  if (agg.k == 0) return empty_check(InequalityId::PetrovicSum, set);
  auto c = make_check(InequalityId::PetrovicSum, set, agg, agg.sum,
                      agg.product + ExtendedReal(agg.k) - 1);
  if (agg.min_log < 0 && agg.max_log > 0) {
    c.hypothesis_ok = false;
    c.diagnostic = "ln F changes sign (range [" + format_extended(agg.min_log) + ", " +
                   format_extended(agg.max_log) + "])";
  }
  return c;
}

InequalityCheck exp_linear(const FactorSet& set, const Aggregates& agg) {
  return make_check(InequalityId::ExpLinear, set, agg, agg.log_sum + 1, agg.product);
}

}  // namespace

BoundsWindow realized_window(const FactorSet& factors) {
  const auto agg = aggregate(factors);
  if (agg.k == 0) throw std::invalid_argument("empty factor set has no window");
  return {agg.min_log, agg.max_log};
}

InequalityCheck check_jensen(const FactorSet& f) { return jensen(f, aggregate(f)); }
InequalityCheck check_jensen_converse(const FactorSet& f, std::optional<BoundsWindow> window) {
  return jensen_converse(f, aggregate(f), window);
}
std::pair<InequalityCheck, InequalityCheck> check_kober(const FactorSet& f) {
  return kober(f, aggregate(f));
}
InequalityCheck check_petrovic_sum(const FactorSet& f) { return petrovic_sum(f, aggregate(f)); }
InequalityCheck check_exp_linear(const FactorSet& f) { return exp_linear(f, aggregate(f)); }

InequalityCheck check_jensen(const Graph& g, const DegreeFunction& f) {
  return check_jensen(collect_factors(g, f));
}
InequalityCheck check_jensen_converse(const Graph& g, const DegreeFunction& f,
                                      std::optional<BoundsWindow> window) {
  return check_jensen_converse(collect_factors(g, f), std::move(window));
}
std::pair<InequalityCheck, InequalityCheck> check_kober(const Graph& g, const DegreeFunction& f) {
  return check_kober(collect_factors(g, f));
}
InequalityCheck check_petrovic_sum(const Graph& g, const DegreeFunction& f) {
  return check_petrovic_sum(collect_factors(g, f));
}
InequalityCheck check_exp_linear(const Graph& g, const DegreeFunction& f) {
  return check_exp_linear(collect_factors(g, f));
}

std::vector<InequalityCheck> check_all(const FactorSet& factors) {
  const auto agg = aggregate(factors);
  auto [lower, upper] = kober(factors, agg);
  return {jensen(factors, agg),       jensen_converse(factors, agg, std::nullopt),
          std::move(lower),           std::move(upper),
          petrovic_sum(factors, agg), exp_linear(factors, agg)};
}

FactorSet petrovic_counterexample_factors() {
  FactorSet set;
  set.function = "mixed_exp3";
  set.n = 0;
  set.m = 2;
  set.values = {exp(ExtendedReal(-3)), exp(ExtendedReal(3))};
  return set;
}

std::pair<Graph, DegreeFunction> petrovic_counterexample_graph() {
  const std::vector<Edge> path{{0, 1}, {1, 2}, {2, 3}};
  EdgeFunction f{"mixed_exp3",
                 [](Degree a, Degree b) {
                   if (a == 2 && b == 2) return std::exp(3.0);
                   if ((a == 1 && b == 2) || (a == 2 && b == 1)) return std::exp(-3.0);
                   return 1.0;
                 },
                 {}};
  return {Graph::build(4, path), std::move(f)};
}

std::vector<CorpusGraph> default_corpus(const CorpusOptions& options) {
  std::vector<CorpusGraph> corpus;
  constexpr std::size_t kParams = 10;
  const std::size_t per_param = (options.graphs_per_size + kParams - 1) / kParams;
  std::uint64_t point_id = 0;
  for (ModelKind kind : {ModelKind::ER, ModelKind::RG, ModelKind::BR}) {
    for (std::size_t n : options.sizes) {
      std::size_t produced = 0;
      for (std::size_t j = 0; j < kParams && produced < options.graphs_per_size; ++j, ++point_id) {
        const double t = static_cast<double>(j + 1) / kParams;
        ModelSpec spec;
        switch (kind) {
          case ModelKind::ER: spec = ErdosRenyi{n, t}; break;
          case ModelKind::RG: spec = RandomGeometric{n, std::min(t * kMaxRadius, kMaxRadius)}; break;
          case ModelKind::BR: spec = BipartiteRandom{n / 2, n - n / 2, t}; break;
        }
        for (std::size_t r = 0; r < per_param && produced < options.graphs_per_size; ++r, ++produced) {
          const SeedTriple seed{options.master_seed, point_id, r};
          corpus.push_back({spec, seed, generate(spec, seed)});
        }
      }
    }
  }
  return corpus;
}

std::vector<VerificationRecord> verify_corpus(const std::vector<CorpusGraph>& corpus,
                                              const std::vector<DegreeFunction>& functions) {
  std::vector<VerificationRecord> records;
  for (const auto& entry : corpus) {
    for (const auto& f : functions) {
      for (auto& check : check_all(collect_factors(entry.graph, f)))
        records.push_back({model_name(model_kind(entry.spec)), entry.graph.vertex_count(),
                           parameter_value(entry.spec), std::move(check)});
    }
  }
  return records;
}

std::string format_extended(const ExtendedReal& x) {
  if (x == 0) return "0";
  return x.str(17, std::ios_base::fmtflags(0));
}

void write_verification_csv(std::ostream& out, const std::vector<VerificationRecord>& records) {
  out << "inequality,model,n,param,function,lhs,rhs,slack,holds,hypothesis_ok\n";
  for (const auto& r : records) {
    out << inequality_name(r.check.id) << ',' << r.model << ',' << r.n << ','
        << format_real(r.param) << ',' << r.check.function << ',' << format_extended(r.check.lhs)
        << ',' << format_extended(r.check.rhs) << ',' << format_extended(r.check.slack) << ','
        << (r.check.holds ? "true" : "false") << ',' << (r.check.hypothesis_ok ? "true" : "false")
        << '\n';
  }
}

bool verification_passed(const std::vector<VerificationRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const VerificationRecord& r) {
    return !r.check.hypothesis_ok || r.check.holds;
  });
}

}  // namespace mti
