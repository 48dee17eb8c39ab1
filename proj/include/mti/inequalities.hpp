#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mti/graph.hpp"
#include "mti/indices.hpp"
#include "mti/models.hpp"
#include "mti/oracle.hpp"

namespace mti {

// Sum-versus-product inequalities for degree-based indices. Each check works
// on the multiset of factors {F} of one graph (vertex form: non-isolated
// vertices, k = effective n; edge form: edges, k = m) with
//   S = sum F, S2 = sum F^2, L = sum ln F, P = e^L, G = P^(1/k).
// Everything is evaluated in ExtendedReal so P never overflows.

enum class InequalityId { Jensen, JensenConverse, KoberLower, KoberUpper, PetrovicSum, ExpLinear };

std::string inequality_name(InequalityId id);

/// Log-domain envelope: a <= ln F <= b for every factor.
struct BoundsWindow {
  ExtendedReal a;
  ExtendedReal b;
};

struct FactorSet {
  std::string function;
  bool vertex_form = false;
  std::size_t n = 0;  // graph vertex count
  std::size_t m = 0;  // graph edge count
  std::vector<ExtendedReal> values;
};

/// Factors of f on g, lifted exactly from double. Isolated vertices are
/// excluded. Throws EvaluationError on a nonpositive or non-finite value.
FactorSet collect_factors(const Graph& g, const DegreeFunction& f);

struct InequalityCheck {
  InequalityId id = InequalityId::Jensen;
  std::string function;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t terms = 0;
  ExtendedReal lhs = 0;
  ExtendedReal rhs = 0;
  ExtendedReal slack = 0;  // rhs - lhs
  bool holds = true;       // slack >= -1e-9 * max(1, |lhs|, |rhs|)
  bool hypothesis_ok = true;
  std::string diagnostic;
};

inline constexpr double kInequalityRelativeTolerance = 1e-9;

/// Realized window [min ln F, max ln F].
BoundsWindow realized_window(const FactorSet& factors);

/// G <= S / k.
InequalityCheck check_jensen(const FactorSet& factors);
/// S / k <= e^a + e^b - e^(a+b) / G, with the window bounding ln F. Without a
/// window the realized one is used. A window that does not contain every
/// ln F gives hypothesis_ok = false.
InequalityCheck check_jensen_converse(const FactorSet& factors,
                                      std::optional<BoundsWindow> window = std::nullopt);
/// S2 + k(k-1) G^2 <= S^2 <= (k-1) S2 + k G^2.
std::pair<InequalityCheck, InequalityCheck> check_kober(const FactorSet& factors);
/// S <= P + k - 1. Asserted only when the factors are sign-coherent in the
/// log domain (all F >= 1 or all F <= 1); otherwise hypothesis_ok = false.
InequalityCheck check_petrovic_sum(const FactorSet& factors);
/// P >= L + 1, unconditional.
InequalityCheck check_exp_linear(const FactorSet& factors);

InequalityCheck check_jensen(const Graph& g, const DegreeFunction& f);
InequalityCheck check_jensen_converse(const Graph& g, const DegreeFunction& f,
                                      std::optional<BoundsWindow> window = std::nullopt);
std::pair<InequalityCheck, InequalityCheck> check_kober(const Graph& g, const DegreeFunction& f);
InequalityCheck check_petrovic_sum(const Graph& g, const DegreeFunction& f);
InequalityCheck check_exp_linear(const Graph& g, const DegreeFunction& f);

/// All six checks (Kober counts as two) in a fixed order.
std::vector<InequalityCheck> check_all(const FactorSet& factors);

/// Two factors e^-3 and e^3: S ~ 20.14 exceeds P + k - 1 = 2.
FactorSet petrovic_counterexample_factors();
/// The same mixed-sign failure realized on the path P4 with an edge function
/// that is e^-3 on (1,2) edges and e^3 on the (2,2) edge.
std::pair<Graph, DegreeFunction> petrovic_counterexample_graph();

struct CorpusGraph {
  ModelSpec spec;
  SeedTriple seed;
  Graph graph;
};

struct CorpusOptions {
  std::vector<std::size_t> sizes{8, 16, 32};
  std::size_t graphs_per_size = 100;
  std::uint64_t master_seed = 0;
};

/// For each model and size: graphs_per_size graphs spread over ten parameter
/// values (p = 0.1..1.0, r = 0.1..1.0 * sqrt 2, BR with n1 = n2 = n/2).
std::vector<CorpusGraph> default_corpus(const CorpusOptions& options);

struct VerificationRecord {
  std::string model;  // er | rg | br | regular | constructed
  std::size_t n = 0;
  double param = 0.0;
  InequalityCheck check;
};

/// Every check for every (graph, function) pair, in corpus order.
std::vector<VerificationRecord> verify_corpus(const std::vector<CorpusGraph>& corpus,
                                              const std::vector<DegreeFunction>& functions);

/// Header: inequality,model,n,param,function,lhs,rhs,slack,holds,hypothesis_ok
void write_verification_csv(std::ostream& out, const std::vector<VerificationRecord>& records);

/// True iff every record with hypothesis_ok holds.
bool verification_passed(const std::vector<VerificationRecord>& records);

std::string format_extended(const ExtendedReal& x);

}  // namespace mti
