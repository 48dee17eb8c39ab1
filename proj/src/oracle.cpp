#include "mti/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace mti {

ExtendedReal exact_factor(IndexKind kind, Degree du, Degree dv) {
  const ExtendedReal a(du), b(dv);
  switch (kind) {
    case IndexKind::NK: return a;
    case IndexKind::Pi1: return a * a;
    case IndexKind::Pi2: return a * b;
    case IndexKind::Pi1Star: return a + b;
    case IndexKind::RPi: return 1 / sqrt(a * b);
    case IndexKind::HPi: return 2 / (a + b);
    case IndexKind::ChiPi: return 1 / sqrt(a + b);
    case IndexKind::IDPi: return 1 / (a * a) + 1 / (b * b);
    case IndexKind::GAPi: return 2 * sqrt(a * b) / (a + b);
  }
  throw std::invalid_argument("unknown index kind");
}

namespace {

void require_small(const Graph& g) {
  if (g.vertex_count() > kOracleMaxVertices)
    throw std::invalid_argument("exact oracle is limited to graphs with at most 64 vertices");
}

template <class VertexFactor, class EdgeFactor>
LogIndexValue oracle_product(const Graph& g, bool vertex_based, IsolatedPolicy policy,
                             VertexFactor&& vertex_factor, EdgeFactor&& edge_factor) {
  require_small(g);
  ExtendedReal product = 1;
  if (vertex_based) {
    for (Degree du : g.degrees()) {
      if (du == 0) {
        if (policy == IsolatedPolicy::LogZero) return LogIndexValue::log_zero();
        continue;
      }
      product *= vertex_factor(du);
    }
  } else {
    const auto degrees = g.degrees();
    for (const auto& e : g.edges()) product *= edge_factor(degrees[e.u], degrees[e.v]);
  }
  if (product <= 0) return LogIndexValue::log_zero();
  return LogIndexValue::finite(static_cast<double>(log(product)));
}

}  // namespace

LogIndexValue exact_ln_oracle(const Graph& g, IndexKind kind, IsolatedPolicy policy) {
  return oracle_product(
      g, is_vertex_based(kind), policy, [kind](Degree du) { return exact_factor(kind, du); },
      [kind](Degree du, Degree dv) { return exact_factor(kind, du, dv); });
}

LogIndexValue exact_ln_oracle(const Graph& g, const DegreeFunction& f, IsolatedPolicy policy) {
  const auto lift = [&](double v, Degree du, std::optional<Degree> dv) {
    if (!std::isfinite(v) || v <= 0.0) throw EvaluationError(function_name(f), du, dv, v);
    return ExtendedReal(v);
  };
  if (const auto* vf = std::get_if<VertexFunction>(&f)) {
    return oracle_product(
        g, true, policy, [&](Degree du) { return lift(vf->value(du), du, std::nullopt); },
        [](Degree, Degree) { return ExtendedReal(1); });
  }
  const auto& ef = std::get<EdgeFunction>(f);
  return oracle_product(
      g, false, policy, [](Degree) { return ExtendedReal(1); },
      [&](Degree du, Degree dv) { return lift(ef.value(du, dv), du, dv); });
}

}  // namespace mti
