#include "mti/indices.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mti {

namespace {

double d(Degree x) { return static_cast<double>(x); }

class Accumulator {
 public:
  explicit Accumulator(Summation mode) : mode_(mode) {}

  void add(double x) {
    if (mode_ == Summation::Plain) {
      sum_ += x;
      return;
    }
    // Neumaier
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }

  double total() const { return sum_ + carry_; }

 private:
  Summation mode_;
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double checked(const std::string& name, double value, Degree du, std::optional<Degree> dv) {
  if (!std::isfinite(value) || value <= 0.0) throw EvaluationError(name, du, dv, value);
  return value;
}

double log_factor(const VertexFunction& f, Degree du) {
  if (f.log_value) return f.log_value(du);
  return std::log(checked(f.name, f.value(du), du, std::nullopt));
}

double log_factor(const EdgeFunction& f, Degree du, Degree dv) {
  if (f.log_value) return f.log_value(du, dv);
  return std::log(checked(f.name, f.value(du, dv), du, dv));
}

}  // namespace

const std::vector<IndexKind>& all_index_kinds() {
  static const std::vector<IndexKind> kinds{IndexKind::NK,    IndexKind::Pi1,  IndexKind::Pi2,
                                            IndexKind::Pi1Star, IndexKind::RPi, IndexKind::HPi,
                                            IndexKind::ChiPi, IndexKind::IDPi, IndexKind::GAPi};
  return kinds;
}

const std::vector<IndexKind>& studied_index_kinds() {
  static const std::vector<IndexKind> kinds{IndexKind::NK,      IndexKind::Pi1, IndexKind::Pi2,
                                            IndexKind::Pi1Star, IndexKind::RPi, IndexKind::HPi,
                                            IndexKind::ChiPi,   IndexKind::IDPi};
  return kinds;
}

const std::vector<AdditiveKind>& all_additive_kinds() {
  static const std::vector<AdditiveKind> kinds{AdditiveKind::M1, AdditiveKind::M2,
                                               AdditiveKind::R,  AdditiveKind::H,
                                               AdditiveKind::Chi, AdditiveKind::ID};
  return kinds;
}

bool is_vertex_based(IndexKind kind) { return kind == IndexKind::NK || kind == IndexKind::Pi1; }

std::string index_name(IndexKind kind) {
  switch (kind) {
    case IndexKind::NK: return "nk";
    case IndexKind::Pi1: return "pi1";
    case IndexKind::Pi2: return "pi2";
    case IndexKind::Pi1Star: return "pi1s";
    case IndexKind::RPi: return "rpi";
    case IndexKind::HPi: return "hpi";
    case IndexKind::ChiPi: return "chipi";
    case IndexKind::IDPi: return "idpi";
    case IndexKind::GAPi: return "gapi";
  }
  return "?";
}

IndexKind parse_index_kind(const std::string& name) {
  for (auto kind : all_index_kinds())
    if (index_name(kind) == name) return kind;
  throw std::invalid_argument("unknown index '" + name + "'");
}

std::string additive_name(AdditiveKind kind) {
  switch (kind) {
    case AdditiveKind::M1: return "m1";
    case AdditiveKind::M2: return "m2";
    case AdditiveKind::R: return "r";
    case AdditiveKind::H: return "h";
    case AdditiveKind::Chi: return "chi";
    case AdditiveKind::ID: return "id";
  }
  return "?";
}

AdditiveKind parse_additive_kind(const std::string& name) {
  for (auto kind : all_additive_kinds())
    if (additive_name(kind) == name) return kind;
  throw std::invalid_argument("unknown additive index '" + name + "'");
}

std::string policy_name(IsolatedPolicy policy) {
  return policy == IsolatedPolicy::Exclude ? "exclude" : "logzero";
}

IsolatedPolicy parse_policy(const std::string& name) {
  if (name == "exclude") return IsolatedPolicy::Exclude;
  if (name == "logzero") return IsolatedPolicy::LogZero;
  throw std::invalid_argument("unknown isolated-vertex policy '" + name + "'");
}

DegreeFunction factor_function(IndexKind kind) {
  switch (kind) {
    case IndexKind::NK:
      return VertexFunction{"nk", [](Degree a) { return d(a); },
                            [](Degree a) { return std::log(d(a)); }};
    case IndexKind::Pi1:
      return VertexFunction{"pi1", [](Degree a) { return d(a) * d(a); },
                            [](Degree a) { return 2.0 * std::log(d(a)); }};
    case IndexKind::Pi2:
      return EdgeFunction{"pi2", [](Degree a, Degree b) { return d(a) * d(b); },
                          [](Degree a, Degree b) { return std::log(d(a) * d(b)); }};
    case IndexKind::Pi1Star:
      return EdgeFunction{"pi1s", [](Degree a, Degree b) { return d(a) + d(b); },
                          [](Degree a, Degree b) { return std::log(d(a) + d(b)); }};
    case IndexKind::RPi:
      return EdgeFunction{"rpi", [](Degree a, Degree b) { return 1.0 / std::sqrt(d(a) * d(b)); },
                          [](Degree a, Degree b) { return -0.5 * std::log(d(a) * d(b)); }};
    case IndexKind::HPi:
      return EdgeFunction{"hpi", [](Degree a, Degree b) { return 2.0 / (d(a) + d(b)); },
                          [](Degree a, Degree b) { return std::log(2.0 / (d(a) + d(b))); }};
    case IndexKind::ChiPi:
      return EdgeFunction{"chipi", [](Degree a, Degree b) { return 1.0 / std::sqrt(d(a) + d(b)); },
                          [](Degree a, Degree b) { return -0.5 * std::log(d(a) + d(b)); }};
    case IndexKind::IDPi:
      return EdgeFunction{"idpi",
                          [](Degree a, Degree b) { return 1.0 / (d(a) * d(a)) + 1.0 / (d(b) * d(b)); },
                          [](Degree a, Degree b) {
                            const double a2 = d(a) * d(a), b2 = d(b) * d(b);
                            return std::log(a2 + b2) - std::log(a2 * b2);
                          }};
    case IndexKind::GAPi:
      return EdgeFunction{"gapi",
                          [](Degree a, Degree b) { return 2.0 * std::sqrt(d(a) * d(b)) / (d(a) + d(b)); },
                          [](Degree a, Degree b) {
                            return std::log(2.0) + 0.5 * std::log(d(a) * d(b)) - std::log(d(a) + d(b));
                          }};
  }
  throw std::invalid_argument("unknown index kind");
}

DegreeFunction term_function(AdditiveKind kind) {
  switch (kind) {
    case AdditiveKind::M1:
      return VertexFunction{"m1", [](Degree a) { return d(a) * d(a); }, {}};
    case AdditiveKind::M2:
      return EdgeFunction{"m2", [](Degree a, Degree b) { return d(a) * d(b); }, {}};
    case AdditiveKind::R:
      return EdgeFunction{"r", [](Degree a, Degree b) { return 1.0 / std::sqrt(d(a) * d(b)); }, {}};
    case AdditiveKind::H:
      return EdgeFunction{"h", [](Degree a, Degree b) { return 2.0 / (d(a) + d(b)); }, {}};
    case AdditiveKind::Chi:
      return EdgeFunction{"chi", [](Degree a, Degree b) { return 1.0 / std::sqrt(d(a) + d(b)); }, {}};
    case AdditiveKind::ID:
      return VertexFunction{"id", [](Degree a) { return 1.0 / d(a); }, {}};
  }
  throw std::invalid_argument("unknown additive kind");
}

const std::string& function_name(const DegreeFunction& f) {
  return std::visit([](const auto& fn) -> const std::string& { return fn.name; }, f);
}

DegreeFunction parse_function_spec(const std::string& spec) {
  for (auto kind : all_index_kinds())
    if (spec == index_name(kind)) return factor_function(kind);
  if (spec.rfind("sum:", 0) == 0) {
    auto f = term_function(parse_additive_kind(spec.substr(4)));
    std::visit([&](auto& fn) { fn.name = spec; }, f);
    return f;
  }

  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
  if (second == std::string::npos)
    throw std::invalid_argument("unrecognized function spec '" + spec + "'");
  const std::string form = spec.substr(0, first);
  const std::string rule = spec.substr(first + 1, second - first - 1);
  double param = 0.0;
  try {
    std::size_t used = 0;
    param = std::stod(spec.substr(second + 1), &used);
    if (used != spec.size() - second - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad numeric parameter in function spec '" + spec + "'");
  }

  if (form == "vertex" && rule == "pow")
    return VertexFunction{spec, [param](Degree a) { return std::pow(d(a), param); }, {}};
  if (form == "vertex" && rule == "const")
    return VertexFunction{spec, [param](Degree) { return param; }, {}};
  if (form == "edge" && rule == "prod-pow")
    return EdgeFunction{spec, [param](Degree a, Degree b) { return std::pow(d(a) * d(b), param); }, {}};
  if (form == "edge" && rule == "sum-pow")
    return EdgeFunction{spec, [param](Degree a, Degree b) { return std::pow(d(a) + d(b), param); }, {}};
  if (form == "edge" && rule == "const")
    return EdgeFunction{spec, [param](Degree, Degree) { return param; }, {}};
  throw std::invalid_argument("unrecognized function spec '" + spec + "'");
}

double LogIndexValue::value() const {
  if (!value_) throw std::logic_error("log-zero index value has no finite logarithm");
  return *value_;
}

namespace {

std::string describe_failure(const std::string& function, Degree du, std::optional<Degree> dv,
                             double value) {
  std::ostringstream os;
  os << "function '" << function << "' returned " << value << " at degree ";
  if (dv)
    os << "pair (" << du << ", " << *dv << ")";
  else
    os << du;
  os << "; values must be finite and positive";
  return os.str();
}

}  // namespace

EvaluationError::EvaluationError(const std::string& function, Degree du, std::optional<Degree> dv,
                                 double value)
    : std::domain_error(describe_failure(function, du, dv, value)),
      function_(function),
      du_(du),
      dv_(dv) {}

IndexEvaluation ln_multiplicative_index(const Graph& g, const DegreeFunction& f,
                                        IsolatedPolicy policy, Summation summation) {
  IndexEvaluation result;
  Accumulator acc(summation);
  if (const auto* vf = std::get_if<VertexFunction>(&f)) {
    for (Degree du : g.degrees()) {
      if (du == 0) {
        if (policy == IsolatedPolicy::LogZero) {
          result.ln = LogIndexValue::log_zero();
          return result;
        }
        ++result.excluded_vertices;
        continue;
      }
      acc.add(log_factor(*vf, du));
    }
  } else {
    const auto& ef = std::get<EdgeFunction>(f);
    const auto degrees = g.degrees();
    for (const auto& e : g.edges()) acc.add(log_factor(ef, degrees[e.u], degrees[e.v]));
  }
  result.ln = LogIndexValue::finite(acc.total());
  return result;
}

IndexEvaluation ln_multiplicative_index(const Graph& g, IndexKind kind, IsolatedPolicy policy,
                                        Summation summation) {
  return ln_multiplicative_index(g, factor_function(kind), policy, summation);
}

double additive_index(const Graph& g, const DegreeFunction& f, IsolatedPolicy policy) {
  double sum = 0.0;
  if (const auto* vf = std::get_if<VertexFunction>(&f)) {
    for (Degree du : g.degrees()) {
      if (du == 0) {
        if (policy == IsolatedPolicy::Exclude) continue;
        const double v = vf->value(0);
        if (!std::isfinite(v) || v < 0.0) throw EvaluationError(vf->name, 0, std::nullopt, v);
        sum += v;
        continue;
      }
      sum += checked(vf->name, vf->value(du), du, std::nullopt);
    }
  } else {
    const auto& ef = std::get<EdgeFunction>(f);
    const auto degrees = g.degrees();
    for (const auto& e : g.edges())
      sum += checked(ef.name, ef.value(degrees[e.u], degrees[e.v]), degrees[e.u], degrees[e.v]);
  }
  return sum;
}

double additive_index(const Graph& g, AdditiveKind kind, IsolatedPolicy policy) {
  return additive_index(g, term_function(kind), policy);
}

std::vector<double> factor_values(const Graph& g, const DegreeFunction& f) {
  std::vector<double> out;
  if (const auto* vf = std::get_if<VertexFunction>(&f)) {
    for (Degree du : g.degrees())
      if (du > 0) out.push_back(checked(vf->name, vf->value(du), du, std::nullopt));
  } else {
    const auto& ef = std::get<EdgeFunction>(f);
    const auto degrees = g.degrees();
    out.reserve(g.edge_count());
    for (const auto& e : g.edges())
      out.push_back(
          checked(ef.name, ef.value(degrees[e.u], degrees[e.v]), degrees[e.u], degrees[e.v]));
  }
  return out;
}

}  // namespace mti
