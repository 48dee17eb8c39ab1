#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mti/graph.hpp"

namespace mti {

/// Built-in multiplicative indices. NK and Pi1 are vertex products, the rest
/// are edge products.
enum class IndexKind { NK, Pi1, Pi2, Pi1Star, RPi, HPi, ChiPi, IDPi, GAPi };

/// Additive (sum-form) counterparts: M1 and ID in vertex form, the rest over
/// edges.
enum class AdditiveKind { M1, M2, R, H, Chi, ID };

/// What to do with degree-0 vertices in vertex-based indices.
enum class IsolatedPolicy { Exclude, LogZero };

enum class Summation { Plain, Compensated };

/// F_V: degree -> positive real. `log_value`, when set, must equal
/// log(value(d)) and is preferred by the log-space engine.
struct VertexFunction {
  std::string name;
  std::function<double(Degree)> value;
  std::function<double(Degree)> log_value;
};

/// F_E: symmetric (d_u, d_v) -> positive real.
struct EdgeFunction {
  std::string name;
  std::function<double(Degree, Degree)> value;
  std::function<double(Degree, Degree)> log_value;
};

using DegreeFunction = std::variant<VertexFunction, EdgeFunction>;

const std::vector<IndexKind>& all_index_kinds();
/// The eight indices with closed-form dense-limit predictions (all but GAPi).
const std::vector<IndexKind>& studied_index_kinds();
const std::vector<AdditiveKind>& all_additive_kinds();

bool is_vertex_based(IndexKind kind);
std::string index_name(IndexKind kind);  // nk, pi1, pi2, pi1s, rpi, hpi, chipi, idpi, gapi
IndexKind parse_index_kind(const std::string& name);
std::string additive_name(AdditiveKind kind);  // m1, m2, r, h, chi, id
AdditiveKind parse_additive_kind(const std::string& name);
std::string policy_name(IsolatedPolicy policy);  // exclude | logzero
IsolatedPolicy parse_policy(const std::string& name);

DegreeFunction factor_function(IndexKind kind);
DegreeFunction term_function(AdditiveKind kind);
const std::string& function_name(const DegreeFunction& f);

/// Function from a short text spec: a built-in index name (nk, pi2, ...), an
/// additive name prefixed with "sum:" (sum:m1, ...), or one of
///   vertex:pow:<a>      F_V(d) = d^a
///   vertex:const:<c>    F_V(d) = c
///   edge:prod-pow:<a>   F_E = (d_u d_v)^a
///   edge:sum-pow:<a>    F_E = (d_u + d_v)^a
///   edge:const:<c>      F_E = c
/// The input string becomes the function name.
DegreeFunction parse_function_spec(const std::string& spec);

/// ln of a multiplicative index: a finite real, or the explicit log-zero
/// sentinel for a product containing a zero factor.
class LogIndexValue {
 public:
  static LogIndexValue finite(double x) { return LogIndexValue(x); }
  static LogIndexValue log_zero() { return LogIndexValue(); }

  bool is_log_zero() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  /// Throws std::logic_error on the log-zero sentinel.
  double value() const;

  friend bool operator==(const LogIndexValue&, const LogIndexValue&) = default;

 private:
  LogIndexValue() = default;
  explicit LogIndexValue(double x) : value_(x) {}

  std::optional<double> value_;
};

struct IndexEvaluation {
  LogIndexValue ln = LogIndexValue::finite(0.0);
  std::size_t excluded_vertices = 0;  // isolated vertices skipped under Exclude
};

/// A custom function produced a nonpositive or non-finite value.
class EvaluationError : public std::domain_error {
 public:
  EvaluationError(const std::string& function, Degree du, std::optional<Degree> dv, double value);

  const std::string& function() const noexcept { return function_; }
  Degree du() const noexcept { return du_; }
  std::optional<Degree> dv() const noexcept { return dv_; }

 private:
  std::string function_;
  Degree du_;
  std::optional<Degree> dv_;
};

/// ln X_Pi(G) as a sum of ln F over factors, in canonical vertex/edge order.
/// The product itself is never formed.
IndexEvaluation ln_multiplicative_index(const Graph& g, IndexKind kind,
                                        IsolatedPolicy policy = IsolatedPolicy::Exclude,
                                        Summation summation = Summation::Plain);
IndexEvaluation ln_multiplicative_index(const Graph& g, const DegreeFunction& f,
                                        IsolatedPolicy policy = IsolatedPolicy::Exclude,
                                        Summation summation = Summation::Plain);

/// X_Sigma(G). For vertex forms, Exclude skips isolated vertices; LogZero
/// evaluates F(0), which must be finite and nonnegative (so ID with an
/// isolated vertex is an EvaluationError under LogZero).
double additive_index(const Graph& g, AdditiveKind kind,
                      IsolatedPolicy policy = IsolatedPolicy::Exclude);
double additive_index(const Graph& g, const DegreeFunction& f,
                      IsolatedPolicy policy = IsolatedPolicy::Exclude);

/// Per-factor values F (not logged) in canonical order, isolated vertices
/// skipped. Validates like the engine.
std::vector<double> factor_values(const Graph& g, const DegreeFunction& f);

}  // namespace mti
