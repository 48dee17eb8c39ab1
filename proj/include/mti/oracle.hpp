#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mti/graph.hpp"
#include "mti/indices.hpp"

namespace mti {

/// 50 decimal digits (~166-bit significand) with a binary exponent range wide
/// enough to hold products like Pi2 on a 1000-vertex graph.
using ExtendedReal = boost::multiprecision::cpp_bin_float_50;

inline constexpr std::size_t kOracleMaxVertices = 64;

/// Forms X_Pi(G) directly as an extended-precision product (no logarithms
/// until the end) and returns its natural log. Each built-in factor is
/// evaluated from scratch in extended precision; custom functions are lifted
/// from their double values. Requires n <= kOracleMaxVertices.
LogIndexValue exact_ln_oracle(const Graph& g, IndexKind kind,
                              IsolatedPolicy policy = IsolatedPolicy::Exclude);
LogIndexValue exact_ln_oracle(const Graph& g, const DegreeFunction& f,
                              IsolatedPolicy policy = IsolatedPolicy::Exclude);

/// Extended-precision factor of a built-in index. Vertex forms read only `du`.
ExtendedReal exact_factor(IndexKind kind, Degree du, Degree dv = 0);

}  // namespace mti
