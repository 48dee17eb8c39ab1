#pragma once

#include <stdexcept>

#include "mti/indices.hpp"
#include "mti/models.hpp"

namespace mti {

/// Mean degree from which the closed forms below describe ensemble data
/// (the dense regime). Predictions are defined for any positive mean degree
/// but are only meaningful at or above this value.
inline constexpr double kDenseLimitMeanDegree = 10.0;

/// Expected degrees of the two vertex classes. ER and RG use d1 == d2 == <d>.
struct MeanDegrees {
  double set1 = 0.0;
  double set2 = 0.0;

  MeanDegrees() = default;
  MeanDegrees(double both) : set1(both), set2(both) {}  // NOLINT(implicit)
  MeanDegrees(double d1, double d2) : set1(d1), set2(d2) {}
};

class UnsupportedPrediction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense-limit value of ln X_Pi / n.
///
/// ER and RG share one formula set in <d>. For BR the value is normalized by
/// the size of set 1, i.e. ln X_Pi / n1 ~ <d1> * L(<d1>, <d2>); swap the
/// arguments for the set-2 normalization. BR covers the six edge-based
/// studied indices; NK and Pi1 are available only for <d1> == <d2>, where the
/// ER expressions carry over. GAPi has no closed form.
///
/// Throws UnsupportedPrediction for unsupported pairs and
/// std::invalid_argument for a nonpositive mean degree.
double predict(ModelKind model, IndexKind index, MeanDegrees degrees);

/// Same prediction normalized by the total vertex count n (n1 + n2 for BR),
/// which is what ensemble tables report as mean_ln_over_n.
double predict_per_vertex(ModelKind model, IndexKind index, MeanDegrees degrees);

/// Rescale a BR set-1-normalized value to per-total-n normalization. Uses
/// n1 / (n1 + n2) = <d2> / (<d1> + <d2>); for n1 == n2 this halves the value.
double bipartite_per_total(double per_set1, MeanDegrees degrees);

/// Per-class expected degrees of a BR model whose network mean degree is k.
MeanDegrees bipartite_degrees_for(double k, std::size_t n1, std::size_t n2);

bool has_prediction(ModelKind model, IndexKind index, MeanDegrees degrees);

}  // namespace mti
