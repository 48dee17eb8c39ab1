#include "mti/dense_limit.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mti {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// ln X / n for ER and RG in terms of <d>.
double homogeneous(IndexKind index, double d) {
  const double ln_d = std::log(d);
  switch (index) {
    case IndexKind::NK: return ln_d;
    case IndexKind::Pi1: return 2.0 * ln_d;
    case IndexKind::Pi2: return d * ln_d;
    case IndexKind::Pi1Star: return 0.5 * d * std::log(2.0 * d);
    case IndexKind::RPi: return -0.5 * d * ln_d;
    case IndexKind::HPi: return -0.5 * d * ln_d;
    case IndexKind::ChiPi: return -kLn2 / 4.0 * d - 0.25 * d * ln_d;
    case IndexKind::IDPi: return kLn2 / 2.0 * d - d * ln_d;
    case IndexKind::GAPi: break;
  }
  throw UnsupportedPrediction("no dense-limit formula for " + index_name(index));
}

// Per-edge log factor L(d1, d2) of the BR formulas; ln X / n1 = d1 * L.
double bipartite_edge_log(IndexKind index, double d1, double d2) {
  switch (index) {
    case IndexKind::Pi2: return std::log(d1 * d2);
    case IndexKind::Pi1Star: return std::log(d1 + d2);
    case IndexKind::RPi: return -0.5 * std::log(d1 * d2);
    case IndexKind::HPi: return kLn2 - std::log(d1 + d2);
    case IndexKind::ChiPi: return -0.5 * std::log(d1 + d2);
    case IndexKind::IDPi: return std::log(1.0 / (d1 * d1) + 1.0 / (d2 * d2));
    default: break;
  }
  throw UnsupportedPrediction("no bipartite dense-limit formula for " + index_name(index));
}

void require_positive(MeanDegrees degrees) {
  if (!(degrees.set1 > 0.0) || !(degrees.set2 > 0.0))
    throw std::invalid_argument("dense-limit predictions need positive mean degrees");
}

}  // namespace

double predict(ModelKind model, IndexKind index, MeanDegrees degrees) {
  require_positive(degrees);
  if (model != ModelKind::BR) {
    if (degrees.set1 != degrees.set2)
      throw std::invalid_argument("ER and RG take a single mean degree");
    return homogeneous(index, degrees.set1);
  }
  if (is_vertex_based(index)) {
    if (degrees.set1 != degrees.set2)
      throw UnsupportedPrediction("no bipartite " + index_name(index) +
                                  " formula for unequal set sizes");
    // ln X ~ n * f(<d>) with n = 2 n1.
    return 2.0 * homogeneous(index, degrees.set1);
  }
  return degrees.set1 * bipartite_edge_log(index, degrees.set1, degrees.set2);
}

double bipartite_per_total(double per_set1, MeanDegrees degrees) {
  return per_set1 * degrees.set2 / (degrees.set1 + degrees.set2);
}

double predict_per_vertex(ModelKind model, IndexKind index, MeanDegrees degrees) {
  const double value = predict(model, index, degrees);
  return model == ModelKind::BR ? bipartite_per_total(value, degrees) : value;
}

MeanDegrees bipartite_degrees_for(double k, std::size_t n1, std::size_t n2) {
  const double a = static_cast<double>(n1), b = static_cast<double>(n2);
  return {k * (a + b) / (2.0 * a), k * (a + b) / (2.0 * b)};
}

bool has_prediction(ModelKind model, IndexKind index, MeanDegrees degrees) {
  if (index == IndexKind::GAPi) return false;
  if (model == ModelKind::BR && is_vertex_based(index)) return degrees.set1 == degrees.set2;
  return true;
}

}  // namespace mti
