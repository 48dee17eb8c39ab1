#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mti/results.hpp"

namespace mti {

struct CurvePoint {
  double k = 0.0;      // mean_k_theory
  double value = 0.0;  // mean_ln / n
  double sem = 0.0;    // sem / n
};

/// mean_ln/n against <k> for one (model, size) series.
struct Curve {
  std::string label;
  ModelKind model = ModelKind::ER;
  std::size_t n = 0;
  std::size_t n1 = 0;  // BR only
  std::size_t n2 = 0;
  std::vector<CurvePoint> points;  // ascending k
};

class CollapseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Split the rows of one results table that carry `index` into curves, one per
/// (model, n, n1, n2, policy), in order of first appearance. Rows whose mean
/// is NaN (all replicas log-zero) are dropped. Throws CollapseError("index not
/// present") when no row matches.
std::vector<Curve> curves_from_rows(std::span<const ResultRow> rows, IndexKind index,
                                    const std::string& label_prefix = "");

struct CollapseOptions {
  double tolerance = 0.05;   // absolute floor on |delta| of mean_ln/n
  double sem_factor = 5.0;   // ... raised to sem_factor * pooled sem where larger
  std::size_t min_points = 5;
};

struct CollapseReport {
  IndexKind index = IndexKind::NK;
  std::vector<std::string> labels;
  std::vector<double> grid;                       // shared <k> grid
  std::vector<std::vector<double>> interpolated;  // [curve][grid point]
  std::vector<std::vector<double>> interpolated_sem;

  double max_deviation = 0.0;  // max pairwise |delta| over the grid
  double max_deviation_k = 0.0;
  std::size_t max_pair_first = 0;
  std::size_t max_pair_second = 0;
  double pooled_sem_at_max = 0.0;
  /// max over grid points and pairs of |delta| - max(tolerance, sem_factor * pooled sem)
  double worst_excess = 0.0;
  bool within_tolerance = true;

  /// Over grid points with <k> >= kDenseLimitMeanDegree: max |curve - prediction|.
  std::optional<double> dense_deviation;
  std::optional<double> dense_relative_deviation;
  double dense_deviation_k = 0.0;
};

/// Interpolate every curve piecewise-linearly onto the union of their <k>
/// values inside the common range and compare them pairwise.
CollapseReport collapse_check(std::span<const Curve> curves, IndexKind index,
                              const CollapseOptions& options = {});

/// Linear interpolation on ascending abscissae; x must be within range.
double interpolate(std::span<const double> xs, std::span<const double> ys, double x);

/// Plot-ready table: k, one column per curve, then the pairwise max |delta|
/// and dense-limit prediction at that k (empty when unavailable).
void write_collapse_csv(std::ostream& out, const CollapseReport& report,
                        std::span<const Curve> curves);
void write_collapse_summary(std::ostream& out, const CollapseReport& report,
                            const CollapseOptions& options);

}  // namespace mti
