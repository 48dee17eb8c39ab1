#include "mti/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <tuple>

#include "mti/dense_limit.hpp"

namespace mti {

namespace {

std::string curve_label(const ResultRow& r) {
  std::string label = model_name(r.model) + " n=" + std::to_string(r.n);
  if (r.n1 && r.n2) label += " (" + std::to_string(*r.n1) + "+" + std::to_string(*r.n2) + ")";
  if (r.policy != IsolatedPolicy::Exclude) label += " " + policy_name(r.policy);
  return label;
}

std::optional<double> prediction_at(const Curve& c, IndexKind index, double k) {
  if (!(k > 0.0)) return std::nullopt;
  const MeanDegrees degrees =
      c.model == ModelKind::BR ? bipartite_degrees_for(k, c.n1, c.n2) : MeanDegrees(k);
  if (!has_prediction(c.model, index, degrees)) return std::nullopt;
  return predict_per_vertex(c.model, index, degrees);
}

}  // namespace

std::vector<Curve> curves_from_rows(std::span<const ResultRow> rows, IndexKind index,
                                    const std::string& label_prefix) {
  using Key = std::tuple<ModelKind, std::size_t, std::size_t, std::size_t, IsolatedPolicy>;
  std::vector<Key> keys;
  std::vector<Curve> curves;
  bool present = false;
  for (const auto& r : rows) {
    if (r.index != index) continue;
    present = true;
    if (std::isnan(r.mean_ln_over_n)) continue;
    const Key key{r.model, r.n, r.n1.value_or(0), r.n2.value_or(0), r.policy};
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      Curve c;
      c.label = label_prefix + curve_label(r);
      c.model = r.model;
      c.n = r.n;
      c.n1 = r.n1.value_or(0);
      c.n2 = r.n2.value_or(0);
      curves.push_back(std::move(c));
      it = keys.end() - 1;
    }
    auto& curve = curves[static_cast<std::size_t>(it - keys.begin())];
    const double n = static_cast<double>(r.n);
    curve.points.push_back({r.mean_k_theory, r.mean_ln_over_n, r.sem / n});
  }
  if (!present) throw CollapseError("index not present: " + index_name(index));
  for (auto& c : curves) {
    std::stable_sort(c.points.begin(), c.points.end(),
                     [](const CurvePoint& a, const CurvePoint& b) { return a.k < b.k; });
    for (std::size_t i = 1; i < c.points.size(); ++i)
      if (c.points[i].k == c.points[i - 1].k)
        throw CollapseError("curve '" + c.label + "' has two rows at <k> = " +
                            format_real(c.points[i].k));
  }
  return curves;
}

double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  if (xs.empty() || xs.size() != ys.size()) throw std::invalid_argument("bad interpolation table");
  if (x < xs.front() || x > xs.back()) throw std::out_of_range("interpolation outside range");
  const auto hi = std::lower_bound(xs.begin(), xs.end(), x);
  const auto j = static_cast<std::size_t>(hi - xs.begin());
  if (xs[j] == x) return ys[j];
  const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + t * (ys[j] - ys[j - 1]);
}

CollapseReport collapse_check(std::span<const Curve> curves, IndexKind index,
                              const CollapseOptions& options) {
  if (curves.size() < 2) throw CollapseError("collapse needs at least two curves");
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    if (c.points.empty()) throw CollapseError("curve '" + c.label + "' is empty");
    lo = std::max(lo, c.points.front().k);
    hi = std::min(hi, c.points.back().k);
  }
  if (!(lo < hi)) throw CollapseError("insufficient overlap in <k> ranges");

  std::vector<double> grid;
  for (const auto& c : curves) {
    const auto inside = std::count_if(c.points.begin(), c.points.end(), [&](const CurvePoint& p) {
      return p.k >= lo && p.k <= hi;
    });
    if (static_cast<std::size_t>(inside) < options.min_points)
      throw CollapseError("insufficient overlap in <k> ranges: curve '" + c.label + "' has " +
                          std::to_string(inside) + " points in [" + format_real(lo) + ", " +
                          format_real(hi) + "], need " + std::to_string(options.min_points));
    for (const auto& p : c.points)
      if (p.k >= lo && p.k <= hi) grid.push_back(p.k);
  }
  std::sort(grid.begin(), grid.end());
  // Nominal <k> values recomputed from p or r differ in the last bits across
  // models; treat those as one grid point.
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a <= 1e-9 * std::max(1.0, std::abs(a)); }),
             grid.end());

  CollapseReport report;
  report.index = index;
  report.grid = grid;
  for (const auto& c : curves) {
    std::vector<double> ks, vs, ss;
    for (const auto& p : c.points) {
      ks.push_back(p.k);
      vs.push_back(p.value);
      ss.push_back(p.sem);
    }
    std::vector<double> values, sems;
    for (double k : grid) {
      values.push_back(interpolate(ks, vs, k));
      sems.push_back(interpolate(ks, ss, k));
    }
    report.labels.push_back(c.label);
    report.interpolated.push_back(std::move(values));
    report.interpolated_sem.push_back(std::move(sems));
  }

  report.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    for (std::size_t a = 0; a < curves.size(); ++a) {
      for (std::size_t b = a + 1; b < curves.size(); ++b) {
        const double delta = std::abs(report.interpolated[a][g] - report.interpolated[b][g]);
        const double pooled = std::hypot(report.interpolated_sem[a][g], report.interpolated_sem[b][g]);
        const double allowed = std::max(options.tolerance, options.sem_factor * pooled);
        report.worst_excess = std::max(report.worst_excess, delta - allowed);
        if (delta > report.max_deviation || (a == 0 && b == 1 && g == 0)) {
          report.max_deviation = delta;
          report.max_deviation_k = grid[g];
          report.max_pair_first = a;
          report.max_pair_second = b;
          report.pooled_sem_at_max = pooled;
        }
      }
    }
  }
  report.within_tolerance = report.worst_excess <= 0.0;

  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (grid[g] < kDenseLimitMeanDegree) continue;
    for (std::size_t c = 0; c < curves.size(); ++c) {
      const auto predicted = prediction_at(curves[c], index, grid[g]);
      if (!predicted) continue;
      const double dev = std::abs(report.interpolated[c][g] - *predicted);
      if (!report.dense_deviation || dev > *report.dense_deviation) {
        report.dense_deviation = dev;
        report.dense_deviation_k = grid[g];
        report.dense_relative_deviation = dev / std::abs(*predicted);
      }
    }
  }
  return report;
}

void write_collapse_csv(std::ostream& out, const CollapseReport& report,
                        std::span<const Curve> curves) {
  out << "k";
  for (const auto& label : report.labels) out << ',' << label;
  out << ",max_abs_deviation,prediction\n";
  for (std::size_t g = 0; g < report.grid.size(); ++g) {
    out << format_real(report.grid[g]);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& column : report.interpolated) {
      out << ',' << format_real(column[g]);
      lo = std::min(lo, column[g]);
      hi = std::max(hi, column[g]);
    }
    out << ',' << format_real(hi - lo) << ',';
    if (!curves.empty())
      if (const auto p = prediction_at(curves.front(), report.index, report.grid[g]))
        out << format_real(*p);
    out << '\n';
  }
}

void write_collapse_summary(std::ostream& out, const CollapseReport& report,
                            const CollapseOptions& options) {
  out << "index " << index_name(report.index) << ": " << report.labels.size() << " curves, "
      << report.grid.size() << " shared <k> points in [" << format_real(report.grid.front())
      << ", " << format_real(report.grid.back()) << "]\n";
  out << "  max |delta| = " << format_real(report.max_deviation) << " at <k> = "
      << format_real(report.max_deviation_k) << " between '"
      << report.labels[report.max_pair_first] << "' and '"
      << report.labels[report.max_pair_second] << "' (pooled sem "
      << format_real(report.pooled_sem_at_max) << ")\n";
  out << "  tolerance max(" << format_real(options.tolerance) << ", "
      << format_real(options.sem_factor) << " * pooled sem): "
      << (report.within_tolerance ? "collapsed" : "NOT collapsed") << " (worst excess "
      << format_real(report.worst_excess) << ")\n";
  if (report.dense_deviation)
    out << "  dense regime (<k> >= " << format_real(kDenseLimitMeanDegree)
        << "): max |curve - prediction| = " << format_real(*report.dense_deviation) << " ("
        << format_real(100.0 * *report.dense_relative_deviation) << "% relative) at <k> = "
        << format_real(report.dense_deviation_k) << '\n';
  else
    out << "  dense regime: no prediction available\n";
}

}  // namespace mti
