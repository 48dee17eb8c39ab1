#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mti/collapse.hpp"
#include "mti/dense_limit.hpp"

using namespace mti;

namespace {

Curve line(const std::string& label, double slope, double offset, std::vector<double> ks,
           double sem = 0.0) {
  Curve c;
  c.label = label;
  c.n = 100;
  for (double k : ks) c.points.push_back({k, offset + slope * k, sem});
  return c;
}

ResultRow row(ModelKind model, std::size_t n, IndexKind index, double k, double value) {
  ResultRow r;
  r.model = model;
  r.n = n;
  r.param_name = "p";
  r.index = index;
  r.replicas = 10;
  r.mean_k_theory = k;
  r.mean_ln = value * static_cast<double>(n);
  r.mean_ln_over_n = value;
  r.sem = 0.0;
  return r;
}

}  // namespace

TEST_CASE("piecewise-linear interpolation") {
  const std::vector<double> xs{0, 1, 3};
  const std::vector<double> ys{0, 2, 4};
  CHECK(interpolate(xs, ys, 0.5) == doctest::Approx(1.0));
  CHECK(interpolate(xs, ys, 2.0) == doctest::Approx(3.0));
  CHECK(interpolate(xs, ys, 3.0) == 4.0);
  CHECK_THROWS(interpolate(xs, ys, 3.5));
}

TEST_CASE("identical curves have zero deviation") {
  const std::vector<Curve> curves{line("a", 0.3, 1.0, {2, 4, 6, 8, 10}),
                                  line("b", 0.3, 1.0, {2, 4, 6, 8, 10})};
  const auto report = collapse_check(curves, IndexKind::NK);
  CHECK(report.max_deviation == 0.0);
  CHECK(report.within_tolerance);
  CHECK(report.grid.size() == 5);
}

TEST_CASE("offset curves fail beyond tolerance") {
  const std::vector<Curve> curves{line("a", 0.3, 1.0, {2, 4, 6, 8, 10}),
                                  line("b", 0.3, 1.1, {2, 4, 6, 8, 10})};
  const auto report = collapse_check(curves, IndexKind::NK);
  CHECK(report.max_deviation == doctest::Approx(0.1));
  CHECK_FALSE(report.within_tolerance);
  CHECK(report.worst_excess == doctest::Approx(0.05));

  // A large enough pooled sem raises the threshold.
  const std::vector<Curve> noisy{line("a", 0.3, 1.0, {2, 4, 6, 8, 10}, 0.02),
                                 line("b", 0.3, 1.1, {2, 4, 6, 8, 10}, 0.02)};
  CHECK(collapse_check(noisy, IndexKind::NK).within_tolerance);
}

TEST_CASE("shared grid is the union inside the overlap") {
  const std::vector<Curve> curves{line("a", 1.0, 0.0, {1, 2, 3, 4, 5, 6, 7}),
                                  line("b", 1.0, 0.0, {2.5, 3.5, 4.5, 5.5, 6.5, 7.5})};
  const auto report = collapse_check(curves, IndexKind::NK);
  CHECK(report.grid.front() == 2.5);
  CHECK(report.grid.back() == 7.0);
  CHECK(report.grid.size() == 10);  // 3..7 from a, 2.5..6.5 from b
  CHECK(report.max_deviation == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("insufficient overlap") {
  const std::vector<Curve> disjoint{line("a", 1, 0, {1, 2, 3, 4, 5}), line("b", 1, 0, {6, 7, 8, 9, 10})};
  CHECK_THROWS_AS(collapse_check(disjoint, IndexKind::NK), CollapseError);
  const std::vector<Curve> sparse{line("a", 1, 0, {1, 2, 3, 4, 5}), line("b", 1, 0, {1, 5})};
  CHECK_THROWS_AS(collapse_check(sparse, IndexKind::NK), CollapseError);
  const std::vector<Curve> single{line("a", 1, 0, {1, 2, 3, 4, 5})};
  CHECK_THROWS_AS(collapse_check(single, IndexKind::NK), CollapseError);
}

TEST_CASE("curves from result rows") {
  std::vector<ResultRow> rows;
  for (double k : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
    rows.push_back(row(ModelKind::ER, 125, IndexKind::NK, k, std::log(k)));
    rows.push_back(row(ModelKind::ER, 250, IndexKind::NK, k, std::log(k) + 0.01));
    rows.push_back(row(ModelKind::ER, 250, IndexKind::Pi2, k, k * std::log(k)));
  }
  const auto curves = curves_from_rows(rows, IndexKind::NK);
  REQUIRE(curves.size() == 2);
  CHECK(curves[0].label == "er n=125");
  CHECK(curves[1].points.size() == 6);
  const auto report = collapse_check(curves, IndexKind::NK);
  CHECK(report.max_deviation == doctest::Approx(0.01));
  CHECK(report.within_tolerance);
  // curve 0 is exactly ln k, the prediction for NK
  REQUIRE(report.dense_deviation.has_value());
  CHECK(*report.dense_deviation == doctest::Approx(0.01));

  try {
    (void)curves_from_rows(rows, IndexKind::ChiPi);
    FAIL("expected CollapseError");
  } catch (const CollapseError& e) {
    CHECK(std::string(e.what()) == "index not present: chipi");
  }

  rows.push_back(row(ModelKind::ER, 125, IndexKind::NK, 2.0, 1.0));
  CHECK_THROWS_AS(curves_from_rows(rows, IndexKind::NK), CollapseError);
}

TEST_CASE("GA has no dense deviation") {
  std::vector<ResultRow> rows;
  for (double k : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
    rows.push_back(row(ModelKind::ER, 125, IndexKind::GAPi, k, -0.01));
    rows.push_back(row(ModelKind::ER, 250, IndexKind::GAPi, k, -0.02));
  }
  const auto curves = curves_from_rows(rows, IndexKind::GAPi);
  const auto report = collapse_check(curves, IndexKind::GAPi);
  CHECK_FALSE(report.dense_deviation.has_value());
  CHECK(report.max_deviation == doctest::Approx(0.01));
}

TEST_CASE("report writers") {
  const std::vector<Curve> curves{line("a", 0.3, 1.0, {2, 4, 6, 8, 10, 12}),
                                  line("b", 0.3, 1.0, {2, 4, 6, 8, 10, 12})};
  const auto report = collapse_check(curves, IndexKind::NK);
  std::ostringstream csv, summary;
  write_collapse_csv(csv, report, curves);
  write_collapse_summary(summary, report, {});
  CHECK(csv.str().rfind("k,a,b,max_abs_deviation,prediction\n", 0) == 0);
  CHECK(csv.str().find("\n10.0,4.0,4.0,0.0,") != std::string::npos);
  CHECK(summary.str().find("collapsed") != std::string::npos);
}
