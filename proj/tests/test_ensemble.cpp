#include <doctest.h>

#include <cmath>

#include "mti/ensemble.hpp"
#include "mti/results.hpp"

using namespace mti;

TEST_CASE("replica counts round up") {
  CHECK(replicas_for(125, 100000) == 800);
  CHECK(replicas_for(300, 100000) == 334);
  CHECK(replicas_for(1000, 10) == 1);
  CHECK(replicas_for(7, 7) == 1);
  CHECK(replicas_for(7, 8) == 2);
}

TEST_CASE("running moments") {
  RunningMoments m;
  for (double x : {1.0, 2.0, 3.0, 4.0}) m.add(x);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.variance() == doctest::Approx(5.0 / 3.0));
  CHECK(m.sem() == doctest::Approx(std::sqrt(5.0 / 12.0)));

  RunningMoments a, b;
  for (double x : {1.0, 2.0}) a.add(x);
  for (double x : {3.0, 4.0}) b.add(x);
  a.merge(b);
  CHECK(a.count == 4);
  CHECK(a.mean == doctest::Approx(2.5));
  CHECK(a.variance() == doctest::Approx(5.0 / 3.0));

  RunningMoments one;
  one.add(3.0);
  CHECK(one.sem() == 0.0);
}

TEST_CASE("deterministic complete graph") {
  const PointRun run{ErdosRenyi{4, 1.0}, 0, 1};
  const std::vector<IndexKind> indices{IndexKind::NK};
  const auto stats = run_point(run, indices, 3);
  REQUIRE(stats.size() == 1);
  CHECK(stats[0].mean_ln() == doctest::Approx(4 * std::log(3.0)));
  CHECK(stats[0].sem() == 0.0);
  CHECK(stats[0].replicas == 3);
  CHECK(stats[0].degenerate == 0);
  CHECK(stats[0].mean_k_theoretical == 3.0);
  CHECK(stats[0].mean_k_empirical() == 3.0);
}

TEST_CASE("empty graphs give empty products") {
  const PointRun run{ErdosRenyi{100, 0.0}, 0, 1};
  const std::vector<IndexKind> indices{IndexKind::Pi2, IndexKind::NK};
  const auto stats = run_point(run, indices, 10);
  CHECK(stats[0].mean_ln() == 0.0);
  CHECK(stats[0].sem() == 0.0);
  CHECK(stats[0].degenerate == 0);
  // every vertex is isolated, so NK excludes all of them in every replica
  CHECK(stats[1].mean_ln() == 0.0);
  CHECK(stats[1].degenerate == 10);
  CHECK(stats[1].excluded_vertices == 1000);
}

TEST_CASE("LogZero replicas are dropped from the mean") {
  PointRun run{ErdosRenyi{100, 0.0}, 0, 1, IsolatedPolicy::LogZero};
  const std::vector<IndexKind> indices{IndexKind::NK, IndexKind::Pi2};
  const auto stats = run_point(run, indices, 5);
  CHECK(stats[0].degenerate == 5);
  CHECK(std::isnan(stats[0].mean_ln()));
  CHECK(stats[0].degenerate <= stats[0].replicas);
  // edge products have no zero factor, isolated vertices or not
  CHECK(stats[1].degenerate == 0);
  CHECK(stats[1].mean_ln() == 0.0);

  // sparse ER: some replicas have isolated vertices, some do not
  run.point = ErdosRenyi{30, 0.15};
  const auto mixed = run_point(run, indices, 200);
  CHECK(mixed[0].degenerate > 0);
  CHECK(mixed[0].degenerate < 200);
  CHECK(mixed[0].ln.count == 200 - mixed[0].degenerate);
}

TEST_CASE("split and pool reproduces the full run") {
  const PointRun run{RandomGeometric{60, 0.2}, 4, 99};
  const std::vector<IndexKind> indices{IndexKind::Pi2, IndexKind::NK};
  const auto full = run_point(run, indices, 40);
  const auto lo = run_replicas(run, indices, 0, 17);
  const auto hi = run_replicas(run, indices, 17, 40);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto pooled = pool(lo[i], hi[i]);
    CHECK(pooled.replicas == full[i].replicas);
    CHECK(pooled.degenerate == full[i].degenerate);
    CHECK(pooled.mean_ln() == doctest::Approx(full[i].mean_ln()).epsilon(1e-13));
    CHECK(pooled.sem() == doctest::Approx(full[i].sem()).epsilon(1e-10));
    CHECK(pooled.mean_k_empirical() == doctest::Approx(full[i].mean_k_empirical()).epsilon(1e-13));
  }
}

TEST_CASE("worker count does not change results") {
  EnsembleSpec spec;
  spec.grid = {ErdosRenyi{40, 0.1}, ErdosRenyi{40, 0.3}, ErdosRenyi{80, 0.1}};
  spec.indices = {IndexKind::NK, IndexKind::IDPi, IndexKind::GAPi};
  spec.budget = 2000;
  spec.master_seed = 12;
  const auto one = results_csv(to_rows(sweep(spec)));
  spec.workers = 4;
  const auto four = results_csv(to_rows(sweep(spec)));
  spec.workers = 8;
  const auto eight = results_csv(to_rows(sweep(spec)));
  CHECK(one == four);
  CHECK(one == eight);
  spec.master_seed = 13;
  CHECK(one != results_csv(to_rows(sweep(spec))));
}

TEST_CASE("sweep cardinality and order") {
  EnsembleSpec spec;
  spec.grid = {ErdosRenyi{125, 0.1}, ErdosRenyi{125, 0.2}, ErdosRenyi{250, 0.1}, ErdosRenyi{250, 0.2}};
  spec.indices = {IndexKind::NK};
  spec.budget = 1000;
  const auto stats = sweep(spec);
  CHECK(stats.size() == 4);
  CHECK(stats[2].point_id == 2);
  CHECK(stats[0].replicas == 8);
  CHECK(stats[3].replicas == 4);
}

TEST_CASE("empirical mean degree matches theory") {
  EnsembleSpec spec;
  spec.grid = {ErdosRenyi{100, 0.05}, RandomGeometric{100, 0.15}};
  spec.indices = {IndexKind::NK};
  spec.budget = 20000;
  spec.master_seed = 3;
  for (const auto& s : sweep(spec)) {
    CHECK(s.degree.count == 200);
    CHECK(std::abs(s.mean_k_empirical() - s.mean_k_theoretical) <= 4 * s.degree.sem());
  }
}

TEST_CASE("invalid points are rejected before any replica runs") {
  const PointRun run{ErdosRenyi{10, 3.0}, 2, 5};
  const std::vector<IndexKind> indices{IndexKind::NK};
  CHECK_THROWS_AS(run_point(run, indices, 3), std::invalid_argument);
  const ReplicaError e({5, 2, 7}, "boom");
  CHECK(e.seed().replica_index == 7);
  CHECK(std::string(e.what()).find("boom") != std::string::npos);
}
