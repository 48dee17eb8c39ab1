#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mti/indices.hpp"
#include "mti/models.hpp"

namespace mti {

inline constexpr std::uint64_t kDefaultBudget = 100000;

/// Replica count R(n) = ceil(budget / n), at least 1.
std::size_t replicas_for(std::size_t n, std::uint64_t budget);

/// Count, mean and sum of squared deviations, merged with Chan's update so
/// that two halves pool to the full-range values.
struct RunningMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x);
  void merge(const RunningMoments& other);
  double variance() const;  // sample variance, 0 when count < 2
  double sem() const;       // sqrt(variance / count), 0 when count < 2
};

struct EnsembleStats {
  ModelSpec point;
  std::uint64_t point_id = 0;
  IndexKind index = IndexKind::NK;
  IsolatedPolicy policy = IsolatedPolicy::Exclude;
  std::uint64_t master_seed = 0;

  std::size_t replicas = 0;
  /// Replicas that did not yield a plain finite value over all vertices:
  /// LogZero results (dropped from the mean) or, under Exclude, replicas in
  /// which at least one isolated vertex was skipped.
  std::size_t degenerate = 0;
  std::size_t excluded_vertices = 0;  // total over replicas, Exclude only

  RunningMoments ln;      // over non-LogZero replicas
  RunningMoments degree;  // empirical 2m/n per replica
  double mean_k_theoretical = 0.0;

  double mean_ln() const;  // NaN when every replica was LogZero
  double sem() const { return ln.sem(); }
  double mean_ln_over_n() const;
  double mean_k_empirical() const { return degree.mean; }
};

/// A generator or index failure inside one replica, tagged with its seed.
class ReplicaError : public std::runtime_error {
 public:
  ReplicaError(const SeedTriple& seed, const std::string& what);
  const SeedTriple& seed() const noexcept { return seed_; }

 private:
  SeedTriple seed_;
};

struct PointRun {
  ModelSpec point;
  std::uint64_t point_id = 0;
  std::uint64_t master_seed = 0;
  IsolatedPolicy policy = IsolatedPolicy::Exclude;
  unsigned workers = 1;
};

/// Replicas [first, last) of one model point; one graph per replica serves
/// every index. Values are reduced in ascending replica order, so the result
/// does not depend on `workers`.
std::vector<EnsembleStats> run_replicas(const PointRun& run, std::span<const IndexKind> indices,
                                        std::size_t first, std::size_t last);

inline std::vector<EnsembleStats> run_point(const PointRun& run,
                                            std::span<const IndexKind> indices,
                                            std::size_t replicas) {
  return run_replicas(run, indices, 0, replicas);
}

/// Combine statistics of two disjoint replica ranges of the same point/index.
EnsembleStats pool(const EnsembleStats& a, const EnsembleStats& b);

struct EnsembleSpec {
  std::vector<ModelSpec> grid;
  std::vector<IndexKind> indices;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t master_seed = 0;
  IsolatedPolicy policy = IsolatedPolicy::Exclude;
  unsigned workers = 1;
};

/// One entry per (grid point, index) in grid order; the grid position is the
/// point id used for seeding.
std::vector<EnsembleStats> sweep(const EnsembleSpec& spec);

}  // namespace mti
