#include "mti/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace mti {

std::size_t replicas_for(std::size_t n, std::uint64_t budget) {
  if (n == 0) throw std::invalid_argument("replica budget needs n >= 1");
  const std::uint64_t r = (budget + n - 1) / n;
  return static_cast<std::size_t>(std::max<std::uint64_t>(r, 1));
}

void RunningMoments::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void RunningMoments::merge(const RunningMoments& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count), nb = static_cast<double>(other.count);
  const double total = na + nb;
  const double delta = other.mean - mean;
  mean += delta * nb / total;
  m2 += other.m2 + delta * delta * na * nb / total;
  count += other.count;
}

double RunningMoments::variance() const {
  return count < 2 ? 0.0 : std::max(0.0, m2 / static_cast<double>(count - 1));
}

double RunningMoments::sem() const {
  return count < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(count));
}

double EnsembleStats::mean_ln() const {
  return ln.count == 0 ? std::numeric_limits<double>::quiet_NaN() : ln.mean;
}

double EnsembleStats::mean_ln_over_n() const {
  return mean_ln() / static_cast<double>(total_vertices(point));
}

ReplicaError::ReplicaError(const SeedTriple& seed, const std::string& what)
    : std::runtime_error("replica (seed " + std::to_string(seed.master_seed) + ", point " +
                         std::to_string(seed.point_id) + ", replica " +
                         std::to_string(seed.replica_index) + "): " + what),
      seed_(seed) {}

namespace {

struct ReplicaSample {
  double ln = 0.0;
  bool log_zero = false;
  std::size_t excluded = 0;
};

}  // namespace

std::vector<EnsembleStats> run_replicas(const PointRun& run, std::span<const IndexKind> indices,
                                        std::size_t first, std::size_t last) {
  validate(run.point);
  if (last < first) throw std::invalid_argument("replica range is reversed");
  const std::size_t count = last - first;
  const std::size_t width = indices.size();
  const double n = static_cast<double>(total_vertices(run.point));

  std::vector<ReplicaSample> samples(count * width);
  std::vector<double> degrees(count);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_at = count;
  std::exception_ptr error;

  const auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      const SeedTriple seed{run.master_seed, run.point_id, first + i};
      try {
        const Graph g = generate(run.point, seed);
        degrees[i] = n > 0 ? 2.0 * static_cast<double>(g.edge_count()) / n : 0.0;
        for (std::size_t j = 0; j < width; ++j) {
          const auto eval = ln_multiplicative_index(g, indices[j], run.policy);
          auto& s = samples[i * width + j];
          s.log_zero = eval.ln.is_log_zero();
          s.ln = s.log_zero ? 0.0 : eval.ln.value();
          s.excluded = eval.excluded_vertices;
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(error_mutex);
        if (i < error_at) {
          error_at = i;
          error = std::make_exception_ptr(ReplicaError(seed, e.what()));
        }
      }
    }
  };

  const unsigned workers =
      static_cast<unsigned>(std::clamp<std::size_t>(run.workers, 1, std::max<std::size_t>(count, 1)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);

  RunningMoments degree;
  for (double k : degrees) degree.add(k);
  const double k_theory = mean_degree(run.point);

  std::vector<EnsembleStats> out;
  out.reserve(width);
  for (std::size_t j = 0; j < width; ++j) {
    EnsembleStats st;
    st.point = run.point;
    st.point_id = run.point_id;
    st.index = indices[j];
    st.policy = run.policy;
    st.master_seed = run.master_seed;
    st.replicas = count;
    st.degree = degree;
    st.mean_k_theoretical = k_theory;
    for (std::size_t i = 0; i < count; ++i) {
      const auto& s = samples[i * width + j];
      if (s.log_zero) {
        ++st.degenerate;
        continue;
      }
      if (s.excluded > 0) ++st.degenerate;
      st.excluded_vertices += s.excluded;
      st.ln.add(s.ln);
    }
    out.push_back(std::move(st));
  }
  return out;
}

EnsembleStats pool(const EnsembleStats& a, const EnsembleStats& b) {
  if (a.point_id != b.point_id || a.index != b.index || a.policy != b.policy ||
      a.master_seed != b.master_seed || model_kind(a.point) != model_kind(b.point) ||
      total_vertices(a.point) != total_vertices(b.point) ||
      parameter_value(a.point) != parameter_value(b.point))
    throw std::invalid_argument("can only pool statistics of the same point and index");
  EnsembleStats out = a;
  out.replicas += b.replicas;
  out.degenerate += b.degenerate;
  out.excluded_vertices += b.excluded_vertices;
  out.ln.merge(b.ln);
  out.degree.merge(b.degree);
  return out;
}

std::vector<EnsembleStats> sweep(const EnsembleSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("ensemble grid is empty");
  if (spec.indices.empty()) throw std::invalid_argument("no indices requested");
  std::vector<EnsembleStats> rows;
  rows.reserve(spec.grid.size() * spec.indices.size());
  for (std::size_t id = 0; id < spec.grid.size(); ++id) {
    const auto& point = spec.grid[id];
    const PointRun run{point, id, spec.master_seed, spec.policy, spec.workers};
    auto stats = run_point(run, spec.indices, replicas_for(total_vertices(point), spec.budget));
    for (auto& s : stats) rows.push_back(std::move(s));
  }
  return rows;
}

}  // namespace mti
