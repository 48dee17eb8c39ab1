#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "mti/graph.hpp"

namespace mti {

/// Erdős–Rényi G(n, p).
struct ErdosRenyi {
  std::size_t n = 0;
  double p = 0.0;
};

/// Random geometric graph: n uniform points in the unit square, edge iff
/// Euclidean distance <= r.
struct RandomGeometric {
  std::size_t n = 0;
  double r = 0.0;
};

/// Bipartite random graph: vertices [0, n1) form set 1, [n1, n1+n2) set 2;
/// every cross pair is present with probability p.
struct BipartiteRandom {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double p = 0.0;
};

using ModelSpec = std::variant<ErdosRenyi, RandomGeometric, BipartiteRandom>;

enum class ModelKind { ER, RG, BR };

ModelKind model_kind(const ModelSpec& spec);
std::string model_name(ModelKind kind);  // "er" | "rg" | "br"
ModelKind parse_model_kind(const std::string& name);

std::size_t total_vertices(const ModelSpec& spec);

/// Name and value of the model's connection parameter ("p" or "r").
std::string parameter_name(const ModelSpec& spec);
double parameter_value(const ModelSpec& spec);

/// Throws std::invalid_argument when a parameter is outside its range
/// (p in [0,1], r in [0, sqrt 2], sizes >= 1).
void validate(const ModelSpec& spec);

inline constexpr double kMaxRadius = 1.4142135623730950488;  // sqrt(2)

/// Probability that two independent uniform points in the unit square lie
/// within distance r of each other.
double g_of_r(double r);

/// The two closed-form branches of g_of_r, exposed so the continuity at r = 1
/// can be checked from both sides.
double g_of_r_inner(double r);  // 0 <= r <= 1
double g_of_r_outer(double r);  // 1 <= r <= sqrt 2

/// Smallest r with g_of_r(r) >= target, by bisection. target in [0, 1].
double radius_for_connection_probability(double target);

struct BipartiteMeanDegrees {
  double set1 = 0.0;     // n2 * p
  double set2 = 0.0;     // n1 * p
  double network = 0.0;  // 2 n1 n2 p / (n1 + n2)
};

/// Expected network-level mean degree <k>: (n-1)p for ER, (n-1)g(r) for RG,
/// 2 n1 n2 p / (n1 + n2) for BR.
double mean_degree(const ModelSpec& spec);
BipartiteMeanDegrees bipartite_mean_degrees(const BipartiteRandom& spec);

/// Model point with the requested network-level mean degree <k>.
ModelSpec spec_for_mean_degree(ModelKind kind, std::size_t n1, std::size_t n2, double k);

struct SeedTriple {
  std::uint64_t master_seed = 0;
  std::uint64_t point_id = 0;
  std::uint64_t replica_index = 0;
};

/// Avalanche mix of the triple into the 64-bit seed of one replica stream.
std::uint64_t derive_stream_seed(const SeedTriple& seed);

/// Deterministic for a fixed (spec, seed). ER and BR consume one uniform
/// draw per candidate pair in lexicographic order; RG draws all n (x, y)
/// positions before testing any distance.
Graph generate(const ModelSpec& spec, const SeedTriple& seed);

}  // namespace mti
