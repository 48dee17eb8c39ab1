#include "mti/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace mti {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// 53 random mantissa bits -> [0, 1).
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("probability p must lie in [0, 1], got " + std::to_string(p));
}

}  // namespace

ModelKind model_kind(const ModelSpec& spec) {
  return std::visit(overloaded{[](const ErdosRenyi&) { return ModelKind::ER; },
                               [](const RandomGeometric&) { return ModelKind::RG; },
                               [](const BipartiteRandom&) { return ModelKind::BR; }},
                    spec);
}

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::ER: return "er";
    case ModelKind::RG: return "rg";
    case ModelKind::BR: return "br";
  }
  return "?";
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "er") return ModelKind::ER;
  if (name == "rg") return ModelKind::RG;
  if (name == "br") return ModelKind::BR;
  throw std::invalid_argument("unknown model '" + name + "' (expected er, rg or br)");
}

std::size_t total_vertices(const ModelSpec& spec) {
  return std::visit(overloaded{[](const ErdosRenyi& s) { return s.n; },
                               [](const RandomGeometric& s) { return s.n; },
                               [](const BipartiteRandom& s) { return s.n1 + s.n2; }},
                    spec);
}

std::string parameter_name(const ModelSpec& spec) {
  return model_kind(spec) == ModelKind::RG ? "r" : "p";
}

double parameter_value(const ModelSpec& spec) {
  return std::visit(overloaded{[](const ErdosRenyi& s) { return s.p; },
                               [](const RandomGeometric& s) { return s.r; },
                               [](const BipartiteRandom& s) { return s.p; }},
                    spec);
}

void validate(const ModelSpec& spec) {
  std::visit(overloaded{
                 [](const ErdosRenyi& s) {
                   if (s.n < 1) throw std::invalid_argument("ER size n must be >= 1");
                   check_probability(s.p);
                 },
                 [](const RandomGeometric& s) {
                   if (s.n < 1) throw std::invalid_argument("RG size n must be >= 1");
                   if (!(s.r >= 0.0 && s.r <= kMaxRadius))
                     throw std::invalid_argument("radius r must lie in [0, sqrt 2], got " +
                                                 std::to_string(s.r));
                 },
                 [](const BipartiteRandom& s) {
                   if (s.n1 < 1 || s.n2 < 1)
                     throw std::invalid_argument("BR set sizes n1, n2 must be >= 1");
                   check_probability(s.p);
                 }},
             spec);
}

double g_of_r_inner(double r) {
  return r * r * (std::numbers::pi - 8.0 / 3.0 * r + 0.5 * r * r);
}

double g_of_r_outer(double r) {
  const double r2 = r * r;
  const double inv = 1.0 / r;
  return 1.0 / 3.0 - 2.0 * r2 * (1.0 - std::asin(inv) + std::acos(inv)) +
         4.0 / 3.0 * (2.0 * r2 + 1.0) * std::sqrt(r2 - 1.0) - 0.5 * r2 * r2;
}

double g_of_r(double r) {
  if (!(r >= 0.0 && r <= kMaxRadius))
    throw std::invalid_argument("radius r must lie in [0, sqrt 2], got " + std::to_string(r));
  if (r <= 1.0) return g_of_r_inner(r);
  // Rounding can push the outer branch a few ulps past 1 near sqrt 2.
  return std::min(1.0, g_of_r_outer(r));
}

double radius_for_connection_probability(double target) {
  if (!(target >= 0.0 && target <= 1.0))
    throw std::invalid_argument("connection probability must lie in [0, 1]");
  double lo = 0.0, hi = kMaxRadius;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g_of_r(mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

BipartiteMeanDegrees bipartite_mean_degrees(const BipartiteRandom& s) {
  const double n1 = static_cast<double>(s.n1), n2 = static_cast<double>(s.n2);
  return {n2 * s.p, n1 * s.p, 2.0 * n1 * n2 * s.p / (n1 + n2)};
}

double mean_degree(const ModelSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{[](const ErdosRenyi& s) { return static_cast<double>(s.n - 1) * s.p; },
                 [](const RandomGeometric& s) { return static_cast<double>(s.n - 1) * g_of_r(s.r); },
                 [](const BipartiteRandom& s) { return bipartite_mean_degrees(s).network; }},
      spec);
}

ModelSpec spec_for_mean_degree(ModelKind kind, std::size_t n1, std::size_t n2, double k) {
  if (!(k >= 0.0)) throw std::invalid_argument("mean degree must be >= 0");
  ModelSpec spec;
  switch (kind) {
    case ModelKind::ER:
      if (n1 < 2) throw std::invalid_argument("ER needs n >= 2 for a positive mean degree");
      spec = ErdosRenyi{n1, k / static_cast<double>(n1 - 1)};
      break;
    case ModelKind::RG: {
      if (n1 < 2) throw std::invalid_argument("RG needs n >= 2 for a positive mean degree");
      const double target = k / static_cast<double>(n1 - 1);
      if (target > 1.0) throw std::invalid_argument("mean degree exceeds n - 1");
      spec = RandomGeometric{n1, radius_for_connection_probability(target)};
      break;
    }
    case ModelKind::BR: {
      const double a = static_cast<double>(n1), b = static_cast<double>(n2);
      spec = BipartiteRandom{n1, n2, k * (a + b) / (2.0 * a * b)};
      break;
    }
  }
  validate(spec);
  return spec;
}

std::uint64_t derive_stream_seed(const SeedTriple& seed) {
  std::uint64_t h = splitmix64(seed.master_seed);
  h = splitmix64(h ^ splitmix64(seed.point_id + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ splitmix64(seed.replica_index + 0x85157af5ULL));
  return h;
}

Graph generate(const ModelSpec& spec, const SeedTriple& seed) {
  validate(spec);
  UniformStream rng(derive_stream_seed(seed));
  std::vector<Edge> edges;

  return std::visit(
      overloaded{
          [&](const ErdosRenyi& s) {
            for (std::size_t u = 0; u < s.n; ++u)
              for (std::size_t v = u + 1; v < s.n; ++v)
                if (rng.next() < s.p)
                  edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
            return Graph::from_sorted(s.n, std::move(edges));
          },
          [&](const RandomGeometric& s) {
            std::vector<double> x(s.n), y(s.n);
            for (std::size_t i = 0; i < s.n; ++i) {
              x[i] = rng.next();
              y[i] = rng.next();
            }
            const double r2 = s.r * s.r;
            for (std::size_t u = 0; u < s.n; ++u)
              for (std::size_t v = u + 1; v < s.n; ++v) {
                const double dx = x[u] - x[v], dy = y[u] - y[v];
                if (dx * dx + dy * dy <= r2)
                  edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
              }
            return Graph::from_sorted(s.n, std::move(edges));
          },
          [&](const BipartiteRandom& s) {
            for (std::size_t u = 0; u < s.n1; ++u)
              for (std::size_t v = 0; v < s.n2; ++v)
                if (rng.next() < s.p)
                  edges.push_back(
                      {static_cast<VertexId>(u), static_cast<VertexId>(s.n1 + v)});
            return Graph::from_sorted(s.n1 + s.n2, std::move(edges));
          }},
      spec);
}

}  // namespace mti
