#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperderiv {

/// Directed weighted graph for random-walk computations.
struct DirectedGraph {
  struct Arc {
    std::uint32_t to;
    double weight;
  };

  std::size_t n_nodes = 0;
  std::vector<std::vector<Arc>> out;

  explicit DirectedGraph(std::size_t n = 0) : n_nodes(n), out(n) {}

  void add_arc(std::uint32_t from, std::uint32_t to, double weight) {
    if (from >= n_nodes || to >= n_nodes) throw std::invalid_argument("DirectedGraph: node out of range");
    if (weight < 0) throw std::invalid_argument("DirectedGraph: negative weight");
    out[from].push_back({to, weight});
  }
};

/// Random-walk specification: damping strictly inside (0,1) and a
/// personalization distribution; rows without outgoing weight restart
/// from the personalization vector.
struct TransitionSpec {
  DirectedGraph graph;
  double damping = 0.85;
  std::vector<double> personalization;
};

struct PageRankResult {
  std::vector<double> scores;
  std::size_t iterations = 0;
  double residual = 0;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::size_t iterations, double residual)
      : std::runtime_error("pagerank did not converge after " + std::to_string(iterations) +
                           " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iterations),
        residual(residual) {}

  std::size_t iterations;
  double residual;
};

/// Power iteration for the stationary state of
///   P = damping * P_B^T + (1 - damping) * v * e^T,
/// with out-weight-normalized rows of the base graph and dangling rows
/// replaced by v. Starts from v; terminates when the L1 step falls below
/// tol, which bounds the fixed-point residual of the returned vector.
inline PageRankResult personalized_pagerank(const TransitionSpec& spec, double tol = 1e-10,
                                            std::size_t max_iter = 10000) {
  const std::size_t n = spec.graph.n_nodes;
  if (n == 0) throw std::invalid_argument("personalized_pagerank: empty graph");
  if (!(spec.damping > 0.0 && spec.damping < 1.0))
    throw std::invalid_argument("personalized_pagerank: damping must lie in (0,1)");
  if (spec.personalization.size() != n)
    throw std::invalid_argument("personalized_pagerank: personalization size mismatch");
  double vsum = 0;
  for (double p : spec.personalization) {
    if (p < 0) throw std::invalid_argument("personalized_pagerank: negative personalization");
    vsum += p;
  }
  if (std::abs(vsum - 1.0) > 1e-9)
    throw std::invalid_argument("personalized_pagerank: personalization must sum to 1");

  std::vector<double> out_sum(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (const auto& arc : spec.graph.out[u]) out_sum[u] += arc.weight;

  const double alpha = spec.damping;
  std::vector<double> x = spec.personalization;
  std::vector<double> next(n);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    double dangling_mass = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (out_sum[u] <= 0) {
        dangling_mass += x[u];
        continue;
      }
      double scale = x[u] / out_sum[u];
      for (const auto& arc : spec.graph.out[u]) next[arc.to] += scale * arc.weight;
    }
    double diff = 0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = alpha * (next[i] + dangling_mass * spec.personalization[i]) +
                (1.0 - alpha) * spec.personalization[i];
      diff += std::abs(next[i] - x[i]);
    }
    x.swap(next);
    if (diff < tol) return {std::move(x), it, diff};
  }
  double residual = 0;
  for (std::size_t i = 0; i < n; ++i) residual += std::abs(x[i] - next[i]);
  throw ConvergenceError(max_iter, residual);
}

/// Damping factor from the mean unit length via E(l) = q / (1 - q).
inline double damping_from_mean(double mean) {
  if (!(mean > 0)) throw std::invalid_argument("damping_from_mean: mean must be positive");
  return mean / (1.0 + mean);
}

inline double mean_from_damping(double q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("mean_from_damping: damping must lie in (0,1)");
  return q / (1.0 - q);
}

}  // namespace hyperderiv
