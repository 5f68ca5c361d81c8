#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperderiv/hypergraph.hpp"
#include "hyperderiv/rational.hpp"
#include "hyperderiv/union_find.hpp"

namespace hyperderiv {

/// Derivative of H with respect to the pair {i, j}:
///   (a_ii - 2 a_ij + a_jj) / a_ij,
/// infinite when the pair never co-occurs, zero when the membership
/// profiles coincide.
inline ExtendedValue derivative_pair(const FrequencyMatrix& f, NodeId i, NodeId j) {
  if (i == j) throw std::invalid_argument("derivative_pair: nodes must be distinct");
  if (i >= f.dim() || j >= f.dim()) throw std::invalid_argument("derivative_pair: node out of range");
  std::uint64_t aii = f.at(i, i), ajj = f.at(j, j), aij = f.at(i, j);
  if (aij == 0) return ExtendedValue::infinity();
  std::int64_t num = static_cast<std::int64_t>(aii + ajj) - 2 * static_cast<std::int64_t>(aij);
  return ExtendedValue(Rational(num, static_cast<std::int64_t>(aij)));
}

inline ExtendedValue derivative_pair(const Hypergraph& h, NodeId i, NodeId j,
                                     CountingMode mode = CountingMode::with_multiplicity) {
  return derivative_pair(frequency_matrix(h, mode), i, j);
}

/// Derivative of H with respect to a node set S, |S| >= 2:
///   [ sum_{k=1..|S|} (-1)^{k+1} k sum_{|T|=k, T subset S} a_T ] / a_S.
/// Agrees with derivative_pair at |S| = 2; the numerator counts hyperedges
/// meeting S in exactly one node. Subset enumeration is exponential in |S|,
/// capped by max_set_size.
inline ExtendedValue derivative_set(const Hypergraph& h, std::vector<NodeId> s,
                                    CountingMode mode = CountingMode::with_multiplicity,
                                    std::size_t max_set_size = 12) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("derivative_set: repeated node");
  if (s.size() < 2) throw std::invalid_argument("derivative_set: need at least 2 nodes");
  if (s.size() > max_set_size)
    throw std::invalid_argument("derivative_set: set larger than cap " + std::to_string(max_set_size));
  for (NodeId i : s)
    if (i >= h.n_nodes()) throw std::invalid_argument("derivative_set: node out of range");

  const std::size_t m = s.size();
  // cnt[mask] = weighted number of hyperedges whose intersection with S is exactly mask
  std::vector<std::uint64_t> cnt(std::size_t{1} << m, 0);
  for (const auto& e : h.edges()) {
    std::size_t mask = 0;
    for (std::size_t b = 0; b < m; ++b)
      if (std::binary_search(e.members.begin(), e.members.end(), s[b])) mask |= std::size_t{1} << b;
    cnt[mask] += mode == CountingMode::with_multiplicity ? e.multiplicity : 1;
  }
  // superset zeta transform: a_T = sum over masks containing T
  std::vector<std::uint64_t> joint = cnt;
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t mask = 0; mask < joint.size(); ++mask)
      if (!(mask & (std::size_t{1} << b))) joint[mask] += joint[mask | (std::size_t{1} << b)];

  std::uint64_t a_s = joint[joint.size() - 1];
  if (a_s == 0) return ExtendedValue::infinity();
  std::int64_t numerator = 0;
  for (std::size_t mask = 1; mask < joint.size(); ++mask) {
    int k = std::popcount(mask);
    std::int64_t term = static_cast<std::int64_t>(k) * static_cast<std::int64_t>(joint[mask]);
    numerator += (k % 2 == 1) ? term : -term;
  }
  return ExtendedValue(Rational(numerator, static_cast<std::int64_t>(a_s)));
}

/// Group of original nodes with identical hyperedge membership.
struct NodeClass {
  NodeId representative;
  std::vector<NodeId> members;  // sorted, nonempty
  std::string label;            // member labels joined with '+'
};

struct ClassEdge {
  std::uint32_t a, b;  // class indices, a < b
  Rational weight;     // finite positive

  bool operator==(const ClassEdge& o) const { return a == o.a && b == o.b && weight == o.weight; }
};

/// Weighted quotient graph: zero-derivative nodes collapsed into classes,
/// infinite-derivative pairs absent, each surviving pair weighted by its
/// derivative.
struct DerivativeGraph {
  std::vector<NodeClass> classes;
  std::vector<ClassEdge> edges;  // sorted by (a, b)
};

/// Same classes and edges as the derivative graph with reciprocal weights.
struct HomogeneityGraph {
  std::vector<NodeClass> classes;
  std::vector<ClassEdge> edges;
};

namespace detail {

/// Builds classes from a union-find over [0, n) and maps node -> class index.
inline std::pair<std::vector<NodeClass>, std::vector<std::uint32_t>> collect_classes(
    const UnionFind& uf, std::size_t n, const Hypergraph& labeled) {
  std::map<std::size_t, std::vector<NodeId>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[uf.find(i)].push_back(static_cast<NodeId>(i));
  std::vector<NodeClass> classes;
  std::vector<std::uint32_t> class_of(n, 0);
  classes.reserve(groups.size());
  for (auto& [root, members] : groups) {
    NodeClass c;
    c.representative = static_cast<NodeId>(root);
    for (std::size_t k = 0; k < members.size(); ++k) {
      class_of[members[k]] = static_cast<std::uint32_t>(classes.size());
      if (k) c.label += '+';
      c.label += labeled.label(members[k]);
    }
    c.members = std::move(members);
    classes.push_back(std::move(c));
  }
  return {std::move(classes), std::move(class_of)};
}

}  // namespace detail

inline DerivativeGraph derivative_graph(const Hypergraph& h,
                                        CountingMode mode = CountingMode::with_multiplicity) {
  const FrequencyMatrix f = frequency_matrix(h, mode);
  const auto entries = f.counts.entries_sorted();

  // Zero derivative <=> a_ii = a_ij = a_jj, only possible on nonzero entries.
  UnionFind uf(h.n_nodes());
  for (const auto& [i, j, aij] : entries) {
    if (i == j) continue;
    if (f.at(i, i) == aij && f.at(j, j) == aij) uf.unite(i, j);
  }
  auto [classes, class_of] = detail::collect_classes(uf, h.n_nodes(), h);

  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> weights;
  for (const auto& [i, j, aij] : entries) {
    if (i == j) continue;
    std::uint32_t ca = class_of[i], cb = class_of[j];
    if (ca == cb) continue;
    if (cb < ca) std::swap(ca, cb);
    ExtendedValue d = derivative_pair(f, i, j);
    // well-defined: any members of the two classes give the same value
    weights.emplace(std::make_pair(ca, cb), d.finite());
  }
  DerivativeGraph g;
  g.classes = std::move(classes);
  g.edges.reserve(weights.size());
  for (const auto& [pair, w] : weights) g.edges.push_back({pair.first, pair.second, w});
  return g;
}

inline HomogeneityGraph homogeneity_graph(const Hypergraph& h,
                                          CountingMode mode = CountingMode::with_multiplicity) {
  DerivativeGraph d = derivative_graph(h, mode);
  HomogeneityGraph g;
  g.classes = std::move(d.classes);
  g.edges.reserve(d.edges.size());
  for (const auto& e : d.edges)
    g.edges.push_back({e.a, e.b, ExtendedValue(e.weight).reciprocal().finite()});
  return g;
}

/// Homogeneity matrix over the original (uncollapsed) nodes: zero diagonal,
/// h_ij = 1 / derivative(i, j) with 1/0 = inf and 1/inf = 0. Entries that
/// are zero (never co-occurring pairs) are implicit.
class HomogeneityMatrix {
 public:
  HomogeneityMatrix(std::size_t dim, std::map<std::pair<NodeId, NodeId>, ExtendedValue> nonzero)
      : dim_(dim), nonzero_(std::move(nonzero)) {}

  std::size_t dim() const { return dim_; }

  ExtendedValue at(NodeId i, NodeId j) const {
    if (i == j) return ExtendedValue(Rational(0));
    if (i > j) std::swap(i, j);
    auto it = nonzero_.find({i, j});
    return it == nonzero_.end() ? ExtendedValue(Rational(0)) : it->second;
  }

  const std::map<std::pair<NodeId, NodeId>, ExtendedValue>& nonzero() const { return nonzero_; }

 private:
  std::size_t dim_;
  std::map<std::pair<NodeId, NodeId>, ExtendedValue> nonzero_;
};

inline HomogeneityMatrix homogeneity_matrix(const Hypergraph& h,
                                            CountingMode mode = CountingMode::with_multiplicity) {
  const FrequencyMatrix f = frequency_matrix(h, mode);
  std::map<std::pair<NodeId, NodeId>, ExtendedValue> entries;
  for (const auto& [i, j, aij] : f.counts.entries_sorted()) {
    if (i == j) continue;
    ExtendedValue rec = derivative_pair(f, i, j).reciprocal();
    if (!rec.is_zero()) entries.emplace(std::make_pair(i, j), rec);
  }
  return HomogeneityMatrix(h.n_nodes(), std::move(entries));
}

/// Histogram of pair derivatives: counts of unordered node pairs per bin
/// [k*w, (k+1)*w) plus a separate bucket for infinite pairs. Bins and the
/// infinity bucket always partition all C(N,2) pairs; infinite pairs are
/// counted by difference rather than materialized.
struct DerivativeHistogram {
  double bin_width = 10.0;
  std::vector<std::uint64_t> bins;
  std::uint64_t infinite_pairs = 0;
  std::uint64_t total_pairs = 0;
};

inline DerivativeHistogram derivative_histogram(const Hypergraph& h, double bin_width = 10.0,
                                                CountingMode mode = CountingMode::with_multiplicity) {
  if (!(bin_width > 0)) throw std::invalid_argument("derivative_histogram: bin width must be positive");
  const FrequencyMatrix f = frequency_matrix(h, mode);
  DerivativeHistogram hist;
  hist.bin_width = bin_width;
  std::uint64_t n = h.n_nodes();
  hist.total_pairs = n * (n - 1) / 2;
  std::uint64_t finite = 0;
  for (const auto& [i, j, aij] : f.counts.entries_sorted()) {
    if (i == j) continue;
    ExtendedValue d = derivative_pair(f, i, j);
    auto bin = static_cast<std::size_t>(std::floor(d.finite().to_double() / bin_width));
    if (hist.bins.size() <= bin) hist.bins.resize(bin + 1, 0);
    ++hist.bins[bin];
    ++finite;
  }
  hist.infinite_pairs = hist.total_pairs - finite;
  return hist;
}

/// Jaccard index of the hyperedge-membership sets of i and j.
inline Rational jaccard(const Hypergraph& h, NodeId i, NodeId j) {
  if (i == j) throw std::invalid_argument("jaccard: nodes must be distinct");
  if (i >= h.n_nodes() || j >= h.n_nodes()) throw std::invalid_argument("jaccard: node out of range");
  auto vi = h.membership_profile(i);
  auto vj = h.membership_profile(j);
  std::vector<std::uint32_t> isect;
  std::set_intersection(vi.begin(), vi.end(), vj.begin(), vj.end(), std::back_inserter(isect));
  std::size_t uni = vi.size() + vj.size() - isect.size();
  return Rational(static_cast<std::int64_t>(isect.size()), static_cast<std::int64_t>(uni));
}

}  // namespace hyperderiv
