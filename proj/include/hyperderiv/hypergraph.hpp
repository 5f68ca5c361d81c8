#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperderiv/rational.hpp"

namespace hyperderiv {

using NodeId = std::uint32_t;

enum class CountingMode {
  with_multiplicity,  // repeated hyperedges count once per repetition
  distinct            // repeated hyperedges count once
};

/// Canonical hyperedge: strictly sorted member list, fold count for
/// identical member sets.
struct Hyperedge {
  std::vector<NodeId> members;
  std::uint64_t multiplicity = 1;

  bool operator==(const Hyperedge& o) const {
    return members == o.members && multiplicity == o.multiplicity;
  }
};

/// Sparse symmetric nonnegative integer matrix. Only the upper triangle
/// (i <= j) is stored; absent entries are zero.
class SymCountMatrix {
 public:
  explicit SymCountMatrix(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }

  void add(NodeId i, NodeId j, std::uint64_t c) {
    if (c == 0) return;
    entries_[key(i, j)] += c;
  }

  std::uint64_t at(NodeId i, NodeId j) const {
    auto it = entries_.find(key(i, j));
    return it == entries_.end() ? 0 : it->second;
  }

  std::size_t nonzero_count() const { return entries_.size(); }

  /// Upper-triangle entries (i, j, value) with i <= j, sorted row-major.
  std::vector<std::tuple<NodeId, NodeId, std::uint64_t>> entries_sorted() const {
    std::vector<std::tuple<NodeId, NodeId, std::uint64_t>> out;
    out.reserve(entries_.size());
    for (const auto& [k, v] : entries_)
      out.emplace_back(static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xffffffffu), v);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::uint64_t key(NodeId i, NodeId j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }

  std::size_t dim_;
  std::unordered_map<std::uint64_t, std::uint64_t> entries_;
};

/// Frequency matrix A(H): a_ii = number of hyperedges containing i,
/// a_ij = number containing both i and j, per counting mode.
struct FrequencyMatrix {
  CountingMode mode = CountingMode::with_multiplicity;
  SymCountMatrix counts;

  std::size_t dim() const { return counts.dim(); }
  std::uint64_t at(NodeId i, NodeId j) const { return counts.at(i, j); }
};

/// Overlap matrix over canonical hyperedges: diag |h_i|, off-diag |h_i n h_j|.
struct OverlapMatrix {
  SymCountMatrix counts;

  std::size_t dim() const { return counts.dim(); }
  std::uint64_t at(std::size_t i, std::size_t j) const {
    return counts.at(static_cast<NodeId>(i), static_cast<NodeId>(j));
  }
};

/// Sparse 0/1 matrix as a sorted coordinate list of ones.
struct BinaryMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ones;  // row-major sorted

  bool at(std::uint32_t r, std::uint32_t c) const {
    return std::binary_search(ones.begin(), ones.end(), std::make_pair(r, c));
  }
  bool operator==(const BinaryMatrix& o) const {
    return rows == o.rows && cols == o.cols && ones == o.ones;
  }
};

/// Undirected graph with optional exact rational edge weights; no self-loops.
struct SimpleGraph {
  struct Edge {
    NodeId u, v;  // u < v
    Rational weight{1};

    bool operator==(const Edge& o) const {
      return u == o.u && v == o.v && weight == o.weight;
    }
  };

  std::size_t n_nodes = 0;
  std::vector<Edge> edges;  // sorted by (u, v), unique pairs

  void add_edge(NodeId a, NodeId b, Rational w = Rational(1)) {
    if (a == b) throw std::invalid_argument("SimpleGraph: self-loop");
    if (a >= n_nodes || b >= n_nodes) throw std::invalid_argument("SimpleGraph: node out of range");
    if (w.num() < 0) throw std::invalid_argument("SimpleGraph: negative weight");
    if (a > b) std::swap(a, b);
    edges.push_back({a, b, w});
  }

  /// Sorts edges and rejects duplicate pairs.
  void canonicalize() {
    std::sort(edges.begin(), edges.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
    for (std::size_t k = 1; k < edges.size(); ++k)
      if (edges[k].u == edges[k - 1].u && edges[k].v == edges[k - 1].v)
        throw std::invalid_argument("SimpleGraph: duplicate edge {" + std::to_string(edges[k].u) +
                                    "," + std::to_string(edges[k].v) + "}");
  }

  std::vector<std::pair<NodeId, NodeId>> edge_pairs() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.emplace_back(e.u, e.v);
    return out;
  }
};

/// Hypergraph in canonical form: vocabulary of N nodes covered by a multiset
/// of hyperedges, duplicates folded into multiplicities, edges sorted
/// lexicographically by member list. Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Builds from dense node ids in [0, n_nodes). Labels are optional but,
  /// when given, must be one per node. Empty hyperedges are rejected with
  /// their position; so are member ids outside [0, n_nodes) and nodes not
  /// covered by any hyperedge.
  static Hypergraph from_dense(std::size_t n_nodes, std::vector<Hyperedge> edges,
                               std::vector<std::string> labels = {}) {
    Hypergraph h;
    h.n_nodes_ = n_nodes;
    h.labels_ = std::move(labels);
    if (!h.labels_.empty() && h.labels_.size() != n_nodes)
      throw std::invalid_argument("Hypergraph: label count != node count");

    std::vector<bool> covered(n_nodes, false);
    std::map<std::vector<NodeId>, std::uint64_t> fold;
    std::size_t pos = 0;
    for (auto& e : edges) {
      if (e.members.empty())
        throw std::invalid_argument("Hypergraph: empty hyperedge at position " + std::to_string(pos));
      if (e.multiplicity == 0)
        throw std::invalid_argument("Hypergraph: zero multiplicity at position " + std::to_string(pos));
      std::sort(e.members.begin(), e.members.end());
      e.members.erase(std::unique(e.members.begin(), e.members.end()), e.members.end());
      for (NodeId m : e.members) {
        if (m >= n_nodes)
          throw std::invalid_argument("Hypergraph: member " + std::to_string(m) +
                                      " out of range at position " + std::to_string(pos));
        covered[m] = true;
      }
      fold[std::move(e.members)] += e.multiplicity;
      ++pos;
    }
    for (std::size_t i = 0; i < n_nodes; ++i)
      if (!covered[i])
        throw std::invalid_argument("Hypergraph: node " + std::to_string(i) +
                                    " not covered by any hyperedge");
    h.edges_.reserve(fold.size());
    for (auto& [members, mult] : fold) h.edges_.push_back({members, mult});
    return h;
  }

  /// Builds from arbitrary integer node ids; the vocabulary becomes the
  /// sorted set of distinct ids, relabeled densely, with the original ids
  /// kept as labels.
  static Hypergraph from_raw(const std::vector<std::vector<std::int64_t>>& raw,
                             const std::vector<std::uint64_t>& mults = {}) {
    if (!mults.empty() && mults.size() != raw.size())
      throw std::invalid_argument("Hypergraph: multiplicity count != edge count");
    std::set<std::int64_t> vocab;
    for (const auto& e : raw) vocab.insert(e.begin(), e.end());
    std::unordered_map<std::int64_t, NodeId> index;
    std::vector<std::string> labels;
    for (std::int64_t v : vocab) {
      index.emplace(v, static_cast<NodeId>(labels.size()));
      labels.push_back(std::to_string(v));
    }
    std::vector<Hyperedge> edges;
    edges.reserve(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
      Hyperedge e;
      e.members.reserve(raw[k].size());
      for (std::int64_t v : raw[k]) e.members.push_back(index.at(v));
      e.multiplicity = mults.empty() ? 1 : mults[k];
      if (raw[k].empty())
        throw std::invalid_argument("Hypergraph: empty hyperedge at position " + std::to_string(k));
      edges.push_back(std::move(e));
    }
    return from_dense(labels.size(), std::move(edges), std::move(labels));
  }

  std::size_t n_nodes() const { return n_nodes_; }
  /// Canonical (distinct) hyperedge count.
  std::size_t n_edges() const { return edges_.size(); }
  /// Hyperedge count with multiplicities, |epsilon| as a multiset.
  std::uint64_t total_multiplicity() const {
    std::uint64_t t = 0;
    for (const auto& e : edges_) t += e.multiplicity;
    return t;
  }

  const std::vector<Hyperedge>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::string label(NodeId i) const {
    return labels_.empty() ? std::to_string(i) : labels_[i];
  }

  bool operator==(const Hypergraph& o) const {
    return n_nodes_ == o.n_nodes_ && edges_ == o.edges_;
  }

  /// Canonical edge indices containing node i, ascending.
  std::vector<std::uint32_t> membership_profile(NodeId i) const {
    std::vector<std::uint32_t> prof;
    for (std::uint32_t k = 0; k < edges_.size(); ++k)
      if (std::binary_search(edges_[k].members.begin(), edges_[k].members.end(), i))
        prof.push_back(k);
    return prof;
  }

 private:
  std::size_t n_nodes_ = 0;
  std::vector<Hyperedge> edges_;
  std::vector<std::string> labels_;
};

/// Incidence matrix I(H), N rows by n columns: (i,k) = 1 iff node i is in
/// the k-th canonical hyperedge. With expand_multiplicity each hyperedge
/// contributes one column per repetition (columns of equal edges adjacent).
inline BinaryMatrix incidence_matrix(const Hypergraph& h, bool expand_multiplicity = false) {
  BinaryMatrix m;
  m.rows = h.n_nodes();
  std::uint32_t col = 0;
  for (const auto& e : h.edges()) {
    std::uint64_t copies = expand_multiplicity ? e.multiplicity : 1;
    for (std::uint64_t c = 0; c < copies; ++c, ++col)
      for (NodeId i : e.members) m.ones.emplace_back(i, col);
  }
  m.cols = col;
  std::sort(m.ones.begin(), m.ones.end());
  return m;
}

inline FrequencyMatrix frequency_matrix(const Hypergraph& h,
                                        CountingMode mode = CountingMode::with_multiplicity) {
  FrequencyMatrix f;
  f.mode = mode;
  f.counts = SymCountMatrix(h.n_nodes());
  for (const auto& e : h.edges()) {
    std::uint64_t c = mode == CountingMode::with_multiplicity ? e.multiplicity : 1;
    for (std::size_t a = 0; a < e.members.size(); ++a)
      for (std::size_t b = a; b < e.members.size(); ++b)
        f.counts.add(e.members[a], e.members[b], c);
  }
  return f;
}

inline OverlapMatrix overlap_matrix(const Hypergraph& h) {
  OverlapMatrix o;
  o.counts = SymCountMatrix(h.n_edges());
  const auto& es = h.edges();
  for (std::size_t i = 0; i < es.size(); ++i) {
    o.counts.add(static_cast<NodeId>(i), static_cast<NodeId>(i), es[i].members.size());
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      std::vector<NodeId> isect;
      std::set_intersection(es[i].members.begin(), es[i].members.end(), es[j].members.begin(),
                            es[j].members.end(), std::back_inserter(isect));
      o.counts.add(static_cast<NodeId>(i), static_cast<NodeId>(j), isect.size());
    }
  }
  return o;
}

/// Dual hypergraph H*: one node per hyperedge instance (multiplicities
/// expanded), one hyperedge per original node holding the instances that
/// contain it; nodes with identical membership fold into multiplicity.
/// This is the multiset reading under which (H*)* recovers H.
inline Hypergraph dual(const Hypergraph& h) {
  std::uint64_t instances = h.total_multiplicity();
  std::vector<std::uint64_t> offset(h.n_edges());
  std::uint64_t at = 0;
  for (std::size_t k = 0; k < h.n_edges(); ++k) {
    offset[k] = at;
    at += h.edges()[k].multiplicity;
  }
  std::vector<Hyperedge> profiles(h.n_nodes());
  for (std::size_t k = 0; k < h.n_edges(); ++k)
    for (NodeId i : h.edges()[k].members)
      for (std::uint64_t c = 0; c < h.edges()[k].multiplicity; ++c)
        profiles[i].members.push_back(static_cast<NodeId>(offset[k] + c));
  return Hypergraph::from_dense(static_cast<std::size_t>(instances), std::move(profiles));
}

/// Line graph L(H) over canonical hyperedges: adjacent iff they intersect.
inline SimpleGraph linegraph(const Hypergraph& h) {
  SimpleGraph g;
  g.n_nodes = h.n_edges();
  const auto& es = h.edges();
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      bool meet = false;
      auto a = es[i].members.begin();
      auto b = es[j].members.begin();
      while (a != es[i].members.end() && b != es[j].members.end()) {
        if (*a == *b) {
          meet = true;
          break;
        }
        (*a < *b) ? ++a : ++b;
      }
      if (meet) g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  g.canonicalize();
  return g;
}

/// Two-section Pi_2(H): clique expansion of every hyperedge.
inline SimpleGraph project(const Hypergraph& h) {
  SimpleGraph g;
  g.n_nodes = h.n_nodes();
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const auto& e : h.edges())
    for (std::size_t a = 0; a < e.members.size(); ++a)
      for (std::size_t b = a + 1; b < e.members.size(); ++b)
        seen.emplace(e.members[a], e.members[b]);
  for (const auto& [u, v] : seen) g.add_edge(u, v);
  g.canonicalize();
  return g;
}

/// Adjacency of the bipartite node-hyperedge graph B(H), (N+n) square with
/// blocks [[0, I], [I^t, 0]] over canonical hyperedges.
inline BinaryMatrix bipartite_adjacency(const Hypergraph& h) {
  BinaryMatrix m;
  std::size_t n = h.n_nodes(), k = h.n_edges();
  m.rows = m.cols = n + k;
  for (std::size_t e = 0; e < k; ++e)
    for (NodeId i : h.edges()[e].members) {
      m.ones.emplace_back(i, static_cast<std::uint32_t>(n + e));
      m.ones.emplace_back(static_cast<std::uint32_t>(n + e), i);
    }
  std::sort(m.ones.begin(), m.ones.end());
  return m;
}

/// Number of hyperedges (per counting mode) containing every node of S.
inline std::uint64_t joint_count(const Hypergraph& h, const std::vector<NodeId>& s,
                                 CountingMode mode = CountingMode::with_multiplicity) {
  if (s.empty()) throw std::invalid_argument("joint_count: empty node set");
  for (NodeId i : s)
    if (i >= h.n_nodes()) throw std::invalid_argument("joint_count: node out of range");
  std::uint64_t total = 0;
  for (const auto& e : h.edges()) {
    bool all = true;
    for (NodeId i : s)
      if (!std::binary_search(e.members.begin(), e.members.end(), i)) {
        all = false;
        break;
      }
    if (all) total += mode == CountingMode::with_multiplicity ? e.multiplicity : 1;
  }
  return total;
}

}  // namespace hyperderiv
