#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperderiv/derivative.hpp"
#include "hyperderiv/hypergraph.hpp"
#include "hyperderiv/rational.hpp"
#include "hyperderiv/union_find.hpp"

namespace hyperderiv {

/// A weighted graph and a hypergraph over the same node set.
struct Hyperstructure {
  SimpleGraph graph;
  Hypergraph hyper;
};

inline Hyperstructure make_hyperstructure(SimpleGraph graph, Hypergraph hyper) {
  if (graph.n_nodes != hyper.n_nodes())
    throw std::invalid_argument("make_hyperstructure: node counts differ (" +
                                std::to_string(graph.n_nodes) + " vs " +
                                std::to_string(hyper.n_nodes()) + ")");
  graph.canonicalize();
  return Hyperstructure{std::move(graph), std::move(hyper)};
}

/// True iff every graph edge lies inside some hyperedge.
inline bool is_compatible(const Hyperstructure& s) {
  for (const auto& e : s.graph.edges)
    if (joint_count(s.hyper, {e.u, e.v}, CountingMode::distinct) == 0) return false;
  return true;
}

/// First graph edge violating compatibility, if any.
inline std::optional<std::pair<NodeId, NodeId>> incompatible_edge(const Hyperstructure& s) {
  for (const auto& e : s.graph.edges)
    if (joint_count(s.hyper, {e.u, e.v}, CountingMode::distinct) == 0)
      return std::make_pair(e.u, e.v);
  return std::nullopt;
}

/// Line graph of a plain graph: nodes are the edges, adjacent iff they
/// share an endpoint.
inline SimpleGraph graph_linegraph(const SimpleGraph& g) {
  SimpleGraph lg;
  lg.n_nodes = g.edges.size();
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
      const auto& a = g.edges[i];
      const auto& b = g.edges[j];
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
        lg.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  lg.canonicalize();
  return lg;
}

/// How a hyperedge h over nodes maps to a hyperedge over graph edges when
/// forming the edge-level hyperstructure S'.
enum class InducedEdgeRule {
  meets,  // e is in h' iff e shares a node with h; keeps Theorem 1's
          // compatibility preservation provable
  within  // e is in h' iff both endpoints of e lie in h (the sentence-as-
          // clique reading; compatibility of S' is not guaranteed)
};

/// Theorem 1 constructions for a compatible hyperstructure S = (X, E, H):
///   S''  over the original nodes with the two-section of H as edge set,
///   S'   over the edge set E with line-graph adjacency and the hyperedge
///        family induced per rule (empty induced hyperedges dropped).
struct InducedHyperstructures {
  Hyperstructure edge_level;  // S'
  Hyperstructure node_level;  // S''
};

inline InducedHyperstructures induced_hyperstructures(const Hyperstructure& s,
                                                      InducedEdgeRule rule = InducedEdgeRule::meets) {
  if (!is_compatible(s)) throw std::invalid_argument("induced_hyperstructures: incompatible input");
  if (s.graph.edges.empty())
    throw std::invalid_argument("induced_hyperstructures: empty edge set is degenerate");

  Hyperstructure node_level{project(s.hyper), s.hyper};

  std::vector<Hyperedge> induced;
  for (const auto& h : s.hyper.edges()) {
    Hyperedge ih;
    ih.multiplicity = h.multiplicity;
    for (std::size_t k = 0; k < s.graph.edges.size(); ++k) {
      const auto& e = s.graph.edges[k];
      bool u_in = std::binary_search(h.members.begin(), h.members.end(), e.u);
      bool v_in = std::binary_search(h.members.begin(), h.members.end(), e.v);
      bool take = rule == InducedEdgeRule::within ? (u_in && v_in) : (u_in || v_in);
      if (take) ih.members.push_back(static_cast<NodeId>(k));
    }
    if (!ih.members.empty()) induced.push_back(std::move(ih));
  }
  std::vector<std::string> edge_labels;
  edge_labels.reserve(s.graph.edges.size());
  for (const auto& e : s.graph.edges)
    edge_labels.push_back("{" + s.hyper.label(e.u) + "," + s.hyper.label(e.v) + "}");
  Hypergraph edge_hyper = Hypergraph::from_dense(s.graph.edges.size(), std::move(induced),
                                                 std::move(edge_labels));
  Hyperstructure edge_level{graph_linegraph(s.graph), std::move(edge_hyper)};
  return InducedHyperstructures{std::move(edge_level), std::move(node_level)};
}

struct EdgeDerivative {
  NodeId u, v;
  ExtendedValue value;
};

/// Derivative of a graph edge with respect to the hyperstructure:
///   w_uv * (a_uu - 2 a_uv + a_vv) / a_uv,
/// infinite when no hyperedge contains the edge.
inline EdgeDerivative edge_derivative(const Hyperstructure& s, NodeId u, NodeId v,
                                      CountingMode mode = CountingMode::with_multiplicity) {
  if (u > v) std::swap(u, v);
  auto it = std::find_if(s.graph.edges.begin(), s.graph.edges.end(),
                         [&](const SimpleGraph::Edge& e) { return e.u == u && e.v == v; });
  if (it == s.graph.edges.end())
    throw std::invalid_argument("edge_derivative: {" + std::to_string(u) + "," +
                                std::to_string(v) + "} is not a graph edge");
  const FrequencyMatrix f = frequency_matrix(s.hyper, mode);
  ExtendedValue bare = derivative_pair(f, u, v);
  if (bare.is_infinite()) return {u, v, ExtendedValue::infinity()};
  return {u, v, ExtendedValue(it->weight * bare.finite())};
}

/// Derivative graph of the weighted graph with respect to S. Zero-weight
/// graph edges are treated as absent; zero-valued edges collapse their
/// endpoints; infinite-valued edges are dropped. Parallel edges landing on
/// the same class pair carry the same bare derivative, so their values are
/// merged by averaging (equal to the common value whenever weights agree).
inline DerivativeGraph derivative_graph_of(const Hyperstructure& s,
                                           CountingMode mode = CountingMode::with_multiplicity) {
  const FrequencyMatrix f = frequency_matrix(s.hyper, mode);

  struct Valued {
    NodeId u, v;
    ExtendedValue value;
  };
  std::vector<Valued> live;
  for (const auto& e : s.graph.edges) {
    if (e.weight.is_zero()) continue;
    ExtendedValue bare = derivative_pair(f, e.u, e.v);
    if (bare.is_infinite())
      live.push_back({e.u, e.v, ExtendedValue::infinity()});
    else
      live.push_back({e.u, e.v, ExtendedValue(e.weight * bare.finite())});
  }

  UnionFind uf(s.graph.n_nodes);
  for (const auto& e : live)
    if (e.value.is_zero()) uf.unite(e.u, e.v);
  auto [classes, class_of] = detail::collect_classes(uf, s.graph.n_nodes, s.hyper);

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::pair<Rational, std::int64_t>> acc;
  for (const auto& e : live) {
    if (e.value.is_infinite() || e.value.is_zero()) continue;
    std::uint32_t ca = class_of[e.u], cb = class_of[e.v];
    if (ca == cb) continue;
    if (cb < ca) std::swap(ca, cb);
    auto& slot = acc[{ca, cb}];
    slot.first = slot.first + e.value.finite();
    slot.second += 1;
  }
  DerivativeGraph g;
  g.classes = std::move(classes);
  g.edges.reserve(acc.size());
  for (const auto& [pair, sum_count] : acc)
    g.edges.push_back({pair.first, pair.second, sum_count.first / Rational(sum_count.second)});
  return g;
}

/// Left-to-right fold of derivative_graph_of over a chain of hyperedge
/// families. Every family is written over the original nodes and mapped
/// through the accumulated quotient before use; hyperedges whose members
/// all collapse into one class degenerate to singletons and are kept. The
/// returned classes hold original node ids.
inline DerivativeGraph mixed_derivative(const SimpleGraph& graph,
                                        const std::vector<std::vector<Hyperedge>>& chain,
                                        CountingMode mode = CountingMode::with_multiplicity) {
  if (chain.empty()) throw std::invalid_argument("mixed_derivative: empty chain");
  const std::size_t n_original = graph.n_nodes;
  for (const auto& family : chain)
    for (const auto& e : family)
      for (NodeId m : e.members)
        if (m >= n_original)
          throw std::invalid_argument("mixed_derivative: family member " + std::to_string(m) +
                                      " unknown");

  // current quotient state: class index per original node, current graph,
  // current class membership (original ids), current class labels
  std::vector<std::uint32_t> class_of(n_original);
  for (std::size_t i = 0; i < n_original; ++i) class_of[i] = static_cast<std::uint32_t>(i);
  SimpleGraph current = graph;
  current.canonicalize();
  std::vector<NodeClass> current_classes;  // only valid after first step

  DerivativeGraph result;
  for (std::size_t step = 0; step < chain.size(); ++step) {
    std::vector<Hyperedge> mapped;
    mapped.reserve(chain[step].size());
    for (const auto& e : chain[step]) {
      Hyperedge me;
      me.multiplicity = e.multiplicity;
      for (NodeId m : e.members) me.members.push_back(class_of[m]);
      mapped.push_back(std::move(me));
    }
    std::vector<std::string> labels;
    if (step == 0) {
      // first step runs over the original nodes; later steps over classes
      labels.resize(0);
    } else {
      labels.reserve(current_classes.size());
      for (const auto& c : current_classes) labels.push_back(c.label);
    }
    Hypergraph family_h = Hypergraph::from_dense(current.n_nodes, std::move(mapped), labels);
    Hyperstructure s{current, std::move(family_h)};
    DerivativeGraph d = derivative_graph_of(s, mode);

    // flatten class membership back to original node ids
    std::vector<NodeClass> flattened(d.classes.size());
    for (std::size_t ci = 0; ci < d.classes.size(); ++ci) {
      NodeClass& fc = flattened[ci];
      for (NodeId member_class : d.classes[ci].members) {
        if (step == 0)
          fc.members.push_back(member_class);
        else
          fc.members.insert(fc.members.end(), current_classes[member_class].members.begin(),
                            current_classes[member_class].members.end());
      }
      std::sort(fc.members.begin(), fc.members.end());
      fc.representative = fc.members.front();
      for (std::size_t k = 0; k < fc.members.size(); ++k) {
        if (k) fc.label += '+';
        fc.label += std::to_string(fc.members[k]);
      }
    }
    // update quotient map: original node -> new class index
    std::vector<std::uint32_t> next_class_of(n_original);
    for (std::size_t ci = 0; ci < flattened.size(); ++ci)
      for (NodeId orig : flattened[ci].members) next_class_of[orig] = static_cast<std::uint32_t>(ci);
    class_of = std::move(next_class_of);
    current_classes = flattened;

    SimpleGraph next;
    next.n_nodes = d.classes.size();
    for (const auto& e : d.edges) next.add_edge(e.a, e.b, e.weight);
    next.canonicalize();
    current = std::move(next);

    result.classes = std::move(flattened);
    result.edges = std::move(d.edges);
  }
  return result;
}

/// Node sets of the simple cycles of length 3..max_len, duplicates folded
/// into multiplicity. truncated is set when cycles of the maximal length
/// were found, since longer ones may have been cut off.
struct CycleFamily {
  std::vector<Hyperedge> hyperedges;
  bool truncated = false;
};

inline CycleFamily cycle_hyperedges(const SimpleGraph& g, std::size_t max_len = 8) {
  if (max_len < 3) throw std::invalid_argument("cycle_hyperedges: max_len must be >= 3");
  std::vector<std::vector<NodeId>> adj(g.n_nodes);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::map<std::vector<NodeId>, std::uint64_t> fold;
  bool hit_max = false;
  std::vector<NodeId> path;
  std::vector<bool> on_path(g.n_nodes, false);

  // Each cycle is enumerated once: rooted at its smallest node, walking only
  // nodes above the root, closing with second vertex below last vertex.
  auto dfs = [&](auto&& self, NodeId root, NodeId u) -> void {
    for (NodeId w : adj[u]) {
      if (w == root && path.size() >= 3 && path[1] < path.back()) {
        std::vector<NodeId> nodes(path);
        std::sort(nodes.begin(), nodes.end());
        fold[std::move(nodes)] += 1;
        if (path.size() == max_len) hit_max = true;
        continue;
      }
      if (w <= root || on_path[w] || path.size() >= max_len) continue;
      path.push_back(w);
      on_path[w] = true;
      self(self, root, w);
      on_path[w] = false;
      path.pop_back();
    }
  };
  for (NodeId root = 0; root < g.n_nodes; ++root) {
    path.assign(1, root);
    on_path[root] = true;
    dfs(dfs, root, root);
    on_path[root] = false;
  }

  CycleFamily fam;
  fam.truncated = hit_max;
  fam.hyperedges.reserve(fold.size());
  for (auto& [members, mult] : fold) fam.hyperedges.push_back({members, mult});
  return fam;
}

}  // namespace hyperderiv
