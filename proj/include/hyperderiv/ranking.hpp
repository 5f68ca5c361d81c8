#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperderiv/corpus.hpp"
#include "hyperderiv/derivative.hpp"
#include "hyperderiv/hypergraph.hpp"
#include "hyperderiv/pagerank.hpp"

namespace hyperderiv {

struct RankedItem {
  std::string label;
  double score;
};

/// Scores in descending order, ties broken lexicographically by label.
struct Ranking {
  std::vector<RankedItem> items;
  double damping = 0;
};

struct RankingOptions {
  std::optional<double> damping;  // overrides the derived damping factor
  double tol = 1e-10;
  std::size_t max_iter = 10000;
  CountingMode mode = CountingMode::with_multiplicity;
  enum class SentenceScoreSplit { uniform, frequency } split = SentenceScoreSplit::uniform;
};

namespace detail {

inline void sort_ranking(Ranking& r) {
  std::stable_sort(r.items.begin(), r.items.end(), [](const RankedItem& a, const RankedItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.label < b.label;
  });
}

}  // namespace detail

/// Mean number of word classes per included sentence after collapsing
/// words with identical sentence membership.
inline double post_collapse_mean_words_per_sentence(const Corpus& c,
                                                    CountingMode mode = CountingMode::with_multiplicity) {
  Hypergraph h = corpus_hypergraph(c, Granularity::sentence_over_words);
  DerivativeGraph d = derivative_graph(h, mode);
  std::vector<std::uint32_t> class_of(h.n_nodes());
  for (std::size_t ci = 0; ci < d.classes.size(); ++ci)
    for (NodeId m : d.classes[ci].members) class_of[m] = static_cast<std::uint32_t>(ci);
  std::uint64_t total = 0, count = 0;
  for (const auto& s : c.sentences) {
    if (!s.included()) continue;
    std::set<std::uint32_t> classes;
    for (NodeId w : s.lexical) classes.insert(class_of[w]);
    total += classes.size();
    ++count;
  }
  return count ? static_cast<double>(total) / static_cast<double>(count) : 0.0;
}

/// Ranking 1: PageRank of lexical words on the unweighted two-section of
/// the sentence hypergraph. Damping comes from the mean lexical sentence
/// length, the personalization vector from relative word frequencies.
inline Ranking ranking1(const Corpus& c, const RankingOptions& opt = {}) {
  Hypergraph h = corpus_hypergraph(c, Granularity::sentence_over_words);
  SimpleGraph proj = project(h);

  DirectedGraph g(proj.n_nodes);
  for (const auto& e : proj.edges) {
    g.add_arc(e.u, e.v, 1.0);
    g.add_arc(e.v, e.u, 1.0);
  }
  double freq_total = 0;
  for (auto f : c.word_sentence_count) freq_total += static_cast<double>(f);
  std::vector<double> v(c.vocabulary.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = static_cast<double>(c.word_sentence_count[i]) / freq_total;

  double damping = opt.damping.value_or(
      damping_from_mean(corpus_stats(c).mean_lexical_words_per_sentence));
  auto pr = personalized_pagerank({std::move(g), damping, std::move(v)}, opt.tol, opt.max_iter);

  Ranking r;
  r.damping = damping;
  for (std::size_t i = 0; i < c.vocabulary.size(); ++i)
    r.items.push_back({c.vocabulary[i], pr.scores[i]});
  detail::sort_ranking(r);
  return r;
}

/// Ranking 2: PageRank over distinct sentences on the directed line-graph
/// weighting w(s1 -> s2) = |shared words| * repetitions(s2), damping from
/// the mean sentence count per document, personalization from relative
/// sentence repetition; each sentence's score is then divided among its
/// lexical words and summed per word.
inline Ranking ranking2(const Corpus& c, const RankingOptions& opt = {}) {
  // distinct sentences in canonical lexical-set order
  std::map<std::vector<NodeId>, std::uint64_t> mult;
  for (const auto& s : c.sentences)
    if (s.included()) ++mult[s.lexical];
  std::vector<const std::vector<NodeId>*> sent;
  std::vector<double> repetitions;
  for (const auto& [lex, m] : mult) {
    sent.push_back(&lex);
    repetitions.push_back(static_cast<double>(m));
  }
  const std::size_t k = sent.size();

  DirectedGraph g(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      std::vector<NodeId> shared;
      std::set_intersection(sent[i]->begin(), sent[i]->end(), sent[j]->begin(), sent[j]->end(),
                            std::back_inserter(shared));
      if (!shared.empty())
        g.add_arc(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                  static_cast<double>(shared.size()) * repetitions[j]);
    }

  double total_instances = 0;
  for (double m : repetitions) total_instances += m;
  std::vector<double> v(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = repetitions[i] / total_instances;

  double damping =
      opt.damping.value_or(damping_from_mean(corpus_stats(c).mean_sentences_per_document));
  auto pr = personalized_pagerank({std::move(g), damping, std::move(v)}, opt.tol, opt.max_iter);

  std::vector<double> word_score(c.vocabulary.size(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& lex = *sent[i];
    if (opt.split == RankingOptions::SentenceScoreSplit::uniform) {
      double share = pr.scores[i] / static_cast<double>(lex.size());
      for (NodeId w : lex) word_score[w] += share;
    } else {
      double denom = 0;
      for (NodeId w : lex) denom += static_cast<double>(c.word_sentence_count[w]);
      for (NodeId w : lex)
        word_score[w] += pr.scores[i] * static_cast<double>(c.word_sentence_count[w]) / denom;
    }
  }

  Ranking r;
  r.damping = damping;
  for (std::size_t i = 0; i < c.vocabulary.size(); ++i)
    r.items.push_back({c.vocabulary[i], word_score[i]});
  detail::sort_ranking(r);
  return r;
}

/// Ranking 3: PageRank of word classes on the homogeneity graph of the
/// sentence hypergraph, damping from the post-collapse mean sentence
/// length, personalization from summed member frequencies.
inline Ranking ranking3(const Corpus& c, const RankingOptions& opt = {}) {
  Hypergraph h = corpus_hypergraph(c, Granularity::sentence_over_words);
  HomogeneityGraph hg = homogeneity_graph(h, opt.mode);

  DirectedGraph g(hg.classes.size());
  for (const auto& e : hg.edges) {
    double w = e.weight.to_double();
    g.add_arc(e.a, e.b, w);
    g.add_arc(e.b, e.a, w);
  }
  double freq_total = 0;
  for (auto f : c.word_sentence_count) freq_total += static_cast<double>(f);
  std::vector<double> v(hg.classes.size(), 0.0);
  for (std::size_t ci = 0; ci < hg.classes.size(); ++ci) {
    double f = 0;
    for (NodeId m : hg.classes[ci].members) f += static_cast<double>(c.word_sentence_count[m]);
    v[ci] = f / freq_total;
  }

  double damping = opt.damping.value_or(
      damping_from_mean(post_collapse_mean_words_per_sentence(c, opt.mode)));
  auto pr = personalized_pagerank({std::move(g), damping, std::move(v)}, opt.tol, opt.max_iter);

  Ranking r;
  r.damping = damping;
  for (std::size_t ci = 0; ci < hg.classes.size(); ++ci)
    r.items.push_back({hg.classes[ci].label, pr.scores[ci]});
  detail::sort_ranking(r);
  return r;
}

namespace detail {

/// Dense tie-group rank of every label in a ranking (0 = best); items with
/// exactly equal scores share a group.
inline std::map<std::string, std::size_t> group_ranks(const Ranking& r) {
  std::map<std::string, std::size_t> pos;
  std::size_t group = 0;
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    if (i > 0 && r.items[i].score != r.items[i - 1].score) ++group;
    pos[r.items[i].label] = group;
  }
  return pos;
}

}  // namespace detail

/// Kendall tau-b between two rankings over the union of their top-k item
/// sets, using full-order tie-group positions restricted to that union.
/// Items absent from one ranking's universe rank after everything in it,
/// as a single trailing tie group.
inline double kendall_tau(const Ranking& a, const Ranking& b, std::size_t k) {
  if (k < 2) throw std::invalid_argument("kendall_tau: k must be >= 2");
  auto pos_a = detail::group_ranks(a);
  auto pos_b = detail::group_ranks(b);

  std::set<std::string> universe;
  for (std::size_t i = 0; i < std::min(k, a.items.size()); ++i) universe.insert(a.items[i].label);
  for (std::size_t i = 0; i < std::min(k, b.items.size()); ++i) universe.insert(b.items[i].label);

  auto position = [](const std::map<std::string, std::size_t>& pos, const std::string& label) {
    auto it = pos.find(label);
    // one past every real group: a shared trailing tie group
    return it == pos.end() ? std::numeric_limits<std::size_t>::max() : it->second;
  };

  std::vector<std::pair<std::size_t, std::size_t>> points;
  points.reserve(universe.size());
  for (const auto& label : universe) points.emplace_back(position(pos_a, label), position(pos_b, label));

  std::int64_t concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      auto [xa, ya] = points[i];
      auto [xb, yb] = points[j];
      bool tie_x = xa == xb, tie_y = ya == yb;
      if (tie_x && tie_y) continue;
      if (tie_x)
        ++ties_a;
      else if (tie_y)
        ++ties_b;
      else if ((xa < xb) == (ya < yb))
        ++concordant;
      else
        ++discordant;
    }
  double denom = std::sqrt(static_cast<double>(concordant + discordant + ties_a)) *
                 std::sqrt(static_cast<double>(concordant + discordant + ties_b));
  if (denom == 0) return 0.0;
  return static_cast<double>(concordant - discordant) / denom;
}

inline std::vector<std::pair<std::size_t, double>> tau_sweep(const Ranking& a, const Ranking& b,
                                                             const std::vector<std::size_t>& ks) {
  std::vector<std::pair<std::size_t, double>> out;
  out.reserve(ks.size());
  for (std::size_t k : ks) out.emplace_back(k, kendall_tau(a, b, k));
  return out;
}

}  // namespace hyperderiv
