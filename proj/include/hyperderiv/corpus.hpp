#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperderiv/hypergraph.hpp"

namespace hyperderiv {

/// Pluggable lexical-layer decision: either a stoplist (keep everything not
/// listed) or an allowlist (keep only listed words), applied to normalized
/// tokens.
struct LexiconConfig {
  enum class Mode { stoplist, allowlist };

  Mode mode = Mode::stoplist;
  std::set<std::string> words;
  bool case_fold = true;
  bool strip_punctuation = true;
};

struct SegmentationConfig {
  bool split_on_question = false;
  bool split_on_exclamation = false;
};

/// Splits text into sentences on terminator characters (period by default),
/// dropping empty segments. A trailing unterminated segment counts as a
/// sentence.
inline std::vector<std::string> segment_sentences(const std::string& text,
                                                  const SegmentationConfig& cfg = {}) {
  auto is_terminator = [&](char c) {
    return c == '.' || (cfg.split_on_question && c == '?') ||
           (cfg.split_on_exclamation && c == '!');
  };
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    std::size_t b = current.find_first_not_of(" \t\r\n");
    if (b != std::string::npos) {
      std::size_t e = current.find_last_not_of(" \t\r\n");
      out.push_back(current.substr(b, e - b + 1));
    }
    current.clear();
  };
  for (char c : text) {
    if (is_terminator(c))
      flush();
    else
      current.push_back(c);
  }
  flush();
  return out;
}

/// Whitespace tokenization with edge punctuation stripped and optional
/// case folding; intra-word hyphens survive.
inline std::vector<std::string> tokenize(const std::string& sentence, const LexiconConfig& cfg = {}) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[j]))) ++j;
    if (j > i) {
      std::string tok = sentence.substr(i, j - i);
      if (cfg.strip_punctuation) {
        std::size_t b = 0, e = tok.size();
        while (b < e && std::ispunct(static_cast<unsigned char>(tok[b]))) ++b;
        while (e > b && std::ispunct(static_cast<unsigned char>(tok[e - 1]))) --e;
        tok = tok.substr(b, e - b);
      }
      if (cfg.case_fold)
        for (char& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (!tok.empty()) out.push_back(std::move(tok));
    }
    i = j;
  }
  return out;
}

/// Applies the lexicon decision and deduplicates; the result is the
/// sentence's lexical word set, sorted.
inline std::vector<std::string> lexical_filter(const std::vector<std::string>& tokens,
                                               const LexiconConfig& lexicon) {
  if (lexicon.mode == LexiconConfig::Mode::allowlist && lexicon.words.empty())
    throw std::invalid_argument("lexical_filter: allowlist lexicon is empty");
  std::set<std::string> kept;
  for (const auto& t : tokens) {
    bool listed = lexicon.words.count(t) > 0;
    if (lexicon.mode == LexiconConfig::Mode::stoplist ? !listed : listed) kept.insert(t);
  }
  return {kept.begin(), kept.end()};
}

/// One segmented sentence with its lexical word set. Sentences whose set is
/// empty stay in the corpus but never contribute hyperedges.
struct Sentence {
  std::uint32_t doc = 0;
  std::uint32_t paragraph = 0;  // index within the document
  std::uint32_t index = 0;      // index within the paragraph
  std::vector<NodeId> lexical;  // sorted distinct word ids
  std::uint32_t raw_tokens = 0;

  bool included() const { return !lexical.empty(); }
};

struct DocumentInfo {
  std::string id;
  std::uint32_t paragraph_count = 0;
};

/// Parsed corpus: document/paragraph/sentence structure over an
/// alphabetically ordered vocabulary of lexical words. Immutable once built.
struct Corpus {
  std::vector<DocumentInfo> documents;
  std::vector<Sentence> sentences;  // document order
  std::vector<std::string> vocabulary;
  std::vector<std::uint64_t> word_sentence_count;  // included sentences containing the word

  NodeId word_id(const std::string& w) const {
    auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), w);
    if (it == vocabulary.end() || *it != w) throw std::invalid_argument("unknown word: " + w);
    return static_cast<NodeId>(it - vocabulary.begin());
  }
};

/// Parses raw documents (id, text) into a Corpus. Blank lines separate
/// paragraphs. The vocabulary is the sorted set of lexical words across all
/// sentences, so ids do not depend on document order.
inline Corpus build_corpus(const std::vector<std::pair<std::string, std::string>>& docs,
                           const LexiconConfig& lexicon, const SegmentationConfig& seg = {}) {
  struct RawSentence {
    std::uint32_t doc, paragraph, index;
    std::vector<std::string> lexical;
    std::uint32_t raw_tokens;
  };
  std::vector<RawSentence> raw;
  Corpus corpus;

  for (std::uint32_t d = 0; d < docs.size(); ++d) {
    // paragraphs = blocks separated by blank lines
    std::vector<std::string> paragraphs;
    std::string block;
    std::size_t pos = 0;
    const std::string& text = docs[d].second;
    auto flush_block = [&] {
      if (block.find_first_not_of(" \t\r\n") != std::string::npos) paragraphs.push_back(block);
      block.clear();
    };
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        flush_block();
      else
        block += line + "\n";
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }
    flush_block();

    for (std::uint32_t p = 0; p < paragraphs.size(); ++p) {
      auto sents = segment_sentences(paragraphs[p], seg);
      for (std::uint32_t s = 0; s < sents.size(); ++s) {
        auto tokens = tokenize(sents[s], lexicon);
        raw.push_back({d, p, s, lexical_filter(tokens, lexicon),
                       static_cast<std::uint32_t>(tokens.size())});
      }
    }
    corpus.documents.push_back({docs[d].first, static_cast<std::uint32_t>(paragraphs.size())});
  }

  std::set<std::string> vocab;
  bool any_included = false;
  for (const auto& r : raw) {
    vocab.insert(r.lexical.begin(), r.lexical.end());
    any_included |= !r.lexical.empty();
  }
  if (!any_included) throw std::invalid_argument("build_corpus: no sentence has lexical words");

  corpus.vocabulary.assign(vocab.begin(), vocab.end());
  corpus.word_sentence_count.assign(corpus.vocabulary.size(), 0);
  corpus.sentences.reserve(raw.size());
  for (const auto& r : raw) {
    Sentence s;
    s.doc = r.doc;
    s.paragraph = r.paragraph;
    s.index = r.index;
    s.raw_tokens = r.raw_tokens;
    for (const auto& w : r.lexical) s.lexical.push_back(corpus.word_id(w));
    std::sort(s.lexical.begin(), s.lexical.end());
    for (NodeId id : s.lexical) ++corpus.word_sentence_count[id];
    corpus.sentences.push_back(std::move(s));
  }
  return corpus;
}

enum class Granularity {
  sentence_over_words,
  paragraph_over_words,
  document_over_words,
  paragraph_over_sentences
};

inline const char* to_string(Granularity g) {
  switch (g) {
    case Granularity::sentence_over_words: return "sentence_over_words";
    case Granularity::paragraph_over_words: return "paragraph_over_words";
    case Granularity::document_over_words: return "document_over_words";
    case Granularity::paragraph_over_sentences: return "paragraph_over_sentences";
  }
  return "?";
}

inline Granularity granularity_from_string(const std::string& s) {
  if (s == "sentence_over_words" || s == "sentence") return Granularity::sentence_over_words;
  if (s == "paragraph_over_words" || s == "paragraph") return Granularity::paragraph_over_words;
  if (s == "document_over_words" || s == "document") return Granularity::document_over_words;
  if (s == "paragraph_over_sentences") return Granularity::paragraph_over_sentences;
  throw std::invalid_argument("unknown granularity: " + s);
}

/// Builds the corpus hypergraph at the requested granularity. Units without
/// lexical content contribute no hyperedge; duplicate units fold into
/// multiplicity.
inline Hypergraph corpus_hypergraph(const Corpus& c, Granularity g) {
  if (g == Granularity::paragraph_over_sentences) {
    // nodes = distinct included sentences in canonical (lexical-set) order
    std::map<std::vector<NodeId>, NodeId> sentence_id;
    for (const auto& s : c.sentences)
      if (s.included()) sentence_id.emplace(s.lexical, 0);
    NodeId next = 0;
    std::vector<std::string> labels;
    for (auto& [lex, id] : sentence_id) {
      id = next++;
      labels.push_back("s" + std::to_string(id + 1));
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<NodeId>> per_paragraph;
    for (const auto& s : c.sentences)
      if (s.included()) per_paragraph[{s.doc, s.paragraph}].insert(sentence_id.at(s.lexical));
    std::vector<Hyperedge> edges;
    for (const auto& [key, set] : per_paragraph)
      edges.push_back({{set.begin(), set.end()}, 1});
    return Hypergraph::from_dense(sentence_id.size(), std::move(edges), std::move(labels));
  }

  std::vector<Hyperedge> edges;
  if (g == Granularity::sentence_over_words) {
    for (const auto& s : c.sentences)
      if (s.included()) edges.push_back({s.lexical, 1});
  } else {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<NodeId>> units;
    for (const auto& s : c.sentences) {
      if (!s.included()) continue;
      std::uint32_t unit = g == Granularity::paragraph_over_words ? s.paragraph : 0;
      units[{s.doc, unit}].insert(s.lexical.begin(), s.lexical.end());
    }
    for (const auto& [key, set] : units) edges.push_back({{set.begin(), set.end()}, 1});
  }
  // every vocabulary word comes from an included sentence, so coverage holds
  // at every word-node granularity
  return Hypergraph::from_dense(c.vocabulary.size(), std::move(edges),
                                std::vector<std::string>(c.vocabulary));
}

struct CorpusStats {
  double mean_lexical_words_per_sentence = 0;
  double mean_sentences_per_document = 0;
  std::size_t vocabulary_size = 0;
  std::uint64_t included_sentence_count = 0;
  std::uint64_t total_sentence_count = 0;
  std::uint64_t token_count = 0;
};

inline CorpusStats corpus_stats(const Corpus& c) {
  CorpusStats st;
  st.vocabulary_size = c.vocabulary.size();
  std::uint64_t lexical_total = 0;
  for (const auto& s : c.sentences) {
    st.token_count += s.raw_tokens;
    ++st.total_sentence_count;
    if (s.included()) {
      ++st.included_sentence_count;
      lexical_total += s.lexical.size();
    }
  }
  if (st.included_sentence_count)
    st.mean_lexical_words_per_sentence =
        static_cast<double>(lexical_total) / static_cast<double>(st.included_sentence_count);
  if (!c.documents.empty())
    st.mean_sentences_per_document =
        static_cast<double>(st.included_sentence_count) / static_cast<double>(c.documents.size());
  return st;
}

}  // namespace hyperderiv
