// Copyright 2026 The Maya Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maya/generation/reference_providers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "maya/core/text.hpp"
#include "maya/errors.hpp"

namespace maya {

namespace {

const std::set<std::string, std::less<>> kDeterminers = {
    "the", "a", "an", "this", "that", "these", "those", "my", "your", "his", "her",
    "its", "our", "their", "some", "any", "every", "each", "no", "another"};
const std::set<std::string, std::less<>> kPronouns = {
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "us", "them", "everyone",
    "nobody", "something", "nothing", "everything", "anyone", "someone"};
const std::set<std::string, std::less<>> kPrepositions = {
    "in", "on", "at", "of", "to", "from", "with", "by", "for", "about", "over", "under",
    "into", "through", "without", "despite", "after", "before", "during", "like", "than"};
const std::set<std::string, std::less<>> kConjunctions = {"and", "or", "but", "yet", "so",
                                                          "because", "while", "although",
                                                          "if", "though"};
const std::set<std::string, std::less<>> kAdverbs = {
    "very", "really", "quite", "too", "not", "never", "always", "just", "rather", "so",
    "extremely", "truly", "often", "still", "almost", "also", "even", "ever", "here",
    "there", "now", "then", "well", "much", "more", "most", "less", "n't"};
const std::set<std::string, std::less<>> kVerbs = {
    "is", "are", "was", "were", "be", "been", "being", "am", "has", "have", "had", "do",
    "does", "did", "sat", "sit", "sits", "ran", "run", "runs", "walk", "walks", "love",
    "loves", "loved", "hate", "hates", "hated", "like", "likes", "liked", "make", "makes",
    "made", "see", "saw", "seen", "feel", "feels", "felt", "seem", "seems", "seemed", "go",
    "goes", "went", "get", "gets", "got", "give", "gives", "gave", "take", "takes", "took",
    "know", "knew", "think", "thinks", "thought", "watch", "watches", "enjoy", "enjoys",
    "recommend", "play", "plays", "tell", "tells", "told", "fails", "fail", "works", "work",
    "becomes", "become", "remains", "stays", "can", "could", "will", "would", "should",
    "must", "may", "might", "'s", "eat", "eats", "ate", "says", "said", "wins", "won",
    "lost", "loses", "rises", "fell", "falls"};
const std::set<std::string, std::less<>> kAdjectives = {
    "good", "bad", "great", "fine", "terrible", "awful", "excellent", "poor", "boring",
    "dull", "funny", "amusing", "brilliant", "wonderful", "horrible", "nice", "beautiful",
    "ugly", "happy", "sad", "new", "old", "big", "small", "long", "short", "best", "worst",
    "better", "worse", "interesting", "fun", "smart", "stupid", "clever", "slow", "fast",
    "strong", "weak", "superb", "decent", "mediocre", "lovely", "warm", "cold", "dark",
    "bright", "little", "entire", "whole", "real", "true", "false", "first", "last",
    "charming", "moving", "tedious", "fresh", "stale", "red", "black", "white", "young",
    "high", "low", "hard", "easy", "sweet", "bitter", "cheap", "rich"};

bool is_punct(std::string_view w) {
  return !w.empty() && std::none_of(w.begin(), w.end(), [](unsigned char c) {
    return std::isalnum(c) != 0;
  });
}

bool is_number(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) {
    return std::isdigit(c) != 0 || c == '.' || c == ',';
  }) && std::isdigit(static_cast<unsigned char>(w.front())) != 0;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() > suffix.size() + 2 && w.substr(w.size() - suffix.size()) == suffix;
}

struct Node {
  std::size_t start;
  std::size_t end;
  std::string tag;
  std::vector<Node> children;
};

class Chunker {
 public:
  Chunker(std::span<const std::string> tokens) {
    for (const auto& t : tokens) tags_.push_back(lexicon_tag(t));
  }

  Node parse() {
    Node root{0, tags_.size(), "S", {}};
    std::size_t i = 0;
    while (i < tags_.size()) {
      if (auto n = np(i)) {
        i = n->end;
        root.children.push_back(std::move(*n));
      } else if (auto v = vp(i)) {
        i = v->end;
        root.children.push_back(std::move(*v));
      } else if (auto p = pp(i)) {
        i = p->end;
        root.children.push_back(std::move(*p));
      } else {
        root.children.push_back(leaf(i));
        ++i;
      }
    }
    return root;
  }

 private:
  std::string_view tag(std::size_t i) const {
    return i < tags_.size() ? std::string_view(tags_[i]) : std::string_view();
  }
  Node leaf(std::size_t i) const { return Node{i, i + 1, tags_[i], {}}; }
  void add_leaves(Node& n, std::size_t from, std::size_t to) const {
    for (std::size_t i = from; i < to; ++i) n.children.push_back(leaf(i));
  }

  // (ADV)* ADJ+ run starting at i, or i when none.
  std::size_t adjective_run(std::size_t i) const {
    std::size_t m = i;
    while (tag(m) == "ADV") ++m;
    if (tag(m) != "ADJ") return i;
    while (tag(m) == "ADJ" || (tag(m) == "ADV" && (tag(m + 1) == "ADJ" || tag(m + 1) == "ADV"))) {
      ++m;
    }
    return m;
  }

  std::optional<Node> np(std::size_t i) const {
    if (tag(i) == "PRON") {
      Node n{i, i + 1, "NP", {}};
      add_leaves(n, i, i + 1);
      return n;
    }
    std::size_t k = i;
    while (tag(k) == "DET" || tag(k) == "NUM") ++k;
    const std::size_t m = adjective_run(k);
    std::size_t p = m;
    while (tag(p) == "NOUN") ++p;
    if (p == i) return std::nullopt;
    if (p == m && k == i) {
      Node a{i, m, "ADJP", {}};
      add_leaves(a, i, m);
      return a;
    }
    Node n{i, p, "NP", {}};
    add_leaves(n, i, k);
    if (m > k && m - k >= 2 && p > m) {
      Node a{k, m, "ADJP", {}};
      add_leaves(a, k, m);
      n.children.push_back(std::move(a));
    } else {
      add_leaves(n, k, m);
    }
    add_leaves(n, m, p);
    return n;
  }

  std::optional<Node> pp(std::size_t i) const {
    if (tag(i) != "PREP") return std::nullopt;
    auto object = np(i + 1);
    if (!object) return std::nullopt;
    Node n{i, object->end, "PP", {}};
    add_leaves(n, i, i + 1);
    n.children.push_back(std::move(*object));
    return n;
  }

  std::optional<Node> vp(std::size_t i) const {
    std::size_t k = i;
    while (tag(k) == "ADV") ++k;
    if (tag(k) != "VERB") return std::nullopt;
    Node n{i, k, "VP", {}};
    add_leaves(n, i, k);
    while (tag(k) == "VERB" || (tag(k) == "ADV" && tag(k + 1) == "VERB")) {
      n.children.push_back(leaf(k));
      ++k;
    }
    for (;;) {
      if (auto obj = np(k)) {
        k = obj->end;
        n.children.push_back(std::move(*obj));
      } else if (auto prep = pp(k)) {
        k = prep->end;
        n.children.push_back(std::move(*prep));
      } else if (tag(k) == "ADV") {
        n.children.push_back(leaf(k));
        ++k;
      } else {
        break;
      }
    }
    n.end = k;
    return n;
  }

  std::vector<std::string> tags_;
};

void flatten(const Node& n, std::vector<ConstituentSpan>& out) {
  out.push_back(ConstituentSpan{n.start, n.end, n.tag});
  for (const auto& c : n.children) flatten(c, out);
}

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool starts_with_vowel(std::string_view w) {
  if (w.empty()) return false;
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(w.front())));
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

}  // namespace

std::uint64_t stable_hash(std::string_view s) {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string lexicon_tag(std::string_view word) {
  const std::string w = to_lower(word);
  if (w == kMaskToken || w == to_lower(kMaskToken)) return "NOUN";
  if (is_punct(w)) return "PUNCT";
  if (is_number(w)) return "NUM";
  if (kDeterminers.contains(w)) return "DET";
  if (kPronouns.contains(w)) return "PRON";
  if (kConjunctions.contains(w) && w != "so") return "CONJ";
  if (kVerbs.contains(w)) return "VERB";
  if (kAdjectives.contains(w)) return "ADJ";
  if (kPrepositions.contains(w)) return "PREP";
  if (kAdverbs.contains(w)) return "ADV";
  if (ends_with(w, "ly")) return "ADV";
  if (ends_with(w, "ing") || ends_with(w, "ed")) return "VERB";
  if (ends_with(w, "ous") || ends_with(w, "ful") || ends_with(w, "ive") ||
      ends_with(w, "able") || ends_with(w, "less")) {
    return "ADJ";
  }
  return "NOUN";
}

std::vector<ConstituentSpan> LexiconParser::parse(std::span<const std::string> tokens) const {
  if (tokens.empty()) throw ParseError("lexicon parser: empty sentence");
  std::vector<ConstituentSpan> out;
  flatten(Chunker(tokens).parse(), out);
  return out;
}

SynonymParaphraser::SynonymParaphraser()
    : SynonymParaphraser(
          "synonym",
          {{"movie", {"film", "picture"}},
           {"film", {"movie", "picture"}},
           {"good", {"fine", "decent", "nice"}},
           {"great", {"excellent", "superb", "wonderful"}},
           {"bad", {"poor", "lousy"}},
           {"terrible", {"dreadful", "awful"}},
           {"awful", {"dreadful", "terrible"}},
           {"boring", {"dull", "tedious"}},
           {"funny", {"amusing", "humorous"}},
           {"very", {"really", "extremely"}},
           {"really", {"truly", "very"}},
           {"story", {"plot", "tale"}},
           {"actor", {"performer"}},
           {"actors", {"performers", "cast"}},
           {"beautiful", {"lovely", "gorgeous"}},
           {"smart", {"clever", "intelligent"}},
           {"slow", {"sluggish", "plodding"}},
           {"love", {"adore", "enjoy"}},
           {"hate", {"dislike", "loathe"}},
           {"interesting", {"intriguing", "engaging"}},
           {"fun", {"enjoyable", "entertaining"}},
           {"happy", {"glad", "cheerful"}},
           {"sad", {"unhappy", "gloomy"}},
           {"big", {"large", "huge"}},
           {"small", {"little", "tiny"}}}) {}

SynonymParaphraser::SynonymParaphraser(std::string name,
                                       std::map<std::string, std::vector<std::string>> synonyms,
                                       std::size_t max_rewrites)
    : name_(std::move(name)), synonyms_(std::move(synonyms)), max_rewrites_(max_rewrites) {}

std::vector<std::string> SynonymParaphraser::rewrite(std::span<const std::string> sentence_tokens,
                                                     const ConstituentSpan& span) const {
  if (span.end_token > sentence_tokens.size() || span.start_token >= span.end_token) {
    throw ParaphraseError("synonym paraphraser: span outside sentence");
  }
  std::vector<std::string> out;
  const auto words = sentence_tokens.subspan(span.start_token, span.length());
  for (std::size_t i = 0; i < words.size() && out.size() < max_rewrites_; ++i) {
    auto it = synonyms_.find(to_lower(words[i]));
    if (it == synonyms_.end()) continue;
    for (const auto& syn : it->second) {
      if (out.size() >= max_rewrites_) break;
      std::vector<std::string> copy(words.begin(), words.end());
      copy[i] = syn;
      out.push_back(detokenize(copy));
    }
  }
  return out;
}

ScriptedParaphraser::ScriptedParaphraser(std::string name,
                                         std::map<std::string, std::vector<std::string>> table)
    : name_(std::move(name)) {
  for (auto& [k, v] : table) table_[to_lower(normalize_text(k))] = std::move(v);
}

std::vector<std::string> ScriptedParaphraser::rewrite(std::span<const std::string> sentence_tokens,
                                                      const ConstituentSpan& span) const {
  if (span.end_token > sentence_tokens.size() || span.start_token >= span.end_token) {
    throw ParaphraseError("scripted paraphraser: span outside sentence");
  }
  const auto key =
      to_lower(detokenize(sentence_tokens.subspan(span.start_token, span.length())));
  auto it = table_.find(key);
  return it == table_.end() ? std::vector<std::string>{} : it->second;
}

FrequencyMaskedLm::FrequencyMaskedLm(std::span<const std::string> corpus, double bigram_weight)
    : bigram_weight_(bigram_weight) {
  for (const auto& text : corpus) {
    auto tokens = tokenize(text);
    for (auto& t : tokens) t = to_lower(t);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (is_punct(tokens[i]) || tokens[i] == to_lower(kMaskToken)) continue;
      unigram_[tokens[i]] += 1.0;
      if (i > 0) bigram_[{tokens[i - 1], tokens[i]}] += 1.0;
    }
  }
}

std::shared_ptr<FrequencyMaskedLm> FrequencyMaskedLm::from_table(
    std::map<std::string, double> weights) {
  auto lm = std::shared_ptr<FrequencyMaskedLm>(new FrequencyMaskedLm());
  for (auto& [w, p] : weights) {
    if (p < 0.0) throw InvalidArgument("masked LM table: negative weight");
    lm->unigram_[w] = p;
  }
  return lm;
}

std::vector<Substitute> FrequencyMaskedLm::fill(std::span<const std::string> tokens,
                                                std::size_t position, std::size_t top_n) const {
  if (position >= tokens.size()) throw SubstituteError("mask position outside sentence");
  const std::string left = position > 0 ? to_lower(tokens[position - 1]) : std::string();
  const std::string right = position + 1 < tokens.size() ? to_lower(tokens[position + 1]) : "";
  std::vector<Substitute> scored;
  scored.reserve(unigram_.size());
  double z = 0.0;
  double total_uni = 0.0;
  for (const auto& [w, c] : unigram_) total_uni += c;
  if (total_uni <= 0.0) return {};
  for (const auto& [w, c] : unigram_) {
    double s = c / total_uni;
    if (bigram_weight_ > 0.0) {
      double b = 0.0;
      if (!left.empty()) {
        auto it = bigram_.find({left, w});
        if (it != bigram_.end()) b += it->second;
      }
      if (!right.empty()) {
        auto it = bigram_.find({w, right});
        if (it != bigram_.end()) b += it->second;
      }
      s += bigram_weight_ * b / total_uni;
    }
    z += s;
    scored.push_back({w, s});
  }
  for (auto& sub : scored) sub.probability /= z;
  // std::map iteration is lexicographic, so a stable sort keeps that order
  // among equal probabilities.
  std::stable_sort(scored.begin(), scored.end(), [](const Substitute& a, const Substitute& b) {
    return a.probability > b.probability;
  });
  if (scored.size() > top_n) scored.resize(top_n);
  return scored;
}

HashedBagEncoder::HashedBagEncoder(std::size_t dim, std::uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim_ == 0) throw InvalidArgument("encoder dimension must be positive");
}

std::string HashedBagEncoder::name() const {
  return "hashed-bag-" + std::to_string(dim_) + "-" + std::to_string(seed_);
}

Embedding HashedBagEncoder::token_vector(std::string_view token) const {
  Embedding v(dim_);
  std::uint64_t state = stable_hash(to_lower(token)) ^ mix64(seed_);
  for (std::size_t i = 0; i < dim_; ++i) {
    state = mix64(state + i);
    v[i] = static_cast<double>(state >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  return v;
}

Embedding HashedBagEncoder::encode(std::string_view text) const {
  Embedding sum(dim_, 0.0);
  const auto tokens = tokenize(text);
  for (const auto& t : tokens) {
    const auto v = token_vector(t);
    for (std::size_t i = 0; i < dim_; ++i) sum[i] += v[i];
  }
  if (!tokens.empty()) {
    for (auto& x : sum) x /= static_cast<double>(tokens.size());
  }
  return sum;
}

int RuleGrammarChecker::count_errors(std::string_view text) const {
  auto tokens = tokenize(text);
  for (auto& t : tokens) t = to_lower(t);
  int errors = 0;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const auto& a = tokens[i];
    const auto& b = tokens[i + 1];
    if (a == b && !is_punct(a) && a != to_lower(kMaskToken)) ++errors;
    if (b != to_lower(kMaskToken) && !is_punct(b)) {
      if (a == "a" && starts_with_vowel(b)) ++errors;
      if (a == "an" && !starts_with_vowel(b)) ++errors;
    }
    if (kDeterminers.contains(a) && kDeterminers.contains(b)) ++errors;
  }
  return errors;
}

DictionaryLexicon::DictionaryLexicon()
    : DictionaryLexicon({{"good", "bad"},        {"great", "terrible"}, {"love", "hate"},
                         {"best", "worst"},      {"happy", "sad"},      {"better", "worse"},
                         {"beautiful", "ugly"},  {"smart", "stupid"},   {"fast", "slow"},
                         {"strong", "weak"},     {"interesting", "boring"},
                         {"excellent", "poor"},  {"warm", "cold"},      {"bright", "dark"},
                         {"fresh", "stale"},     {"sweet", "bitter"},   {"easy", "hard"},
                         {"rich", "poor"},       {"like", "dislike"},   {"win", "lose"},
                         {"success", "failure"}, {"positive", "negative"}}) {}

DictionaryLexicon::DictionaryLexicon(const std::vector<std::pair<std::string, std::string>>& pairs) {
  for (const auto& [a, b] : pairs) {
    antonyms_[to_lower(a)].push_back(to_lower(b));
    antonyms_[to_lower(b)].push_back(to_lower(a));
  }
}

std::vector<std::string> DictionaryLexicon::antonyms(std::string_view word) const {
  auto it = antonyms_.find(to_lower(word));
  return it == antonyms_.end() ? std::vector<std::string>{} : it->second;
}

ProviderSuite make_reference_suite(std::span<const std::string> corpus) {
  ProviderSuite suite;
  suite.parser = std::make_shared<LexiconParser>();
  suite.paraphrasers.push_back(std::make_shared<SynonymParaphraser>());
  suite.masked_lm = std::make_shared<FrequencyMaskedLm>(corpus);
  suite.encoder = std::make_shared<HashedBagEncoder>();
  suite.grammar = std::make_shared<RuleGrammarChecker>();
  suite.antonyms = std::make_shared<DictionaryLexicon>();
  return suite;
}

}  // namespace maya
