#include "folk/extraction.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "text_util.hpp"

namespace folk {

namespace {

const std::unordered_map<std::string_view, std::string_view>& irregulars() {
  static const std::unordered_map<std::string_view, std::string_view> kTable = {
      {"mice", "mouse"}, {"geese", "goose"}, {"wolves", "wolf"},   {"oxen", "ox"},
      {"lice", "louse"}, {"calves", "calf"}, {"halves", "half"},   {"knives", "knife"},
      {"wives", "wife"}, {"teeth", "tooth"}, {"feet", "foot"},     {"men", "man"},
      {"women", "woman"}, {"children", "child"}, {"dice", "die"},
  };
  return kTable;
}

// Function words that must never be read as nouns ("does" -> "doe").
const std::unordered_set<std::string_view>& stopwords() {
  static const std::unordered_set<std::string_view> kWords = {
      "a",    "an",   "and",  "are",  "as",    "at",    "be",    "been", "but",  "by",   "did",
      "do",   "does", "for",  "from", "had",   "has",   "have",  "he",   "her",  "his",  "if",
      "in",   "is",   "it",   "its",  "no",    "not",   "of",    "on",   "or",   "she",  "so",
      "that", "the",  "their", "them", "these", "they", "this",  "those", "to",  "was",  "were",
      "with", "who",  "whom",  "whose", "which", "while", "when", "where", "then", "than", "us",
  };
  return kWords;
}

// Words allowed between alternatives inside a substitution parenthetical.
bool is_separator(std::string_view w) { return w == "or" || w == "and" || w == "a" || w == "an" || w == "the"; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Bytes E2 80 80 .. E2 81 AF are the General Punctuation block (dashes, quotes, ...).
bool general_punctuation_at(std::string_view s, std::size_t i) {
  if (i + 2 >= s.size() || static_cast<unsigned char>(s[i]) != 0xE2) return false;
  auto b1 = static_cast<unsigned char>(s[i + 1]);
  return b1 == 0x80 || b1 == 0x81;
}

bool word_byte(std::string_view s, std::size_t i) {
  auto c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) return detail::is_alnum(static_cast<char>(c));
  return !general_punctuation_at(s, i);
}

// Length of an apostrophe (ASCII or U+2019) at i, 0 if none.
std::size_t apostrophe_at(std::string_view s, std::size_t i) {
  if (s[i] == '\'') return 1;
  if (s.substr(i, 3) == "\xE2\x80\x99") return 3;
  return 0;
}

bool has_digit(std::string_view s) { return std::any_of(s.begin(), s.end(), detail::is_digit); }

}  // namespace

std::string singularize(std::string_view word) {
  std::string w = detail::to_lower(word);
  if (auto it = irregulars().find(w); it != irregulars().end()) return std::string(it->second);
  if (w.size() <= 3) return w;
  if (w.size() > 4 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view suffix : {"xes", "ches", "shes", "sses", "zzes"}) {
    if (ends_with(w, suffix)) return w.substr(0, w.size() - 2);
  }
  if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") && !ends_with(w, "is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::vector<int> groups;
  int next_group = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '(') {
      groups.push_back(next_group++);
      ++i;
      continue;
    }
    if (c == ')') {
      if (!groups.empty()) groups.pop_back();
      ++i;
      continue;
    }
    if (!word_byte(text, i)) {
      i += general_punctuation_at(text, i) ? 3 : 1;
      continue;
    }
    std::string word;
    while (i < text.size()) {
      if (word_byte(text, i)) {
        word.push_back(text[i++]);
        continue;
      }
      std::size_t apo = apostrophe_at(text, i);
      if (apo > 0 && i + apo < text.size() && word_byte(text, i + apo)) {
        word.push_back('\'');
        i += apo;
        continue;
      }
      break;
    }
    word = detail::to_lower(word);
    if (ends_with(word, "'s")) word.resize(word.size() - 2);
    if (word.empty()) continue;
    Token t;
    t.lemma = has_digit(word) ? word : singularize(word);
    t.text = std::move(word);
    t.depth = static_cast<int>(groups.size());
    t.group = groups.empty() ? -1 : groups.back();
    tokens.push_back(std::move(t));
  }
  return tokens;
}

NamePair make_pair_sorted(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::string resolve_token(const Token& token, const Lexicon& lex) {
  if (stopwords().count(token.text) || has_digit(token.text)) return {};
  if (lex.is_animal(token.lemma)) return lex.canonicalize(token.lemma);
  if (token.text != token.lemma && lex.is_animal(token.text)) return lex.canonicalize(token.text);
  return {};
}

std::vector<NamePair> detect_substitutions(const std::vector<Token>& tokens, const MentionResolver& resolve) {
  std::vector<NamePair> pairs;
  const std::size_t n = tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (tokens[i].depth != 0) continue;
    std::string outer = resolve(tokens[i]);
    if (outer.empty()) continue;
    std::size_t j = i + 1;
    if (j < n && tokens[j].depth == 0) ++j;
    if (j >= n || tokens[j].depth != 1) continue;
    const int group = tokens[j].group;
    std::vector<std::string> inner;
    bool clean = true;
    for (std::size_t k = j; k < n && tokens[k].depth >= 1; ++k) {
      if (tokens[k].depth == 1 && tokens[k].group != group) break;
      if (tokens[k].depth > 1) {
        clean = false;
        break;
      }
      if (std::string name = resolve(tokens[k]); !name.empty()) {
        inner.push_back(std::move(name));
      } else if (!is_separator(tokens[k].text)) {
        clean = false;
        break;
      }
    }
    if (!clean) continue;
    for (auto& name : inner) {
      if (name != outer) pairs.push_back(make_pair_sorted(outer, name));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<NamePair> detect_substitutions(const std::vector<Token>& tokens, const Lexicon& lex) {
  return detect_substitutions(tokens, [&](const Token& t) { return resolve_token(t, lex); });
}

std::string_view count_mode_key(CountMode m) {
  return m == CountMode::kOccurrences ? "occurrences" : "tale-presence";
}

CountMode count_mode_from_key(std::string_view key) {
  if (key == "occurrences") return CountMode::kOccurrences;
  if (key == "tale-presence") return CountMode::kTalePresence;
  throw ValidationError("count_mode must be 'occurrences' or 'tale-presence', got '" + std::string(key) + "'");
}

MentionTable extract_mentions(const Corpus& corpus, const Lexicon& lex, const ExtractionOptions& options) {
  auto tales = corpus.analyzable();
  std::sort(tales.begin(), tales.end(), [](const TaleType* a, const TaleType* b) { return a->id < b->id; });

  struct Raw {
    std::vector<Mention> mentions;
    std::vector<NamePair> substitutions;
  };
  std::vector<Raw> raw(tales.size());
  std::map<std::string, long> alias_counts;
  for (std::size_t t = 0; t < tales.size(); ++t) {
    auto tokens = tokenize(tales[t]->analysis_text());
    std::set<std::string> present;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      std::string name = resolve_token(tokens[k], lex);
      if (name.empty()) continue;
      const std::string& lemma = lex.is_animal(tokens[k].lemma) ? tokens[k].lemma : tokens[k].text;
      raw[t].mentions.push_back({tales[t]->id, lemma, name, k, tokens[k].depth > 0});
      if (options.count_mode == CountMode::kOccurrences || present.insert(name).second) ++alias_counts[name];
    }
    if (options.detect_substitutions) raw[t].substitutions = detect_substitutions(tokens, lex);
  }

  MentionTable table;
  table.rollup = lex.apply_rollup(alias_counts);
  for (std::size_t t = 0; t < tales.size(); ++t) {
    const AtuId& id = tales[t]->id;
    auto& set = table.per_tale_sets[id];
    for (auto& m : raw[t].mentions) {
      m.canonical = table.rollup.at(m.canonical);
      set.insert(m.canonical);
      ++table.counts[m.canonical];
      table.mentions.push_back(std::move(m));
    }
    auto& subs = table.substitution_pairs[id];
    for (auto& [a, b] : raw[t].substitutions) {
      std::string ra = table.rollup.at(a), rb = table.rollup.at(b);
      if (ra != rb) subs.push_back(make_pair_sorted(std::move(ra), std::move(rb)));
    }
    std::sort(subs.begin(), subs.end());
  }
  return table;
}

std::string mentions_to_json(const MentionTable& table) {
  using nlohmann::json;
  json tales = json::array();
  std::map<AtuId, std::vector<const Mention*>> by_tale;
  for (const auto& m : table.mentions) by_tale[m.tale_id].push_back(&m);
  for (const auto& [id, set] : table.per_tale_sets) {
    json mentions = json::array();
    for (const Mention* m : by_tale[id]) {
      mentions.push_back({{"lemma", m->lemma},
                          {"canonical", m->canonical},
                          {"token_index", m->token_index},
                          {"in_parenthetical", m->in_parenthetical}});
    }
    json subs = json::array();
    if (auto it = table.substitution_pairs.find(id); it != table.substitution_pairs.end()) {
      for (const auto& [a, b] : it->second) subs.push_back({a, b});
    }
    tales.push_back({{"id", id.str()}, {"animals", set}, {"mentions", std::move(mentions)},
                     {"substitutions", std::move(subs)}});
  }
  json doc = {{"counts", table.counts}, {"rollup", table.rollup}, {"tales", std::move(tales)}};
  return doc.dump(2) + "\n";
}

MentionTable mentions_from_json(std::string_view text) {
  using nlohmann::json;
  MentionTable table;
  try {
    json doc = json::parse(text);
    table.counts = doc.at("counts").get<std::map<std::string, long>>();
    table.rollup = doc.at("rollup").get<RollupMap>();
    std::map<std::string, long> recount;
    for (const auto& jt : doc.at("tales")) {
      AtuId id = AtuId::parse(jt.at("id").get<std::string>());
      auto animals = jt.at("animals").get<std::set<std::string>>();
      std::set<std::string> seen;
      for (const auto& jm : jt.at("mentions")) {
        Mention m{id, jm.at("lemma").get<std::string>(), jm.at("canonical").get<std::string>(),
                  jm.at("token_index").get<std::size_t>(), jm.at("in_parenthetical").get<bool>()};
        seen.insert(m.canonical);
        ++recount[m.canonical];
        table.mentions.push_back(std::move(m));
      }
      if (seen != animals) throw ValidationError("tale " + id.str() + ": animal set disagrees with its mentions");
      std::vector<NamePair> subs;
      for (const auto& js : jt.at("substitutions")) {
        auto pair = js.get<std::vector<std::string>>();
        if (pair.size() != 2 || pair[0] >= pair[1] || !animals.count(pair[0]) || !animals.count(pair[1])) {
          throw ValidationError("tale " + id.str() + ": malformed substitution pair");
        }
        subs.emplace_back(pair[0], pair[1]);
      }
      if (!table.per_tale_sets.emplace(id, std::move(animals)).second) {
        throw ValidationError("duplicate tale " + id.str() + " in mentions JSON");
      }
      table.substitution_pairs.emplace(id, std::move(subs));
    }
    if (recount != table.counts) throw ValidationError("mention counts disagree with the mention list");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("mentions JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(std::string("mentions JSON: ") + e.what());
  }
  return table;
}

}  // namespace folk
