#include "folk/lexicon.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <string>

#include "text_util.hpp"

namespace folk {

namespace {

std::string normalize_lemma(std::string_view raw) {
  std::string s = detail::to_lower(detail::trim(raw));
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

void push_unique(std::vector<std::string>& v, std::string value) {
  if (std::find(v.begin(), v.end(), value) == v.end()) v.push_back(std::move(value));
}

bool skip_line(std::string_view line) {
  std::string_view t = detail::trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

void validate_synsets(const SynsetMap& synsets) {
  for (const auto& [id, s] : synsets) {
    for (const auto& h : s.hypernyms) {
      if (!synsets.count(h)) {
        throw ValidationError("synset '" + id + "' has a hypernym pointer to unknown synset '" + h + "'");
      }
    }
  }
  // Iterative three-colour DFS.
  enum class Mark { kNew, kActive, kDone };
  std::map<std::string_view, Mark> mark;
  for (const auto& [id, s] : synsets) mark[id] = Mark::kNew;
  for (const auto& [start, unused] : synsets) {
    if (mark[start] != Mark::kNew) continue;
    std::vector<std::pair<std::string_view, std::size_t>> stack{{start, 0}};
    mark[start] = Mark::kActive;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto& hyps = synsets.at(std::string(node)).hypernyms;
      if (next == hyps.size()) {
        mark[node] = Mark::kDone;
        stack.pop_back();
        continue;
      }
      std::string_view child = hyps[next++];
      if (mark[child] == Mark::kActive) {
        throw ValidationError("hypernym cycle through synset '" + std::string(child) + "'");
      }
      if (mark[child] == Mark::kNew) {
        mark[child] = Mark::kActive;
        stack.emplace_back(child, 0);
      }
    }
  }
}

SynsetMap load_wordnet_nouns(std::istream& index, std::istream& data) {
  SynsetMap synsets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(data, line)) {
    ++line_no;
    if (line.rfind("  ", 0) == 0 || detail::trim(line).empty()) continue;
    std::string_view body = line;
    if (auto bar = body.find(" | "); bar != std::string_view::npos) body = body.substr(0, bar);
    std::vector<std::string_view> f;
    for (auto tok : detail::split(detail::trim(body), ' ')) {
      if (!tok.empty()) f.push_back(tok);
    }
    auto fail = [&](const std::string& why) -> ParseError { return ParseError(line_no, "data.noun: " + why); };
    if (f.size() < 4) throw fail("truncated synset line");
    Synset s;
    s.id = std::string(f[0]);
    if (s.id.size() != 8 || !std::all_of(s.id.begin(), s.id.end(), detail::is_digit)) {
      throw fail("bad synset offset '" + s.id + "'");
    }
    if (f[2] != "n") throw fail("synset type '" + std::string(f[2]) + "' is not a noun");
    std::size_t words = 0;
    try {
      words = std::stoul(std::string(f[3]), nullptr, 16);
    } catch (const std::exception&) {
      throw fail("bad word count '" + std::string(f[3]) + "'");
    }
    std::size_t pos = 4;
    if (words == 0 || f.size() < pos + 2 * words + 1) throw fail("word list shorter than its count");
    for (std::size_t w = 0; w < words; ++w, pos += 2) {
      std::string word = normalize_lemma(f[pos]);
      if (auto paren = word.find('('); paren != std::string::npos) word.erase(paren);
      push_unique(s.words, std::move(word));
    }
    std::size_t pointers = 0;
    try {
      pointers = std::stoul(std::string(f[pos++]));
    } catch (const std::exception&) {
      throw fail("bad pointer count");
    }
    if (f.size() < pos + 4 * pointers) throw fail("pointer list shorter than its count");
    for (std::size_t p = 0; p < pointers; ++p, pos += 4) {
      if ((f[pos] == "@" || f[pos] == "@i") && f[pos + 2] == "n") push_unique(s.hypernyms, std::string(f[pos + 1]));
    }
    if (!synsets.emplace(s.id, s).second) throw fail("duplicate synset offset " + s.id);
  }
  if (data.bad()) throw IoError("error reading data.noun");

  line_no = 0;
  while (std::getline(index, line)) {
    ++line_no;
    if (line.rfind("  ", 0) == 0 || detail::trim(line).empty()) continue;
    std::vector<std::string_view> f;
    for (auto tok : detail::split(detail::trim(line), ' ')) {
      if (!tok.empty()) f.push_back(tok);
    }
    auto fail = [&](const std::string& why) -> ParseError { return ParseError(line_no, "index.noun: " + why); };
    if (f.size() < 6 || f[1] != "n") throw fail("malformed index entry");
    std::size_t synset_cnt = 0, p_cnt = 0;
    try {
      synset_cnt = std::stoul(std::string(f[2]));
      p_cnt = std::stoul(std::string(f[3]));
    } catch (const std::exception&) {
      throw fail("bad counts");
    }
    std::size_t first_offset = 4 + p_cnt + 2;
    if (f.size() != first_offset + synset_cnt) throw fail("offset list does not match synset count");
    for (std::size_t k = first_offset; k < f.size(); ++k) {
      if (!synsets.count(std::string(f[k]))) {
        throw ValidationError("index.noun line " + std::to_string(line_no) + ": lemma '" + std::string(f[0]) +
                              "' points to unknown synset " + std::string(f[k]));
      }
    }
  }
  if (index.bad()) throw IoError("error reading index.noun");
  validate_synsets(synsets);
  return synsets;
}

SynsetMap load_lexicon_tsv(std::istream& in) {
  SynsetMap synsets;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto f = detail::split(detail::rtrim(line), '\t');
    // trimming eats the tab before an empty hypernym, so two fields is a root too
    if (f.size() != 3 && f.size() != 2) throw ParseError(line_no, "lexicon TSV: expected 3 tab-separated fields");
    std::string lemma = normalize_lemma(f[0]);
    std::string id(detail::trim(f[1]));
    std::string hyper(f.size() == 3 ? detail::trim(f[2]) : std::string_view{});
    if (lemma.empty() || id.empty()) throw ParseError(line_no, "lexicon TSV: empty lemma or synset id");
    Synset& s = synsets[id];
    s.id = id;
    push_unique(s.words, std::move(lemma));
    if (!hyper.empty() && hyper != "-") push_unique(s.hypernyms, std::move(hyper));
  }
  if (in.bad()) throw IoError("error reading lexicon TSV");
  validate_synsets(synsets);
  return synsets;
}

std::map<std::string, std::string> load_alias_table(std::istream& in) {
  std::map<std::string, std::string> aliases;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    auto f = detail::split(detail::rtrim(line), '\t');
    if (f.size() != 2) throw ParseError(line_no, "alias table: expected 'variant<TAB>canonical'");
    std::string variant = normalize_lemma(f[0]);
    std::string canonical = normalize_lemma(f[1]);
    if (variant.empty() || canonical.empty()) throw ParseError(line_no, "alias table: empty field");
    auto [it, inserted] = aliases.emplace(variant, canonical);
    if (!inserted && it->second != canonical) {
      throw ParseError(line_no, "alias table: '" + variant + "' mapped twice");
    }
  }
  if (in.bad()) throw IoError("error reading alias table");
  return aliases;
}

std::set<std::string> load_word_list(std::istream& in) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (skip_line(line)) continue;
    words.insert(normalize_lemma(line));
  }
  if (in.bad()) throw IoError("error reading word list");
  return words;
}

Lexicon::Lexicon(SynsetMap synsets, std::string_view root, LexiconTables tables)
    : synsets_(std::move(synsets)), tables_(std::move(tables)) {
  validate_synsets(synsets_);
  for (const auto& [id, s] : synsets_) {
    for (const auto& w : s.words) lemma_index_[w].push_back(id);
  }
  if (synsets_.count(std::string(root))) {
    root_ = std::string(root);
  } else {
    auto it = lemma_index_.find(std::string(root));
    if (it == lemma_index_.end()) {
      throw ValidationError("animal root '" + std::string(root) + "' not found in the lexicon");
    }
    if (it->second.size() != 1) {
      throw ValidationError("animal root lemma '" + std::string(root) + "' names " +
                            std::to_string(it->second.size()) + " synsets; give a synset id instead");
    }
    root_ = it->second.front();
  }
  if (tables_.min_count < 0) throw ValidationError("min_count must be >= 0");

  // Memoised reachability; the graph is a DAG after validate_synsets.
  std::map<std::string, bool> memo;
  auto reaches = [&](auto&& self, const std::string& id) -> bool {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    bool r = id == root_;
    for (const auto& h : synsets_.at(id).hypernyms) {
      if (r) break;
      r = self(self, h);
    }
    memo[id] = r;
    return r;
  };
  for (const auto& [id, s] : synsets_) {
    if (reaches(reaches, id)) animal_synsets_.insert(id);
  }

  for (const auto& [variant, canonical] : tables_.aliases) {
    if (auto it = tables_.aliases.find(canonical); it != tables_.aliases.end() && it->second != canonical) {
      throw ValidationError("alias target '" + canonical + "' is itself aliased to '" + it->second + "'");
    }
    if (tables_.exclusions.count(canonical)) {
      throw ValidationError("alias target '" + canonical + "' is also an excluded lemma");
    }
    if (!reaches_root(canonical)) {
      throw ValidationError("alias target '" + canonical + "' is not an animal in the lexicon");
    }
  }
  for (const auto& t : tables_.rollup_targets) {
    if (tables_.exclusions.count(t)) throw ValidationError("rollup target '" + t + "' is also excluded");
    if (auto it = tables_.aliases.find(t); it != tables_.aliases.end() && it->second != t) {
      throw ValidationError("rollup target '" + t + "' is aliased to '" + it->second + "'");
    }
  }
}

const std::vector<std::string>& Lexicon::synsets_of(std::string_view lemma) const {
  static const std::vector<std::string> kNone;
  auto it = lemma_index_.find(std::string(lemma));
  return it == lemma_index_.end() ? kNone : it->second;
}

bool Lexicon::reaches_root(const std::string& lemma) const {
  const auto& ids = synsets_of(lemma);
  return std::any_of(ids.begin(), ids.end(), [&](const std::string& id) { return animal_synsets_.count(id) > 0; });
}

bool Lexicon::is_animal(std::string_view lemma) const {
  std::string key(lemma);
  return !tables_.exclusions.count(key) && reaches_root(key);
}

std::string Lexicon::canonicalize(std::string_view lemma) const {
  if (!is_animal(lemma)) throw DomainError("'" + std::string(lemma) + "' is not an animal lemma");
  auto it = tables_.aliases.find(std::string(lemma));
  return it == tables_.aliases.end() ? std::string(lemma) : it->second;
}

std::string Lexicon::nearest_target(const std::string& name) const {
  std::set<std::string> visited;
  std::vector<std::string> frontier;
  for (const auto& id : synsets_of(name)) {
    if (visited.insert(id).second) frontier.push_back(id);
  }
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& id : frontier) {
      for (const auto& h : synsets_.at(id).hypernyms) {
        if (visited.insert(h).second) next.push_back(h);
      }
    }
    std::string best;
    for (const auto& id : next) {
      for (const auto& w : synsets_.at(id).words) {
        if (tables_.rollup_targets.count(w) && (best.empty() || w < best)) best = w;
      }
    }
    if (!best.empty()) return best;
    frontier = std::move(next);
  }
  return name;
}

RollupMap Lexicon::apply_rollup(const std::map<std::string, long>& counts) const {
  RollupMap out;
  for (const auto& [name, count] : counts) {
    if (count >= tables_.min_count || tables_.rollup_targets.count(name)) {
      out[name] = name;
    } else {
      out[name] = nearest_target(name);
    }
  }
  return out;
}

}  // namespace folk
