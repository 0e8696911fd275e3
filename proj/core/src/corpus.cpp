#include "folk/corpus.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <charconv>
#include <istream>
#include <iterator>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "folk/digest.hpp"
#include "text_util.hpp"

namespace folk {

namespace detail {

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) || (extra == 3 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace detail

using detail::is_alnum;
using detail::is_digit;
using detail::is_upper;

namespace {

constexpr std::string_view kEmDash = "\xE2\x80\x94";
constexpr std::string_view kEnDash = "\xE2\x80\x93";
constexpr std::array<std::string_view, 3> kSectionNames = {"Combinations", "Remarks", "Literature"};

bool valid_variant(std::string_view v) {
  if (v.empty()) return true;
  if (v == "*") return true;
  if (!is_upper(v[0])) return false;
  return v.size() == 1 || (v.size() == 2 && v[1] == '*');
}

// Parses a run of decimal digits starting at `pos`; returns false on overflow.
bool parse_int(std::string_view s, std::size_t& pos, int& value) {
  std::size_t start = pos;
  while (pos < s.size() && is_digit(s[pos])) ++pos;
  auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + pos, value);
  return ec == std::errc{} && ptr == s.data() + pos;
}

// Matches "-" or an en dash at `pos`, returning its byte length (0 if absent).
std::size_t dash_at(std::string_view s, std::size_t pos) {
  if (pos < s.size() && s[pos] == '-') return 1;
  if (s.substr(pos, kEnDash.size()) == kEnDash) return kEnDash.size();
  return 0;
}

std::size_t skip_blanks(std::string_view s, std::size_t pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  return pos;
}

std::optional<std::string_view> section_header(std::string_view line) {
  for (auto name : kSectionNames) {
    if (line.size() > name.size() && line.substr(0, name.size()) == name && line[name.size()] == ':') {
      return name;
    }
  }
  return std::nullopt;
}

struct Header {
  AtuId id;
  std::string title;
};

Header parse_header(std::string_view line, std::size_t line_no) {
  static const std::regex kHeader(
      R"(^ATU[ \t]+([0-9]+)([A-Za-z]?\*?)[ \t]+(?:\xE2\x80\x94|\xE2\x80\x93|-)[ \t]+(.*)$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(line.begin(), line.end(), m, kHeader)) {
    throw ParseError(line_no, "malformed record header '" + std::string(line) + "'");
  }
  std::string digits = m[1].str();
  std::string variant = m[2].str();
  for (char& c : variant) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  std::string title(detail::trim(m[3].str()));
  if (title.empty()) throw ParseError(line_no, "record header has an empty title");
  int number = 0;
  if (digits.size() > 4 || std::from_chars(digits.data(), digits.data() + digits.size(), number).ec != std::errc{}) {
    throw ParseError(line_no, "ATU number '" + digits + "' out of range 1..299");
  }
  try {
    return {AtuId::make(number, variant), std::move(title)};
  } catch (const DomainError& e) {
    throw ParseError(line_no, e.what());
  }
}

void finish_tale(TaleType& tale) {
  tale.is_reference_only = detail::trim(tale.description).empty() || is_cross_reference(tale.description);
  if (tale.is_reference_only) tale.motifs.clear();
}

}  // namespace

AtuId AtuId::make(int number, std::string variant) {
  if (number < 1 || number > 299) {
    throw DomainError("ATU number " + std::to_string(number) + " out of range 1..299");
  }
  if (!valid_variant(variant)) throw DomainError("malformed ATU variant '" + variant + "'");
  return AtuId{number, std::move(variant)};
}

AtuId AtuId::parse(std::string_view text) {
  text = detail::trim(text);
  std::size_t pos = 0;
  int number = 0;
  if (text.empty() || !is_digit(text[0]) || !parse_int(text, pos, number)) {
    throw DomainError("malformed ATU id '" + std::string(text) + "'");
  }
  return make(number, std::string(text.substr(pos)));
}

Category category_of(int number) {
  if (number < 1 || number > 299) {
    throw DomainError("ATU number " + std::to_string(number) + " out of range 1..299");
  }
  if (number <= 99) return Category::kWildAnimals;
  if (number <= 149) return Category::kWildAndDomestic;
  if (number <= 199) return Category::kWildAndHumans;
  if (number <= 219) return Category::kDomesticAnimals;
  return Category::kOtherAnimalsAndObjects;
}

std::string_view category_key(Category c) {
  switch (c) {
    case Category::kWildAnimals: return "wild_animals";
    case Category::kWildAndDomestic: return "wild_and_domestic";
    case Category::kWildAndHumans: return "wild_and_humans";
    case Category::kDomesticAnimals: return "domestic_animals";
    case Category::kOtherAnimalsAndObjects: return "other_animals_and_objects";
  }
  throw InvariantError("unknown category");
}

std::string_view category_label(Category c) {
  switch (c) {
    case Category::kWildAnimals: return "Wild animals";
    case Category::kWildAndDomestic: return "Wild and domestic animals";
    case Category::kWildAndHumans: return "Wild animals and humans";
    case Category::kDomesticAnimals: return "Domestic animals";
    case Category::kOtherAnimalsAndObjects: return "Other animals and objects";
  }
  throw InvariantError("unknown category");
}

Category category_from_key(std::string_view key) {
  for (Category c : kAllCategories) {
    if (category_key(c) == key) return c;
  }
  throw ValidationError("unknown category '" + std::string(key) + "'");
}

bool is_motif_letter(char c) { return motif_letter_index(c) >= 0; }

int motif_letter_index(char c) {
  auto it = std::find(kMotifLetters.begin(), kMotifLetters.end(), c);
  return it == kMotifLetters.end() ? -1 : static_cast<int>(it - kMotifLetters.begin());
}

std::string MotifCode::str() const {
  std::string out(1, letter);
  out += std::to_string(major);
  for (int s : sub) out += "." + std::to_string(s);
  if (range_end) out += "-" + std::to_string(*range_end);
  return out;
}

std::vector<MotifCode> extract_motif_codes(std::string_view text, Diagnostics* diagnostics, std::size_t line) {
  std::vector<MotifCode> codes;
  auto report = [&](std::string message) {
    if (diagnostics) diagnostics->push_back({line, std::move(message)});
  };
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    bool starts = is_upper(c) && (i == 0 || !is_alnum(text[i - 1])) && i + 1 < text.size() && is_digit(text[i + 1]);
    if (!starts) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    MotifCode code;
    code.letter = c;
    bool ok = parse_int(text, j, code.major);
    while (ok && j + 1 < text.size() && text[j] == '.' && is_digit(text[j + 1])) {
      ++j;
      int part = 0;
      ok = parse_int(text, j, part);
      code.sub.push_back(part);
    }
    if (ok && j < text.size() && is_alnum(text[j])) ok = false;
    if (!ok) {
      while (j < text.size() && (is_alnum(text[j]) || text[j] == '.')) ++j;
      report("malformed motif token '" + std::string(text.substr(i, j - i)) + "' skipped");
      i = j;
      continue;
    }
    if (code.sub.empty()) {
      std::size_t k = skip_blanks(text, j);
      if (std::size_t d = dash_at(text, k); d > 0) {
        k = skip_blanks(text, k + d);
        if (k < text.size() && text[k] == c) ++k;
        if (k < text.size() && is_digit(text[k])) {
          int end = 0;
          std::size_t after = k;
          if (parse_int(text, after, end) && (after == text.size() || !is_alnum(text[after]))) {
            if (end >= code.major) {
              code.range_end = end;
            } else {
              report("reversed motif range '" + std::string(text.substr(i, after - i)) + "'; range dropped");
            }
            j = after;
          }
        }
      }
    }
    if (!is_motif_letter(c)) {
      report("motif token '" + std::string(text.substr(i, j - i)) + "' has letter '" + std::string(1, c) +
             "' outside the motif index; skipped");
    } else {
      codes.push_back(std::move(code));
    }
    i = j;
  }
  return codes;
}

bool is_cross_reference(std::string_view body) {
  static const std::regex kRef(R"(^see atu ?[0-9]+[a-z]?\*?[ ]?[.;,!]?$)", std::regex::icase);
  std::string norm = detail::normalize_whitespace(body);
  return std::regex_match(norm, kRef);
}

std::vector<const TaleType*> Corpus::analyzable() const {
  std::vector<const TaleType*> out;
  for (const auto& t : tales) {
    if (!t.is_reference_only) out.push_back(&t);
  }
  return out;
}

std::size_t Corpus::analyzable_count() const {
  return static_cast<std::size_t>(
      std::count_if(tales.begin(), tales.end(), [](const TaleType& t) { return !t.is_reference_only; }));
}

Corpus parse_corpus(std::string_view text, Diagnostics* diagnostics) {
  if (!detail::is_valid_utf8(text)) throw ParseError(0, "input is not valid UTF-8");
  Corpus corpus;
  corpus.source_digest = sha256_hex(text);
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  auto lines = detail::split_lines(text);
  std::map<AtuId, std::size_t> seen;
  std::size_t i = 0;
  while (i < lines.size()) {
    std::string_view header = detail::rtrim(lines[i]);
    if (header.empty()) {
      ++i;
      continue;
    }
    const std::size_t header_line = i + 1;
    Header h = parse_header(header, header_line);
    if (auto [it, inserted] = seen.emplace(h.id, header_line); !inserted) {
      throw ValidationError("duplicate ATU id " + h.id.str() + " at line " + std::to_string(header_line) +
                            " (first defined at line " + std::to_string(it->second) + ")");
    }
    TaleType tale;
    tale.id = h.id;
    tale.title = std::move(h.title);
    tale.category = category_of(tale.id.number);
    auto title_codes = extract_motif_codes(tale.title, diagnostics, header_line);
    tale.motifs.insert(tale.motifs.end(), title_codes.begin(), title_codes.end());

    std::string description;
    ++i;
    for (; i < lines.size(); ++i) {
      std::string_view line = detail::rtrim(lines[i]);
      if (line.empty()) break;
      if (auto name = section_header(line)) {
        std::string_view rest = detail::trim(line.substr(name->size() + 1));
        tale.sections.push_back({std::string(*name), std::string(rest)});
        continue;
      }
      if (!tale.sections.empty()) {
        tale.sections.back().text += "\n";
        tale.sections.back().text += line;
        continue;
      }
      if (!description.empty()) description += '\n';
      description += line;
      auto codes = extract_motif_codes(line, diagnostics, i + 1);
      tale.motifs.insert(tale.motifs.end(), codes.begin(), codes.end());
    }
    tale.description = std::move(description);
    finish_tale(tale);
    corpus.tales.push_back(std::move(tale));
  }
  return corpus;
}

Corpus parse_corpus(std::istream& in, Diagnostics* diagnostics) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("error reading catalogue stream");
  return parse_corpus(std::string_view(text), diagnostics);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  bool first = true;
  for (const auto& t : corpus.tales) {
    if (!first) out += '\n';
    first = false;
    out += "ATU " + t.id.str() + " ";
    out += kEmDash;
    out += " " + t.title + "\n";
    if (!t.description.empty()) out += t.description + "\n";
    for (const auto& s : t.sections) {
      out += s.name + ":";
      if (!s.text.empty() && s.text.front() != '\n') out += ' ';
      out += s.text + "\n";
    }
  }
  return out;
}

bool same_tales(const Corpus& a, const Corpus& b) { return a.tales == b.tales; }

std::string corpus_to_json(const Corpus& corpus) {
  using nlohmann::json;
  json tales = json::array();
  for (const auto& t : corpus.tales) {
    json motifs = json::array();
    for (const auto& m : t.motifs) motifs.push_back(m.str());
    json sections = json::array();
    for (const auto& s : t.sections) sections.push_back({{"name", s.name}, {"text", s.text}});
    tales.push_back({{"id", t.id.str()},
                     {"title", t.title},
                     {"category", category_key(t.category)},
                     {"description", t.description},
                     {"motifs", std::move(motifs)},
                     {"sections", std::move(sections)},
                     {"reference_only", t.is_reference_only}});
  }
  json doc = {{"source_digest", corpus.source_digest}, {"tales", std::move(tales)}};
  return doc.dump(2) + "\n";
}

Corpus corpus_from_json(std::string_view text) {
  using nlohmann::json;
  Corpus corpus;
  try {
    json doc = json::parse(text);
    corpus.source_digest = doc.at("source_digest").get<std::string>();
    std::set<AtuId> seen;
    for (const auto& jt : doc.at("tales")) {
      TaleType t;
      t.id = AtuId::parse(jt.at("id").get<std::string>());
      if (!seen.insert(t.id).second) throw ValidationError("duplicate ATU id " + t.id.str() + " in corpus JSON");
      t.title = jt.at("title").get<std::string>();
      t.category = category_from_key(jt.at("category").get<std::string>());
      if (t.category != category_of(t.id.number)) {
        throw ValidationError("ATU " + t.id.str() + " has category '" + std::string(category_key(t.category)) +
                              "' inconsistent with its number");
      }
      t.description = jt.at("description").get<std::string>();
      for (const auto& jm : jt.at("motifs")) {
        auto s = jm.get<std::string>();
        auto codes = extract_motif_codes(s);
        if (codes.size() != 1 || codes[0].str() != s) {
          throw ValidationError("malformed motif code '" + s + "' in corpus JSON");
        }
        t.motifs.push_back(codes[0]);
      }
      for (const auto& js : jt.at("sections")) {
        t.sections.push_back({js.at("name").get<std::string>(), js.at("text").get<std::string>()});
      }
      t.is_reference_only = jt.at("reference_only").get<bool>();
      if (t.is_reference_only && !t.motifs.empty()) {
        throw ValidationError("reference-only ATU " + t.id.str() + " carries motifs");
      }
      corpus.tales.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("corpus JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(std::string("corpus JSON: ") + e.what());
  }
  return corpus;
}

}  // namespace folk
