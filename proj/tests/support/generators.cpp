#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace folk::testing {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

const std::vector<std::string> kWords = {
    "the",    "fox",     "wolf",   "tricks", "a",       "farmer",   "into",    "river",  "and",   "escapes",
    "bear",   "cat",     "mouse",  "old",    "village", "Dähnhardt", "naïve",  "king",   "with",  "tail",
    "(jackal)", "(the", "crow)",   "sings",  "weeps",   "—",        "ice",     "butter", "its",   "dead",
    "Aesop’s", "fable",  "mice",   "geese",  "kids",    "seven",    "12",      "1912,",  "p.",    "Ä"};

std::string motif_token(Rng& rng) {
  static const std::string letters = "ABCDEFGHJKLMNPQRSTUVWXZ";
  const char letter = letters[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(letters.size()) - 1))];
  const int major = uniform(rng, 0, 2499);
  switch (uniform(rng, 0, 6)) {
    case 0: return fmt::format("{}{}.{}", letter, major, uniform(rng, 1, 9));
    case 1: return fmt::format("{}{}.{}.{}", letter, major, uniform(rng, 1, 9), uniform(rng, 1, 12));
    case 2: return fmt::format("{}{}-{}", letter, major, major + uniform(rng, 0, 300));
    case 3: return fmt::format("{}{}\xE2\x80\x93{}{}", letter, major, letter, major + uniform(rng, 1, 99));
    case 4: return fmt::format("{}{}-{}", letter, major + 50, major);  // reversed
    case 5: return fmt::format("{}{}", "IOY"[uniform(rng, 0, 2)], major);  // outside the index
    default: return fmt::format("{}{}", letter, major);
  }
}

std::string sentence(Rng& rng) {
  std::string s;
  const int n = uniform(rng, 1, 12);
  for (int i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += coin(rng, 0.2) ? "[" + motif_token(rng) + "]" : pick(rng, kWords);
  }
  return s + (coin(rng) ? "." : "");
}

std::string variant(Rng& rng) {
  switch (uniform(rng, 0, 9)) {
    case 0: return std::string(1, static_cast<char>('A' + uniform(rng, 0, 25)));
    case 1: return std::string(1, static_cast<char>('a' + uniform(rng, 0, 25)));
    case 2: return std::string(1, static_cast<char>('A' + uniform(rng, 0, 25))) + "*";
    case 3: return "*";
    default: return "";
  }
}

}  // namespace

std::string random_catalogue(Rng& rng, int max_records) {
  const int records = uniform(rng, 0, max_records);
  std::set<std::string> used;
  std::string out;
  if (coin(rng, 0.1)) out += "\xEF\xBB\xBF";
  const std::string eol = coin(rng, 0.15) ? "\r\n" : "\n";
  for (int r = 0; r < records; ++r) {
    std::string id;
    std::string canonical;
    do {
      id = std::to_string(uniform(rng, 1, 299)) + variant(rng);
      canonical = id;
      std::transform(canonical.begin(), canonical.end(), canonical.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    } while (!used.insert(canonical).second);

    const int blank_lines = r == 0 ? uniform(rng, 0, 1) : uniform(rng, 1, 3);
    for (int b = 0; b < blank_lines; ++b) out += (coin(rng, 0.2) ? "  \t" : "") + eol;
    const char* dash = pick(rng, std::vector<const char*>{"\xE2\x80\x94", "\xE2\x80\x93", "-"});
    out += fmt::format("ATU{}{} {} {}{}", coin(rng, 0.9) ? " " : "\t", id, dash, sentence(rng),
                       coin(rng, 0.2) ? "  " : "");
    out += eol;

    switch (uniform(rng, 0, 9)) {
      case 0:
        out += fmt::format("{}ee ATU {}{}{}", coin(rng) ? "S" : "s", uniform(rng, 1, 299), coin(rng) ? "." : "", eol);
        break;
      case 1:
        break;  // header only
      default: {
        const int lines = uniform(rng, 1, 4);
        for (int l = 0; l < lines; ++l) out += sentence(rng) + (coin(rng, 0.1) ? " " : "") + eol;
      }
    }
    for (const char* name : {"Combinations", "Remarks", "Literature"}) {
      if (!coin(rng, 0.3)) continue;
      out += fmt::format("{}:{}{}", name, coin(rng, 0.8) ? " " + sentence(rng) : "", eol);
      const int more = uniform(rng, 0, 2);
      for (int l = 0; l < more; ++l) out += sentence(rng) + eol;
    }
  }
  if (coin(rng, 0.3)) out += eol;
  return out;
}

CooccurrenceCase random_cooccurrence_case(Rng& rng, int max_tales, int max_animals) {
  // canonical name -> spellings that resolve to it through the fixture lexicon.
  static const std::vector<std::pair<std::string, std::vector<std::string>>> kPool = {
      {"fox", {"fox", "foxes"}},           {"wolf", {"wolf", "wolves"}},
      {"dog", {"dog", "dogs"}},            {"cat", {"cat", "cats"}},
      {"mouse", {"mouse", "mice"}},        {"bear", {"bear", "bears"}},
      {"jackal", {"jackal", "jackals"}},   {"goat", {"goat", "kid", "kids"}},
      {"sheep", {"sheep"}},                {"chicken", {"chicken", "cock", "hen", "rooster", "hens"}},
      {"donkey", {"donkey", "ass", "asses"}}, {"lion", {"lion", "lions"}},
  };
  static const std::vector<std::string> kVerbs = {"chases", "tricks", "meets", "follows", "fools", "helps"};
  static const std::vector<std::string> kSeparators = {" or ", ", ", " and ", " or the ", " and a "};

  std::vector<std::size_t> order(kPool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<std::size_t>(uniform(rng, 1, max_animals)));

  struct Spelled {
    std::string canonical;
    std::string text;
  };
  auto animal = [&]() -> Spelled {
    const auto& entry = kPool[order[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(order.size()) - 1))]];
    return {entry.first, pick(rng, entry.second)};
  };

  CooccurrenceCase c;
  std::set<int> numbers;
  const int tales = uniform(rng, 0, max_tales);
  for (int t = 0; t < tales; ++t) {
    int number = 0;
    do {
      number = uniform(rng, 1, 299);
    } while (!numbers.insert(number).second);
    TaleTruth truth;
    auto mention = [&](const Spelled& s) {
      truth.animals.insert(s.canonical);
      ++truth.mentions[s.canonical];
    };
    std::string body;
    const int sentences = uniform(rng, 0, 3);
    for (int s = 0; s < sentences; ++s) {
      if (!body.empty()) body += ' ';
      const Spelled a = animal();
      const Spelled b = animal();
      mention(a);
      switch (uniform(rng, 0, 3)) {
        case 0:  // plain
          body += fmt::format("The {} {} the {}.", a.text, pick(rng, kVerbs), b.text);
          mention(b);
          break;
        case 1:
        case 2: {  // parenthetical alternatives, 0-2 filler words before the bracket
          const int gap = uniform(rng, 0, 2);
          std::vector<Spelled> inner{b};
          if (coin(rng, 0.4)) inner.push_back(animal());
          std::string group = inner[0].text;
          for (std::size_t i = 1; i < inner.size(); ++i) group += pick(rng, kSeparators) + inner[i].text;
          body += fmt::format("The {}{} ({}) {} the man.", a.text, gap == 0 ? "" : gap == 1 ? " old" : " old grey",
                              group, pick(rng, kVerbs));
          for (const auto& i : inner) {
            mention(i);
            if (gap <= 1 && i.canonical != a.canonical) {
              truth.substitutions.push_back(make_pair_sorted(a.canonical, i.canonical));
            }
          }
          break;
        }
        default:  // bracket that mixes in a non-animal, so no substitution
          body += fmt::format("The {} ({} in the forest) {} them.", a.text, b.text, pick(rng, kVerbs));
          mention(b);
      }
    }
    if (body.empty()) body = "Nothing happens here.";
    c.catalogue += fmt::format("ATU {} \xE2\x80\x94 Tale {}\n{}\n\n", number, number, body);
    c.truth.emplace(AtuId::make(number), std::move(truth));
  }
  return c;
}

Matrix random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  }
  return m;
}

Matrix random_orthogonal(Rng& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  Matrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(n);
    for (;;) {
      for (auto& x : v) x = normal(rng);
      // Two Gram-Schmidt passes for orthogonality to working precision.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          double dot = 0;
          for (std::size_t i = 0; i < n; ++i) dot += v[i] * q(i, k);
          for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q(i, k);
        }
      }
      double norm = 0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-6) {
        for (std::size_t i = 0; i < n; ++i) q(i, j) = v[i] / norm;
        break;
      }
    }
  }
  return q;
}

}  // namespace folk::testing
