#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "folk/motif_stats.hpp"
#include "generators.hpp"

namespace folk {
namespace {

using testing::fixture_lexicon;
using testing::fixture_text;

std::size_t col(char letter) { return static_cast<std::size_t>(motif_letter_index(letter)); }

double row_sum(const Matrix& m, std::size_t r) {
  double s = 0;
  for (double v : m.row(r)) s += v;
  return s;
}

MotifMatrix relative_of(std::vector<std::vector<double>> rows) {
  MotifMatrix m;
  m.kind = MatrixKind::kRelative;
  m.values = Matrix(rows.size(), kMotifLetters.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    m.row_labels.push_back("r" + std::to_string(r));
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.values(r, c) = rows[r][c];
  }
  return m;
}

TEST(LetterCounts, DirectCount) {
  Corpus c = parse_corpus(std::string_view("ATU 50 - The Sick Lion\nDeceptions (K1700-2099) and J1750.\n"));
  auto counts = motif_letter_counts(c);
  EXPECT_EQ(counts.size(), kMotifLetters.size());
  for (const auto& [letter, n] : counts) EXPECT_EQ(n, letter == 'K' || letter == 'J' ? 1 : 0) << letter;
}

TEST(LetterCounts, EmptyCorpusIsAllZero) {
  for (const auto& [letter, n] : motif_letter_counts(Corpus{})) EXPECT_EQ(n, 0);
  Corpus refs = parse_corpus(std::string_view("ATU 5 - X\nSee ATU 4.\n"));
  for (const auto& [letter, n] : motif_letter_counts(refs)) EXPECT_EQ(n, 0);
}

TEST(LetterCounts, FixtureArgmaxIsK) {
  const auto m = nlohmann::json::parse(fixture_text("manifest.json"));
  auto counts = motif_letter_counts(parse_corpus(fixture_text("catalogue.txt")));
  std::map<std::string, long> nonzero;
  for (const auto& [letter, n] : counts) {
    if (n) nonzero[std::string(1, letter)] = n;
  }
  EXPECT_EQ(nonzero, (m["motif_letter_counts"].get<std::map<std::string, long>>()));
  auto best = std::max_element(counts.begin(), counts.end(), [](auto& a, auto& b) { return a.second < b.second; });
  EXPECT_EQ(best->first, 'K');
}

TEST(LetterCounts, PerTaleUnit) {
  Corpus c = parse_corpus(std::string_view("ATU 1 - A\nK1 K2 K3 J1.\n\nATU 2 - B\nK4.\n"));
  EXPECT_EQ(motif_letter_counts(c, MotifUnit::kOccurrences).at('K'), 4);
  EXPECT_EQ(motif_letter_counts(c, MotifUnit::kPerTale).at('K'), 2);
  EXPECT_EQ(motif_letter_counts(c, MotifUnit::kPerTale).at('J'), 1);
}

TEST(CategoryMatrix, SingleTale) {
  MotifMatrix m = category_motif_matrix(parse_corpus(std::string_view("ATU 50 - The Sick Lion\nA trick [K100].\n")));
  ASSERT_EQ(m.values.rows(), 5u);
  ASSERT_EQ(m.values.cols(), 23u);
  EXPECT_EQ(m.kind, MatrixKind::kRawCounts);
  EXPECT_EQ(m.row_labels[0], category_label(Category::kWildAnimals));
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 23; ++c) EXPECT_EQ(m.values(r, c), r == 0 && c == col('K') ? 1.0 : 0.0);
  }
}

TEST(CategoryMatrix, FixtureMatchesHandTally) {
  const auto manifest = nlohmann::json::parse(fixture_text("manifest.json"));
  MotifMatrix m = category_motif_matrix(parse_corpus(fixture_text("catalogue.txt")));
  for (Category cat : kAllCategories) {
    const auto expected = manifest["category_motifs"][std::string(category_key(cat))].get<std::map<std::string, double>>();
    const auto r = static_cast<std::size_t>(cat);
    for (std::size_t c = 0; c < 23; ++c) {
      auto it = expected.find(std::string(1, kMotifLetters[c]));
      EXPECT_EQ(m.values(r, c), it == expected.end() ? 0.0 : it->second) << category_key(cat) << kMotifLetters[c];
    }
  }
}

TEST(CategoryMatrix, AdditiveOverConcatenation) {
  testing::Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    Corpus a = parse_corpus(testing::random_catalogue(rng));
    Corpus b = parse_corpus(testing::random_catalogue(rng));
    Corpus both;
    both.tales = a.tales;
    both.tales.insert(both.tales.end(), b.tales.begin(), b.tales.end());
    for (MotifUnit unit : {MotifUnit::kOccurrences, MotifUnit::kPerTale}) {
      MotifMatrix ma = category_motif_matrix(a, unit), mb = category_motif_matrix(b, unit);
      MotifMatrix mc = category_motif_matrix(both, unit);
      for (std::size_t r = 0; r < 5; ++r) {
        for (std::size_t c = 0; c < 23; ++c) ASSERT_EQ(mc.values(r, c), ma.values(r, c) + mb.values(r, c));
      }
    }
  }
}

TEST(ToRelative, Rows) {
  MotifMatrix raw = relative_of({{2, 2}, {0, 0}});
  raw.kind = MatrixKind::kRawCounts;
  MotifMatrix rel = to_relative(raw);
  EXPECT_EQ(rel.kind, MatrixKind::kRelative);
  EXPECT_EQ(rel.values(0, 0), 0.5);
  EXPECT_EQ(rel.values(0, 1), 0.5);
  EXPECT_EQ(row_sum(rel.values, 1), 0.0);
  EXPECT_THROW(to_relative(rel), DomainError);
}

TEST(ToRelative, FixtureRowsSumToOneAndRecoverCounts) {
  MotifMatrix raw = category_motif_matrix(parse_corpus(fixture_text("catalogue.txt")));
  MotifMatrix rel = to_relative(raw);
  for (std::size_t r = 0; r < 5; ++r) {
    EXPECT_NEAR(row_sum(rel.values, r), 1.0, 1e-12);
    const double total = row_sum(raw.values, r);
    for (std::size_t c = 0; c < 23; ++c) EXPECT_EQ(std::round(rel.values(r, c) * total), raw.values(r, c));
  }
}

TEST(CenterColumns, Examples) {
  MotifMatrix c = center_columns(relative_of({{0.2, 0.3}, {0.4, 0.3}}));
  EXPECT_EQ(c.kind, MatrixKind::kCentered);
  EXPECT_NEAR(c.values(0, 0), -0.1, 1e-15);
  EXPECT_NEAR(c.values(1, 0), 0.1, 1e-15);
  EXPECT_EQ(c.values(0, 1), 0.0);
  EXPECT_EQ(c.values(1, 1), 0.0);
  MotifMatrix raw = relative_of({{1}});
  raw.kind = MatrixKind::kRawCounts;
  EXPECT_THROW(center_columns(raw), DomainError);
}

TEST(CenterColumns, FixtureSumsAndIdempotence) {
  MotifMatrix c = center_columns(to_relative(category_motif_matrix(parse_corpus(fixture_text("catalogue.txt")))));
  for (std::size_t j = 0; j < 23; ++j) {
    double s = 0;
    for (std::size_t r = 0; r < 5; ++r) s += c.values(r, j);
    EXPECT_LT(std::abs(s), 1e-9);
  }
  MotifMatrix twice = center_columns(c);
  for (std::size_t i = 0; i < c.values.data().size(); ++i) EXPECT_NEAR(twice.values.data()[i], c.values.data()[i], 1e-15);
}

TEST(AnimalMatrix, AttributionExamples) {
  Lexicon lex = fixture_lexicon(0);
  Corpus one = parse_corpus(std::string_view("ATU 1 - A\nThe fox [K1, K2].\n"));
  MotifMatrix m = animal_motif_matrix(one, extract_mentions(one, lex), 0);
  ASSERT_EQ(m.row_labels, std::vector<std::string>{"fox"});
  EXPECT_EQ(m.values(0, col('K')), 2.0);

  Corpus two = parse_corpus(std::string_view("ATU 1 - A\nThe fox and the chicken [K1].\n"));
  m = animal_motif_matrix(two, extract_mentions(two, lex), 0);
  ASSERT_EQ(m.row_labels, (std::vector<std::string>{"chicken", "fox"}));
  EXPECT_EQ(m.values(0, col('K')), 1.0);
  EXPECT_EQ(m.values(1, col('K')), 1.0);
  EXPECT_THROW(animal_motif_matrix(two, extract_mentions(two, lex), -1), DomainError);
}

TEST(AnimalMatrix, FixtureRowsAndCells) {
  const auto manifest = nlohmann::json::parse(fixture_text("manifest.json"));
  Corpus c = parse_corpus(fixture_text("catalogue.txt"));
  MentionTable t = extract_mentions(c, fixture_lexicon());
  MotifMatrix m = animal_motif_matrix(c, t, manifest["animal_min_freq"].get<long>());
  const auto expected = manifest["animal_motifs"].get<std::map<std::string, std::map<std::string, double>>>();
  std::vector<std::string> names;
  for (const auto& [n, cells] : expected) names.push_back(n);
  ASSERT_EQ(m.row_labels, names);
  for (std::size_t r = 0; r < names.size(); ++r) {
    for (std::size_t j = 0; j < 23; ++j) {
      auto it = expected.at(names[r]).find(std::string(1, kMotifLetters[j]));
      EXPECT_EQ(m.values(r, j), it == expected.at(names[r]).end() ? 0.0 : it->second) << names[r] << kMotifLetters[j];
    }
  }
}

TEST(AnimalMatrix, SingleTaleAnimalsMatchTheirTales) {
  Corpus c = parse_corpus(fixture_text("catalogue.txt"));
  MentionTable t = extract_mentions(c, fixture_lexicon());
  MotifMatrix m = animal_motif_matrix(c, t, 0);
  std::map<std::string, int> tales_of;
  for (const auto& [id, names] : t.per_tale_sets) {
    for (const auto& n : names) ++tales_of[n];
  }
  std::vector<double> from_rows(23, 0), from_tales(23, 0);
  std::set<AtuId> seen;
  for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
    if (tales_of[m.row_labels[r]] != 1) continue;
    for (std::size_t j = 0; j < 23; ++j) from_rows[j] += m.values(r, j);
    for (const auto& [id, names] : t.per_tale_sets) {
      if (!names.count(m.row_labels[r])) continue;
      for (const TaleType* tale : c.analyzable()) {
        if (tale->id != id) continue;
        for (const auto& code : tale->motifs) from_tales[col(code.letter)] += 1;
      }
    }
  }
  EXPECT_EQ(from_rows, from_tales);
  EXPECT_GT(std::accumulate(from_rows.begin(), from_rows.end(), 0.0), 0.0);
}

TEST(MatrixCsv, RoundTripAndHeaderCheck) {
  MotifMatrix m = to_relative(category_motif_matrix(parse_corpus(fixture_text("catalogue.txt"))));
  const std::string csv = motif_matrix_to_csv(m);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,A,B,C,D,E,F,G,H,J,K,L,M,N,P,Q,R,S,T,U,V,W,X,Z");
  MotifMatrix back = motif_matrix_from_csv(csv, MatrixKind::kRelative);
  EXPECT_EQ(motif_matrix_to_csv(back), csv);
  EXPECT_EQ(back.row_labels, m.row_labels);
  for (std::size_t i = 0; i < m.values.data().size(); ++i) EXPECT_NEAR(back.values.data()[i], m.values.data()[i], 1e-12);
  EXPECT_THROW(motif_matrix_from_csv("label,B,A\nx,1,2\n", MatrixKind::kRawCounts), ValidationError);
}

TEST(MotifUnitKey, RoundTrip) {
  EXPECT_EQ(motif_unit_from_key(motif_unit_key(MotifUnit::kPerTale)), MotifUnit::kPerTale);
  EXPECT_THROW(motif_unit_from_key("tales"), ValidationError);
}

}  // namespace
}  // namespace folk
