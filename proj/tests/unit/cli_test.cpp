#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include "fixtures.hpp"
#include "golden.hpp"

namespace folk {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome folk_cli(const std::string& args, const testing::TempDir& tmp) {
  const fs::path out = tmp.path() / "stdout.txt", err = tmp.path() / "stderr.txt";
  const std::string cmd = std::string("SOURCE_DATE_EPOCH=0 '") + FOLK_CLI_PATH + "' " + args + " >" + quote(out) +
                          " 2>" + quote(err);
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = read_file(out.string());
  o.err = read_file(err.string());
  return o;
}

fs::path golden(const std::string& name) { return testing::golden_run_dir() / name; }

TEST(Cli, RunReproducesGoldenDirectory) {
  testing::TempDir tmp("cli-run");
  Outcome o = folk_cli("run -c " + quote(testing::fixture_dir() / "run.conf") + " -o " + quote(tmp.path() / "out"), tmp);
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("most frequent motif letter: K"), std::string::npos);
  EXPECT_NE(o.err.find("warning: line 99"), std::string::npos);
  EXPECT_EQ(testing::golden_mismatches(testing::read_dir(tmp.path() / "out")), std::vector<std::string>{});
  // SOURCE_DATE_EPOCH pins the one dated field too
  EXPECT_EQ(read_file((tmp.path() / "out" / "run_manifest.json").string()),
            read_file(golden("run_manifest.json").string()));
}

TEST(Cli, MissingCorpusExitsTwoNamingPath) {
  testing::TempDir tmp("cli-missing");
  const fs::path missing = tmp.path() / "no-such-catalogue.txt";
  Outcome o = folk_cli("run -c " + quote(testing::fixture_dir() / "run.conf") + " --corpus " + quote(missing) +
                           " -o " + quote(tmp.path() / "out"),
                       tmp);
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find(missing.string()), std::string::npos) << o.err;
  EXPECT_NE(o.err.find("stage parse"), std::string::npos) << o.err;
  EXPECT_FALSE(fs::exists(tmp.path() / "out"));
}

TEST(Cli, ValidationErrorsExitOne) {
  testing::TempDir tmp("cli-bad");
  const fs::path conf = tmp.path() / "bad.conf";
  std::ofstream(conf) << "corpus = x\nflavour = salty\n";
  EXPECT_EQ(folk_cli("run -c " + quote(conf) + " -o " + quote(tmp.path() / "o"), tmp).code, 1);
  EXPECT_EQ(folk_cli("run -c " + quote(testing::fixture_dir() / "run.conf") + " --set colour=red", tmp).code, 1);
  EXPECT_EQ(folk_cli("frobnicate", tmp).code, 1);
  const fs::path bad = tmp.path() / "bad.txt";
  std::ofstream(bad) << "ATU 1 - ok\nbody\n\nATX 2 - broken\n";
  Outcome o = folk_cli("parse " + quote(bad) + " -o " + quote(tmp.path()), tmp);
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("line 4"), std::string::npos) << o.err;
}

TEST(Cli, SubcommandsReproduceGoldenFromIntermediates) {
  testing::TempDir tmp("cli-stages");
  const std::string out = " -o " + quote(tmp.path() / "s");
  const std::vector<std::pair<std::string, std::vector<std::string>>> steps = {
      {"parse " + quote(testing::fixture_dir() / "catalogue.txt"), {"corpus.json"}},
      {"extract --corpus " + quote(golden("corpus.json")) + " --config " + quote(testing::fixture_dir() / "run.conf"),
       {"mentions.json"}},
      {"cooccur --mentions " + quote(golden("mentions.json")) + " --min-weight 1",
       {"cooccurrence.json", "cooccurrence.dot"}},
      {"motifs --corpus " + quote(golden("corpus.json")) + " --mentions " + quote(golden("mentions.json")) +
           " --animal-min-freq 3",
       {"motif_counts.csv", "category_motif_relative.csv", "category_motif_centered.csv", "animal_motif.csv"}},
      {"pca --input " + quote(golden("category_motif_relative.csv")) + " --name category",
       {"pca_category_scores.csv", "pca_category_loadings.csv", "pca_category_ratios.csv", "biplot_category.svg"}},
      {"pca --input " + quote(golden("animal_motif.csv")) + " --name animal --row-normalize",
       {"pca_animal_scores.csv", "pca_animal_loadings.csv", "pca_animal_ratios.csv", "biplot_animal.svg"}},
      {"overlay --graph " + quote(golden("cooccurrence.json")) + " --scores " + quote(golden("pca_animal_scores.csv")) +
           " --loadings " + quote(golden("pca_animal_loadings.csv")),
       {"overlay.svg"}},
  };
  for (const auto& [args, files] : steps) {
    Outcome o = folk_cli(args + out, tmp);
    ASSERT_EQ(o.code, 0) << args << "\n" << o.err;
    for (const auto& f : files) {
      EXPECT_EQ(read_file((tmp.path() / "s" / f).string()), read_file(golden(f).string())) << args << " -> " << f;
    }
  }
}

TEST(Cli, ExtractAcceptsCatalogueText) {
  testing::TempDir tmp("cli-extract");
  Outcome o = folk_cli("extract --corpus " + quote(testing::fixture_dir() / "catalogue.txt") + " --config " +
                           quote(testing::fixture_dir() / "run.conf") + " -o " + quote(tmp.path()),
                       tmp);
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(read_file((tmp.path() / "mentions.json").string()), read_file(golden("mentions.json").string()));
}

TEST(Cli, CooccurGraphmlAndOverlayThreshold) {
  testing::TempDir tmp("cli-graphml");
  Outcome o = folk_cli("cooccur --mentions " + quote(golden("mentions.json")) + " --graphml -o " + quote(tmp.path()), tmp);
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(tmp.path() / "cooccurrence.graphml"));
  // at the default threshold of 10 no fixture edge survives, leaving no node to place
  o = folk_cli("overlay --graph " + quote(tmp.path() / "cooccurrence.json") + " --scores " +
                   quote(golden("pca_animal_scores.csv")) + " --loadings " + quote(golden("pca_animal_loadings.csv")) +
                   " -o " + quote(tmp.path()),
               tmp);
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("no co-occurrence node"), std::string::npos) << o.err;
  EXPECT_FALSE(fs::exists(tmp.path() / "overlay.svg"));
  o = folk_cli("overlay --graph " + quote(tmp.path() / "cooccurrence.json") + " --min-weight 2 --scores " +
                   quote(golden("pca_animal_scores.csv")) + " --loadings " + quote(golden("pca_animal_loadings.csv")) +
                   " -o " + quote(tmp.path()),
               tmp);
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string svg = read_file((tmp.path() / "overlay.svg").string());
  std::size_t edges = 0;
  for (std::size_t at = svg.find("<title>"); at != std::string::npos; at = svg.find("<title>", at + 1)) ++edges;
  EXPECT_EQ(edges, 2u);  // dog--wolf 3 and fox--wolf 4
}

TEST(Cli, VersionAndHelp) {
  testing::TempDir tmp("cli-help");
  Outcome o = folk_cli("--help", tmp);
  EXPECT_EQ(o.code, 0);
  for (const char* sub : {"parse", "extract", "cooccur", "motifs", "pca", "overlay", "run"}) {
    EXPECT_NE(o.out.find(sub), std::string::npos) << sub;
  }
}

}  // namespace
}  // namespace folk
