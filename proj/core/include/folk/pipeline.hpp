#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "folk/cooccurrence.hpp"
#include "folk/extraction.hpp"
#include "folk/lexicon.hpp"
#include "folk/motif_stats.hpp"
#include "folk/pca.hpp"

namespace folk {

std::string_view version();

/// A path as the user wrote it plus where it points. `text` goes into the run manifest;
/// `resolved` is what gets opened.
struct PathSetting {
  std::string text;
  std::filesystem::path resolved;

  bool empty() const { return text.empty(); }
};

struct PipelineConfig {
  PathSetting corpus;
  /// WordNet dict directory (index.noun + data.noun) or a lexicon TSV file.
  PathSetting lexicon;
  PathSetting aliases;
  PathSetting exclusions;
  PathSetting rollup_targets;
  std::string animal_root = "animal";
  long min_count = 5;
  long cooccur_threshold = 10;
  long animal_min_freq = 30;
  CountMode count_mode = CountMode::kOccurrences;
  PairCounting cooccur_mode = PairCounting::kSet;
  MotifUnit motif_unit = MotifUnit::kOccurrences;
  bool substitutions = true;
  /// Row-normalize the animal matrix before PCA ("relative") or use raw counts ("raw").
  bool animal_relative = true;
  std::size_t components = 2;
  bool standardize = false;
  std::optional<double> loading_scale;
  PathSetting output_dir;
};

/// Every key a config file or `--set` may use, in echo order.
const std::vector<std::string_view>& config_keys();

/// Sets one key from its text form. Relative paths resolve against `base`.
/// ValidationError for unknown keys or bad values.
void set_config_value(PipelineConfig& config, std::string_view key, std::string_view value,
                      const std::filesystem::path& base);

/// `key = value` lines; '#' comments and blank lines ignored. Duplicate or unknown keys are
/// rejected with the line number. Relative paths resolve against `base`.
PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base);
PipelineConfig load_config(const std::filesystem::path& path);

/// Required paths present, thresholds non-negative, components >= 2 (biplots need two).
void validate_config(const PipelineConfig& config);

/// Effective value of every key except output_dir, as text.
std::map<std::string, std::string> config_echo(const PipelineConfig& config);

/// Where the lexicon and its tables come from; shared by `extract` and `run`.
struct LexiconSources {
  PathSetting lexicon;
  PathSetting aliases;
  PathSetting exclusions;
  PathSetting rollup_targets;
  std::string animal_root = "animal";
  long min_count = 5;
};
LexiconSources lexicon_sources(const PipelineConfig& config);

/// Loads the lexicon; `digests` (when non-null) receives role -> SHA-256 of every file read.
Lexicon load_lexicon(const LexiconSources& sources, std::map<std::string, std::string>* digests = nullptr);

/// File name -> contents.
using Artifacts = std::map<std::string, std::string>;

// Stages. Each one consumes serialized intermediates and returns serialized artifacts, so the
// `run` pipeline and the individual subcommands produce the same bytes.

/// Catalogue text -> corpus.json.
Artifacts stage_parse(std::string_view catalogue, Diagnostics* diagnostics = nullptr);
/// corpus.json -> mentions.json.
Artifacts stage_extract(std::string_view corpus_json, const Lexicon& lex, const ExtractionOptions& options);
/// mentions.json -> cooccurrence.json (full graph with threshold) + cooccurrence.dot.
Artifacts stage_cooccur(std::string_view mentions_json, PairCounting counting, long threshold);
/// corpus.json (+ mentions.json) -> motif_counts.csv, category_motif_{relative,centered}.csv
/// and, given mentions, animal_motif.csv (raw counts).
Artifacts stage_motifs(std::string_view corpus_json, std::optional<std::string_view> mentions_json,
                       long animal_min_freq, MotifUnit unit);

struct PcaStageOptions {
  /// Output prefix: pca_<name>_*.csv and biplot_<name>.svg.
  std::string name;
  /// Divide each row by its sum first (raw count input).
  bool row_normalize = false;
  std::size_t components = 2;
  bool standardize = false;
  std::optional<double> loading_scale;
};
/// Motif matrix CSV -> scores, loadings, ratios CSVs and the biplot SVG.
Artifacts stage_pca(std::string_view matrix_csv, const PcaStageOptions& options, PcaResult* result = nullptr);

/// cooccurrence.json + animal scores/loadings CSVs -> overlay.svg. `min_weight` overrides
/// the threshold stored in the graph.
Artifacts stage_overlay(std::string_view graph_json, std::string_view scores_csv, std::string_view loadings_csv,
                        std::optional<double> loading_scale, std::optional<long> min_weight,
                        Diagnostics* diagnostics = nullptr);

/// The four statistics a full-catalogue run is compared against.
struct HeadlineStats {
  std::size_t analyzable_tales = 0;
  char argmax_letter = '?';
  double category_cumulative_pc2 = 0;
  double animal_cumulative_pc2 = 0;
};

struct RunReport {
  Artifacts artifacts;
  HeadlineStats headline;
  Diagnostics diagnostics;
};

/// Runs every stage in memory. Throws StageError naming the failing stage.
RunReport run_pipeline_in_memory(const PipelineConfig& config);

/// Runs the pipeline and writes all artifacts, including run_manifest.json, to
/// config.output_dir. Files are staged in a sibling directory and moved in only after every
/// stage succeeded; on failure nothing is left behind.
RunReport run_pipeline(const PipelineConfig& config);

/// Writes each artifact under `dir` (created if missing). IoError on failure.
void write_artifacts(const std::filesystem::path& dir, const Artifacts& artifacts);

}  // namespace folk
