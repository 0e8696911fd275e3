// folk: command-line driver for the tale-catalogue pipeline.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "folk/digest.hpp"
#include "folk/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

void print_diagnostics(const folk::Diagnostics& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.line) {
      fmt::print(stderr, "folk: warning: line {}: {}\n", d.line, d.message);
    } else {
      fmt::print(stderr, "folk: warning: {}\n", d.message);
    }
  }
}

void emit(const fs::path& dir, const folk::Artifacts& artifacts) {
  folk::write_artifacts(dir, artifacts);
  for (const auto& [name, unused] : artifacts) fmt::print("{}\n", (dir / name).string());
}

// Corpus input for downstream stages: corpus.json as is, or a catalogue parsed on the fly.
std::string corpus_json_from(const std::string& path, folk::Diagnostics* diagnostics) {
  std::string bytes = folk::read_file(path);
  auto first = bytes.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && bytes[first] == '{') return bytes;
  return folk::stage_parse(bytes, diagnostics).at("corpus.json");
}

struct Overrides {
  std::vector<std::pair<std::string, std::string>> values;

  // Records `--flag value` as a config key override.
  void bind(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values.emplace_back(key, v); }, help);
  }
  void bind_switch(CLI::App* app, const std::string& flag, const std::string& key, const std::string& value,
                   const std::string& help) {
    app->add_flag_callback(flag, [this, key, value] { values.emplace_back(key, value); }, help);
  }
  void apply(folk::PipelineConfig& config) const {
    for (const auto& [key, value] : values) folk::set_config_value(config, key, value, {});
  }
};

void bind_lexicon(CLI::App* app, Overrides& o) {
  o.bind(app, "--lexicon", "lexicon", "WordNet dict directory or lexicon TSV");
  o.bind(app, "--aliases", "aliases", "alias table (variant<TAB>canonical)");
  o.bind(app, "--exclusions", "exclusions", "lemmas never counted as animals");
  o.bind(app, "--rollup-targets", "rollup_targets", "names rare animals may roll up to");
  o.bind(app, "--root", "animal_root", "animal root synset id or lemma (default: animal)");
  o.bind(app, "--min-count", "min_count", "rollup threshold (default 5)");
  o.bind(app, "--count-mode", "count_mode", "occurrences | tale-presence");
  o.bind_switch(app, "--no-substitutions", "substitutions", "off", "skip parenthetical substitution detection");
}

folk::PipelineConfig config_from(const std::string& config_path, const std::vector<std::string>& sets,
                                 const Overrides& overrides) {
  folk::PipelineConfig config;
  if (!config_path.empty()) config = folk::load_config(config_path);
  for (const auto& kv : sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw folk::ValidationError("--set expects key=value, got '" + kv + "'");
    folk::set_config_value(config, kv.substr(0, eq), kv.substr(eq + 1), {});
  }
  overrides.apply(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Animal-tale catalogue analysis: parsing, animal extraction, co-occurrence, motif statistics, PCA"};
  app.set_version_flag("--version", std::string(folk::version()));
  app.require_subcommand(1);

  std::string stage;
  std::string out_dir = ".";
  folk::Diagnostics diagnostics;

  // parse
  auto* parse = app.add_subcommand("parse", "Parse a catalogue file into corpus.json");
  std::string parse_input;
  parse->add_option("catalogue", parse_input, "catalogue text file")->required();
  parse->add_option("-o,--out-dir", out_dir, "output directory");
  parse->callback([&] {
    emit(out_dir, folk::stage_parse(folk::read_file(parse_input), &diagnostics));
  });

  // extract
  auto* extract = app.add_subcommand("extract", "Find animal mentions and substitution pairs");
  std::string extract_corpus, extract_config;
  Overrides extract_overrides;
  extract->add_option("--corpus", extract_corpus, "corpus.json or catalogue file")->required();
  extract->add_option("--config", extract_config, "run config supplying lexicon settings");
  bind_lexicon(extract, extract_overrides);
  extract->add_option("-o,--out-dir", out_dir, "output directory");
  extract->callback([&] {
    folk::PipelineConfig config = config_from(extract_config, {}, extract_overrides);
    const folk::Lexicon lex = folk::load_lexicon(folk::lexicon_sources(config));
    const std::string corpus = corpus_json_from(extract_corpus, &diagnostics);
    emit(out_dir, folk::stage_extract(corpus, lex, {config.count_mode, config.substitutions}));
  });

  // cooccur
  auto* cooccur = app.add_subcommand("cooccur", "Build the substitution-adjusted co-occurrence graph");
  std::string cooccur_mentions, cooccur_mode = "set";
  long min_weight = 10;
  bool graphml = false;
  cooccur->add_option("--mentions", cooccur_mentions, "mentions.json")->required();
  cooccur->add_option("--min-weight", min_weight, "export threshold: keep edges with weight > k")
      ->capture_default_str();
  cooccur->add_option("--mode", cooccur_mode, "set | multiset")->capture_default_str();
  cooccur->add_flag("--graphml", graphml, "also write cooccurrence.graphml");
  cooccur->add_option("-o,--out-dir", out_dir, "output directory");
  cooccur->callback([&] {
    const std::string mentions = folk::read_file(cooccur_mentions);
    folk::Artifacts a = folk::stage_cooccur(mentions, folk::pair_counting_from_key(cooccur_mode), min_weight);
    if (graphml) {
      a["cooccurrence.graphml"] =
          folk::export_graph(folk::graph_from_json(a.at("cooccurrence.json")), folk::GraphFormat::kGraphml);
    }
    emit(out_dir, a);
  });

  // motifs
  auto* motifs = app.add_subcommand("motifs", "Motif letter counts and category/animal matrices");
  std::string motifs_corpus, motifs_mentions;
  long animal_min_freq = 30;
  bool per_tale = false;
  motifs->add_option("--corpus", motifs_corpus, "corpus.json or catalogue file")->required();
  motifs->add_option("--mentions", motifs_mentions, "mentions.json (enables animal_motif.csv)");
  motifs->add_option("--animal-min-freq", animal_min_freq, "animals with count > n become rows")
      ->capture_default_str();
  motifs->add_flag("--per-tale", per_tale, "count letter presence per tale instead of occurrences");
  motifs->add_option("-o,--out-dir", out_dir, "output directory");
  motifs->callback([&] {
    const std::string corpus = corpus_json_from(motifs_corpus, &diagnostics);
    std::optional<std::string> mentions;
    if (!motifs_mentions.empty()) mentions = folk::read_file(motifs_mentions);
    std::optional<std::string_view> view;
    if (mentions) view = *mentions;
    emit(out_dir, folk::stage_motifs(corpus, view, animal_min_freq,
                                     per_tale ? folk::MotifUnit::kPerTale : folk::MotifUnit::kOccurrences));
  });

  // pca
  auto* pca = app.add_subcommand("pca", "PCA of a motif matrix CSV, with biplot");
  std::string pca_input, pca_name = "category";
  bool row_normalize = false, standardize = false;
  std::size_t components = 2;
  std::optional<double> loading_scale;
  pca->add_option("--input", pca_input, "motif matrix CSV (label,A,...,Z)")->required();
  pca->add_option("--name", pca_name, "output prefix: pca_<name>_*.csv, biplot_<name>.svg")->capture_default_str();
  pca->add_flag("--row-normalize", row_normalize, "input holds raw counts; divide rows by their sums first");
  pca->add_option("--components", components, "number of components (>= 2)")->capture_default_str();
  pca->add_flag("--standardize", standardize, "scale centered columns to unit variance");
  pca->add_option("--loading-scale", loading_scale, "arrow scale (default: longest arrow = 80% of point radius)");
  pca->add_option("-o,--out-dir", out_dir, "output directory");
  pca->callback([&] {
    if (components < 2) throw folk::ValidationError("--components must be >= 2 for the biplot");
    emit(out_dir, folk::stage_pca(folk::read_file(pca_input),
                                  {pca_name, row_normalize, components, standardize, loading_scale}));
  });

  // overlay
  auto* overlay = app.add_subcommand("overlay", "Draw co-occurrence edges over the animal biplot");
  std::string overlay_graph, overlay_scores, overlay_loadings;
  std::optional<long> overlay_min_weight;
  std::optional<double> overlay_scale;
  overlay->add_option("--graph", overlay_graph, "cooccurrence.json")->required();
  overlay->add_option("--scores", overlay_scores, "pca_animal_scores.csv")->required();
  overlay->add_option("--loadings", overlay_loadings, "pca_animal_loadings.csv")->required();
  overlay->add_option("--min-weight", overlay_min_weight, "override the graph's stored threshold");
  overlay->add_option("--loading-scale", overlay_scale, "arrow scale");
  overlay->add_option("-o,--out-dir", out_dir, "output directory");
  overlay->callback([&] {
    emit(out_dir, folk::stage_overlay(folk::read_file(overlay_graph), folk::read_file(overlay_scores),
                                      folk::read_file(overlay_loadings), overlay_scale, overlay_min_weight,
                                      &diagnostics));
  });

  // run
  auto* run = app.add_subcommand("run", "Full pipeline from catalogue to report");
  std::string run_config;
  std::vector<std::string> run_sets;
  Overrides run_overrides;
  run->add_option("-c,--config", run_config, "key = value config file");
  run->add_option("--set", run_sets, "override a config key (key=value); repeatable");
  run_overrides.bind(run, "--corpus", "corpus", "catalogue file");
  bind_lexicon(run, run_overrides);
  run_overrides.bind(run, "--min-weight,--cooccur-threshold", "cooccur_threshold", "edges drawn need weight > k");
  run_overrides.bind(run, "--animal-min-freq", "animal_min_freq", "animals with count > n enter the animal PCA");
  run_overrides.bind(run, "--cooccur-mode", "cooccur_mode", "set | multiset");
  run_overrides.bind(run, "--animal-matrix", "animal_matrix", "relative | raw");
  run_overrides.bind(run, "--components", "components", "number of components (>= 2)");
  run_overrides.bind(run, "--loading-scale", "loading_scale", "biplot arrow scale");
  run_overrides.bind_switch(run, "--per-tale", "motif_unit", "per-tale", "count motif letters once per tale");
  run_overrides.bind_switch(run, "--standardize", "standardize", "on", "scale columns to unit variance");
  run_overrides.bind(run, "-o,--output-dir", "output_dir", "artifact directory");
  run->callback([&] {
    const folk::PipelineConfig config = config_from(run_config, run_sets, run_overrides);
    const folk::RunReport report = folk::run_pipeline(config);
    diagnostics = report.diagnostics;
    const auto& h = report.headline;
    fmt::print("analyzable tale types: {}\n", h.analyzable_tales);
    fmt::print("most frequent motif letter: {}\n", h.argmax_letter);
    fmt::print("category PCA cumulative ratio (PC1-2): {:.4f}\n", h.category_cumulative_pc2);
    fmt::print("animal PCA cumulative ratio (PC1-2): {:.4f}\n", h.animal_cumulative_pc2);
    fmt::print("wrote {} files to {}\n", report.artifacts.size(), config.output_dir.resolved.string());
  });

  for (auto* sub : app.get_subcommands({})) {
    sub->preparse_callback([&stage, sub](std::size_t) { stage = sub->get_name(); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(folk::ExitCode::kValidation);
  } catch (const folk::StageError& e) {
    print_diagnostics(diagnostics);
    fmt::print(stderr, "folk {}: error in stage {}\n", stage, e.what());
    return static_cast<int>(e.exit_code());
  } catch (const folk::Error& e) {
    print_diagnostics(diagnostics);
    fmt::print(stderr, "folk {}: error: {}\n", stage, e.what());
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    fmt::print(stderr, "folk {}: internal error: {}\n", stage, e.what());
    return static_cast<int>(folk::ExitCode::kInternal);
  }
  print_diagnostics(diagnostics);
  return 0;
}
