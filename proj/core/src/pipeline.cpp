#include "folk/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "folk/csv.hpp"
#include "folk/digest.hpp"
#include "folk/render.hpp"
#include "text_util.hpp"

namespace folk {

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef FOLK_VERSION
#define FOLK_VERSION "0.0.0"
#endif

std::string_view version() { return FOLK_VERSION; }

namespace {

long parse_count(std::string_view key, std::string_view value) {
  long out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ValidationError(fmt::format("{} must be an integer, got '{}'", key, value));
  }
  if (out < 0) throw ValidationError(fmt::format("{} must be >= 0, got {}", key, out));
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  // from_chars for double is missing from older libstdc++; strtod on a copy is fine here.
  std::string copy(value);
  char* end = nullptr;
  double out = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(out)) {
    throw ValidationError(fmt::format("{} must be a number, got '{}'", key, value));
  }
  return out;
}

bool parse_switch(std::string_view key, std::string_view value) {
  const std::string v = detail::to_lower(value);
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw ValidationError(fmt::format("{} must be on or off, got '{}'", key, value));
}

PathSetting make_path(std::string_view value, const fs::path& base) {
  PathSetting p{std::string(value), fs::path(value)};
  if (!p.text.empty() && p.resolved.is_relative() && !base.empty()) p.resolved = base / p.resolved;
  p.resolved = p.resolved.lexically_normal();
  return p;
}

std::string slurp(const PathSetting& p, std::string_view role) {
  if (p.empty()) throw ValidationError(fmt::format("no {} path configured", role));
  return read_file(p.resolved.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string timestamp() {
  using namespace std::chrono;
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = system_clock::to_time_t(system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Runs `body`, tagging any library failure with the stage name.
template <typename F>
auto in_stage(std::string_view stage, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(std::string(stage), e.exit_code(), e.what());
  } catch (const json::exception& e) {
    throw StageError(std::string(stage), ExitCode::kValidation, e.what());
  } catch (const std::exception& e) {
    throw StageError(std::string(stage), ExitCode::kInternal, e.what());
  }
}

const std::string& expect(const Artifacts& a, const std::string& name) {
  auto it = a.find(name);
  if (it == a.end()) throw InvariantError("stage did not produce " + name);
  return it->second;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "corpus",          "lexicon",   "aliases",       "exclusions", "rollup_targets", "animal_root",
      "min_count",       "cooccur_threshold", "animal_min_freq", "count_mode", "cooccur_mode", "motif_unit",
      "substitutions",   "animal_matrix", "components", "standardize", "loading_scale", "output_dir"};
  return keys;
}

void set_config_value(PipelineConfig& c, std::string_view key, std::string_view raw, const fs::path& base) {
  const std::string_view value = detail::trim(raw);
  if (key == "corpus") {
    c.corpus = make_path(value, base);
  } else if (key == "lexicon") {
    c.lexicon = make_path(value, base);
  } else if (key == "aliases") {
    c.aliases = make_path(value, base);
  } else if (key == "exclusions") {
    c.exclusions = make_path(value, base);
  } else if (key == "rollup_targets") {
    c.rollup_targets = make_path(value, base);
  } else if (key == "output_dir") {
    c.output_dir = make_path(value, base);
  } else if (key == "animal_root") {
    c.animal_root = detail::to_lower(value);
  } else if (key == "min_count") {
    c.min_count = parse_count(key, value);
  } else if (key == "cooccur_threshold") {
    c.cooccur_threshold = parse_count(key, value);
  } else if (key == "animal_min_freq") {
    c.animal_min_freq = parse_count(key, value);
  } else if (key == "count_mode") {
    c.count_mode = count_mode_from_key(value);
  } else if (key == "cooccur_mode") {
    c.cooccur_mode = pair_counting_from_key(value);
  } else if (key == "motif_unit") {
    c.motif_unit = motif_unit_from_key(value);
  } else if (key == "substitutions") {
    c.substitutions = parse_switch(key, value);
  } else if (key == "animal_matrix") {
    if (value != "relative" && value != "raw") {
      throw ValidationError(fmt::format("animal_matrix must be relative or raw, got '{}'", value));
    }
    c.animal_relative = value == "relative";
  } else if (key == "components") {
    c.components = static_cast<std::size_t>(parse_count(key, value));
  } else if (key == "standardize") {
    c.standardize = parse_switch(key, value);
  } else if (key == "loading_scale") {
    if (value == "auto" || value.empty()) {
      c.loading_scale.reset();
    } else {
      c.loading_scale = parse_real(key, value);
      if (*c.loading_scale < 0) throw ValidationError("loading_scale must be >= 0");
    }
  } else {
    throw ValidationError(fmt::format("unknown config key '{}'", key));
  }
}

PipelineConfig parse_config(std::string_view text, const fs::path& base) {
  PipelineConfig c;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    std::string_view t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    std::string key(detail::trim(t.substr(0, eq)));
    if (!seen.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");
    try {
      set_config_value(c, key, t.substr(eq + 1), base);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return c;
}

PipelineConfig load_config(const fs::path& path) {
  return parse_config(read_file(path.string()), path.parent_path());
}

void validate_config(const PipelineConfig& c) {
  const std::pair<const PathSetting*, std::string_view> required[] = {
      {&c.corpus, "corpus"}, {&c.lexicon, "lexicon"}, {&c.output_dir, "output_dir"}};
  for (const auto& [p, name] : required) {
    if (p->empty()) throw ValidationError(fmt::format("config: '{}' is required", name));
  }
  if (c.components < 2) throw ValidationError("config: components must be >= 2 for the biplots");
  if (c.animal_root.empty()) throw ValidationError("config: animal_root is empty");
}

std::map<std::string, std::string> config_echo(const PipelineConfig& c) {
  return {
      {"corpus", c.corpus.text},
      {"lexicon", c.lexicon.text},
      {"aliases", c.aliases.text},
      {"exclusions", c.exclusions.text},
      {"rollup_targets", c.rollup_targets.text},
      {"animal_root", c.animal_root},
      {"min_count", std::to_string(c.min_count)},
      {"cooccur_threshold", std::to_string(c.cooccur_threshold)},
      {"animal_min_freq", std::to_string(c.animal_min_freq)},
      {"count_mode", std::string(count_mode_key(c.count_mode))},
      {"cooccur_mode", std::string(pair_counting_key(c.cooccur_mode))},
      {"motif_unit", std::string(motif_unit_key(c.motif_unit))},
      {"substitutions", c.substitutions ? "on" : "off"},
      {"animal_matrix", c.animal_relative ? "relative" : "raw"},
      {"components", std::to_string(c.components)},
      {"standardize", c.standardize ? "on" : "off"},
      {"loading_scale", c.loading_scale ? format_number(*c.loading_scale) : "auto"},
  };
}

LexiconSources lexicon_sources(const PipelineConfig& c) {
  return {c.lexicon, c.aliases, c.exclusions, c.rollup_targets, c.animal_root, c.min_count};
}

Lexicon load_lexicon(const LexiconSources& s, std::map<std::string, std::string>* digests) {
  auto note = [&](const std::string& role, const std::string& bytes) {
    if (digests) (*digests)[role] = sha256_hex(bytes);
  };
  if (s.lexicon.empty()) throw ValidationError("no lexicon configured");
  SynsetMap synsets;
  std::error_code ec;
  if (fs::is_directory(s.lexicon.resolved, ec)) {
    const std::string index = read_file((s.lexicon.resolved / "index.noun").string());
    const std::string data = read_file((s.lexicon.resolved / "data.noun").string());
    note("lexicon/index.noun", index);
    note("lexicon/data.noun", data);
    std::istringstream is(index), ds(data);
    synsets = load_wordnet_nouns(is, ds);
  } else {
    const std::string tsv = read_file(s.lexicon.resolved.string());
    note("lexicon", tsv);
    std::istringstream in(tsv);
    synsets = load_lexicon_tsv(in);
  }
  LexiconTables tables;
  tables.min_count = s.min_count;
  if (!s.aliases.empty()) {
    const std::string bytes = slurp(s.aliases, "aliases");
    note("aliases", bytes);
    std::istringstream in(bytes);
    tables.aliases = load_alias_table(in);
  }
  if (!s.exclusions.empty()) {
    const std::string bytes = slurp(s.exclusions, "exclusions");
    note("exclusions", bytes);
    std::istringstream in(bytes);
    tables.exclusions = load_word_list(in);
  }
  if (!s.rollup_targets.empty()) {
    const std::string bytes = slurp(s.rollup_targets, "rollup_targets");
    note("rollup_targets", bytes);
    std::istringstream in(bytes);
    tables.rollup_targets = load_word_list(in);
  }
  return Lexicon(std::move(synsets), s.animal_root, std::move(tables));
}

Artifacts stage_parse(std::string_view catalogue, Diagnostics* diagnostics) {
  return {{"corpus.json", corpus_to_json(parse_corpus(catalogue, diagnostics))}};
}

Artifacts stage_extract(std::string_view corpus_json, const Lexicon& lex, const ExtractionOptions& options) {
  return {{"mentions.json", mentions_to_json(extract_mentions(corpus_from_json(corpus_json), lex, options))}};
}

Artifacts stage_cooccur(std::string_view mentions_json, PairCounting counting, long threshold) {
  if (threshold < 0) throw DomainError("co-occurrence threshold must be >= 0");
  CooccurrenceGraph g = build_graph(mentions_from_json(mentions_json), counting);
  g.threshold = threshold;
  return {{"cooccurrence.json", export_graph(g, GraphFormat::kJson)},
          {"cooccurrence.dot", export_graph(g, GraphFormat::kDot)}};
}

Artifacts stage_motifs(std::string_view corpus_json, std::optional<std::string_view> mentions_json,
                       long animal_min_freq, MotifUnit unit) {
  const Corpus corpus = corpus_from_json(corpus_json);
  Artifacts out;
  out["motif_counts.csv"] = letter_counts_to_csv(motif_letter_counts(corpus, unit));
  const MotifMatrix relative = to_relative(category_motif_matrix(corpus, unit));
  out["category_motif_relative.csv"] = motif_matrix_to_csv(relative);
  out["category_motif_centered.csv"] = motif_matrix_to_csv(center_columns(relative));
  if (mentions_json) {
    const MentionTable table = mentions_from_json(*mentions_json);
    out["animal_motif.csv"] = motif_matrix_to_csv(animal_motif_matrix(corpus, table, animal_min_freq, unit));
  }
  return out;
}

Artifacts stage_pca(std::string_view matrix_csv, const PcaStageOptions& options, PcaResult* result) {
  if (options.name.empty()) throw ValidationError("PCA output name is empty");
  MotifMatrix m = motif_matrix_from_csv(matrix_csv, options.row_normalize ? MatrixKind::kRawCounts
                                                                          : MatrixKind::kRelative);
  if (options.row_normalize) m = to_relative(m);
  PcaResult r = pca(m, options.components, {options.standardize});
  const std::string prefix = "pca_" + options.name;
  Artifacts out;
  out[prefix + "_scores.csv"] = scores_to_csv(r);
  out[prefix + "_loadings.csv"] = loadings_to_csv(r);
  out[prefix + "_ratios.csv"] = ratios_to_csv(r);
  out["biplot_" + options.name + ".svg"] = render_biplot_svg(biplot_coordinates(r, options.loading_scale));
  if (result) *result = std::move(r);
  return out;
}

Artifacts stage_overlay(std::string_view graph_json, std::string_view scores_csv, std::string_view loadings_csv,
                        std::optional<double> loading_scale, std::optional<long> min_weight,
                        Diagnostics* diagnostics) {
  CooccurrenceGraph g = graph_from_json(graph_json);
  if (min_weight) g.threshold = *min_weight;
  if (g.threshold) g = filter_graph(g, *g.threshold);
  const Biplot b = biplot_from_csv(scores_csv, loadings_csv, loading_scale);
  return {{"overlay.svg", render_overlay_svg(g, b, diagnostics)}};
}

RunReport run_pipeline_in_memory(const PipelineConfig& config) {
  in_stage("config", [&] {
    validate_config(config);
    return 0;
  });
  RunReport report;
  Artifacts& a = report.artifacts;
  std::map<std::string, std::string> digests;

  const std::string catalogue = in_stage("parse", [&] { return slurp(config.corpus, "corpus"); });
  digests["corpus"] = sha256_hex(catalogue);
  a.merge(in_stage("parse", [&] { return stage_parse(catalogue, &report.diagnostics); }));
  const std::string& corpus_json = expect(a, "corpus.json");

  const Lexicon lex = in_stage("lexicon", [&] { return load_lexicon(lexicon_sources(config), &digests); });
  a.merge(in_stage("extract", [&] {
    return stage_extract(corpus_json, lex, {config.count_mode, config.substitutions});
  }));
  const std::string& mentions_json = expect(a, "mentions.json");

  a.merge(in_stage("cooccur", [&] { return stage_cooccur(mentions_json, config.cooccur_mode, config.cooccur_threshold); }));
  a.merge(in_stage("motifs", [&] {
    return stage_motifs(corpus_json, mentions_json, config.animal_min_freq, config.motif_unit);
  }));

  PcaResult category, animal;
  a.merge(in_stage("pca", [&] {
    return stage_pca(expect(a, "category_motif_relative.csv"),
                     {"category", false, config.components, config.standardize, config.loading_scale}, &category);
  }));
  a.merge(in_stage("pca", [&] {
    return stage_pca(expect(a, "animal_motif.csv"),
                     {"animal", config.animal_relative, config.components, config.standardize, config.loading_scale},
                     &animal);
  }));
  a.merge(in_stage("overlay", [&] {
    return stage_overlay(expect(a, "cooccurrence.json"), expect(a, "pca_animal_scores.csv"),
                         expect(a, "pca_animal_loadings.csv"), config.loading_scale, std::nullopt,
                         &report.diagnostics);
  }));

  in_stage("report", [&] {
    const Corpus corpus = corpus_from_json(corpus_json);
    HeadlineStats& h = report.headline;
    h.analyzable_tales = corpus.analyzable_count();
    long best = -1;
    for (const auto& [letter, n] : motif_letter_counts(corpus, config.motif_unit)) {
      if (n > best) {
        best = n;
        h.argmax_letter = letter;
      }
    }
    h.category_cumulative_pc2 = category.cumulative_ratio.at(1);
    h.animal_cumulative_pc2 = animal.cumulative_ratio.at(1);

    json manifest;
    manifest["tool"] = {{"name", "folk"}, {"version", std::string(version())}};
    manifest["generated_at"] = timestamp();
    manifest["config"] = config_echo(config);
    manifest["inputs"] = digests;
    json artifacts = json::object();
    for (const auto& [name, bytes] : a) artifacts[name] = sha256_hex(bytes);
    manifest["artifacts"] = artifacts;
    manifest["summary"] = {
        {"analyzable_tales", h.analyzable_tales},
        {"argmax_motif_letter", std::string(1, h.argmax_letter)},
        {"category_cumulative_ratio_pc2", std::stod(format_number(h.category_cumulative_pc2))},
        {"animal_cumulative_ratio_pc2", std::stod(format_number(h.animal_cumulative_pc2))},
    };
    json diags = json::array();
    for (const auto& d : report.diagnostics) diags.push_back({{"line", d.line}, {"message", d.message}});
    manifest["diagnostics"] = diags;
    a["run_manifest.json"] = dump(manifest);
    return 0;
  });
  return report;
}

void write_artifacts(const fs::path& dir, const Artifacts& artifacts) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", dir.string(), ec.message()));
  for (const auto& [name, bytes] : artifacts) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  }
}

RunReport run_pipeline(const PipelineConfig& config) {
  RunReport report = run_pipeline_in_memory(config);
  const fs::path out_dir = config.output_dir.resolved;
  fs::path staging = out_dir;
  staging += ".partial";
  std::error_code ec;
  std::vector<fs::path> moved;
  try {
    fs::remove_all(staging, ec);
    write_artifacts(staging, report.artifacts);
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", out_dir.string(), ec.message()));
    for (const auto& [name, unused] : report.artifacts) {
      fs::rename(staging / name, out_dir / name, ec);
      if (ec) throw IoError(fmt::format("cannot move '{}' into '{}': {}", name, out_dir.string(), ec.message()));
      moved.push_back(out_dir / name);
    }
    fs::remove_all(staging, ec);
  } catch (const Error& e) {
    for (const auto& p : moved) fs::remove(p, ec);
    fs::remove_all(staging, ec);
    throw StageError("write", e.exit_code(), e.what());
  }
  return report;
}

}  // namespace folk
