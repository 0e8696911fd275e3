#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "folk/extraction.hpp"

namespace folk {

/// Set: an animal pair counts once per tale. Multiset: per-tale mention counts are
/// multiplied (sensitivity analysis only).
enum class PairCounting { kSet, kMultiset };
std::string_view pair_counting_key(PairCounting c);
PairCounting pair_counting_from_key(std::string_view key);

/// Undirected weighted animal graph; edge keys are sorted pairs, so no (b, a) duplicates.
struct CooccurrenceGraph {
  /// Canonical name -> corpus-wide mention count.
  std::map<std::string, long> nodes;
  /// Weight after subtracting substitution pairs; may be 0.
  std::map<NamePair, long> edges;
  /// Export-time filter: only edges with weight > threshold are rendered.
  std::optional<long> threshold;

  friend bool operator==(const CooccurrenceGraph&, const CooccurrenceGraph&) = default;
};

/// Pair counts per tale minus that tale's substitution pairs (counted in the same unit).
/// Throws InvariantError if a subtraction would go negative.
CooccurrenceGraph build_graph(const MentionTable& table, PairCounting counting = PairCounting::kSet);

/// Keeps edges with weight strictly above `min_weight` and drops nodes left isolated.
/// The result records `min_weight` as its threshold.
CooccurrenceGraph filter_graph(const CooccurrenceGraph& g, long min_weight);

enum class GraphFormat { kDot, kGraphml, kJson };
GraphFormat graph_format_from_key(std::string_view key);

/// DOT and GraphML render the thresholded graph; JSON is the lossless intermediate
/// (all nodes and edges plus the threshold value). Output is sorted and byte-stable.
void export_graph(const CooccurrenceGraph& g, GraphFormat format, std::ostream& out);
std::string export_graph(const CooccurrenceGraph& g, GraphFormat format);

CooccurrenceGraph graph_from_json(std::string_view json);

}  // namespace folk
