#include "folk/cooccurrence.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "xml_util.hpp"

namespace folk {

std::string_view pair_counting_key(PairCounting c) { return c == PairCounting::kSet ? "set" : "multiset"; }

PairCounting pair_counting_from_key(std::string_view key) {
  if (key == "set") return PairCounting::kSet;
  if (key == "multiset") return PairCounting::kMultiset;
  throw ValidationError("pair counting must be 'set' or 'multiset', got '" + std::string(key) + "'");
}

GraphFormat graph_format_from_key(std::string_view key) {
  if (key == "dot") return GraphFormat::kDot;
  if (key == "graphml") return GraphFormat::kGraphml;
  if (key == "json") return GraphFormat::kJson;
  throw ValidationError("graph format must be dot, graphml or json, got '" + std::string(key) + "'");
}

CooccurrenceGraph build_graph(const MentionTable& table, PairCounting counting) {
  CooccurrenceGraph g;
  g.nodes = table.counts;

  std::map<AtuId, std::map<std::string, long>> per_tale_counts;
  if (counting == PairCounting::kMultiset) {
    for (const auto& m : table.mentions) ++per_tale_counts[m.tale_id][m.canonical];
  }

  for (const auto& [id, animals] : table.per_tale_sets) {
    std::map<NamePair, long> local;
    for (auto a = animals.begin(); a != animals.end(); ++a) {
      for (auto b = std::next(a); b != animals.end(); ++b) {
        long w = 1;
        if (counting == PairCounting::kMultiset) w = per_tale_counts[id][*a] * per_tale_counts[id][*b];
        local[{*a, *b}] += w;
      }
    }
    if (auto it = table.substitution_pairs.find(id); it != table.substitution_pairs.end()) {
      std::vector<NamePair> subs = it->second;
      if (counting == PairCounting::kSet) subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
      for (const auto& pair : subs) {
        auto hit = local.find(pair);
        if (hit == local.end() || hit->second == 0) {
          throw InvariantError("tale " + id.str() + ": substitution pair (" + pair.first + ", " + pair.second +
                               ") exceeds its co-occurrence count");
        }
        --hit->second;
      }
    }
    for (const auto& [pair, w] : local) g.edges[pair] += w;
  }
  return g;
}

CooccurrenceGraph filter_graph(const CooccurrenceGraph& g, long min_weight) {
  if (min_weight < 0) throw DomainError("min_weight must be >= 0");
  CooccurrenceGraph out;
  out.threshold = min_weight;
  for (const auto& [pair, w] : g.edges) {
    if (w <= min_weight) continue;
    out.edges.emplace(pair, w);
    for (const auto* name : {&pair.first, &pair.second}) {
      auto it = g.nodes.find(*name);
      out.nodes[*name] = it == g.nodes.end() ? 0 : it->second;
    }
  }
  return out;
}

namespace {

// Nine-step light-grey to near-black ramp.
constexpr std::array<std::string_view, 9> kRamp = {"#c8c8c8", "#b0b0b0", "#989898", "#808080", "#686868",
                                                   "#505050", "#383838", "#202020", "#080808"};
constexpr double kMinPen = 1.0;
constexpr double kMaxPen = 8.0;

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

void write_dot(const CooccurrenceGraph& g, std::ostream& out) {
  long lo = 0, hi = 0;
  bool first = true;
  for (const auto& [pair, w] : g.edges) {
    lo = first ? w : std::min(lo, w);
    hi = first ? w : std::max(hi, w);
    first = false;
  }
  out << "graph cooccurrence {\n";
  out << "  graph [overlap=false, splines=true];\n";
  out << "  node [shape=ellipse, fontname=\"Helvetica\"];\n";
  for (const auto& [name, count] : g.nodes) {
    out << "  " << dot_quote(name) << " [count=" << count << "];\n";
  }
  for (const auto& [pair, w] : g.edges) {
    double t = hi > lo ? static_cast<double>(w - lo) / static_cast<double>(hi - lo) : 1.0;
    double pen = kMinPen + t * (kMaxPen - kMinPen);
    auto step = static_cast<std::size_t>(t * 8.0 + 0.5);
    out << "  " << dot_quote(pair.first) << " -- " << dot_quote(pair.second) << " [weight=" << w
        << ", penwidth=" << fmt::format("{:.3f}", pen) << ", color=\"" << kRamp[step] << "\"];\n";
  }
  out << "}\n";
}

void write_graphml(const CooccurrenceGraph& g, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"count\" for=\"node\" attr.name=\"count\" attr.type=\"long\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      << "  <graph id=\"cooccurrence\" edgedefault=\"undirected\">\n";
  for (const auto& [name, count] : g.nodes) {
    out << "    <node id=\"" << detail::xml_escape(name) << "\"><data key=\"count\">" << count << "</data></node>\n";
  }
  std::size_t e = 0;
  for (const auto& [pair, w] : g.edges) {
    out << "    <edge id=\"e" << e++ << "\" source=\"" << detail::xml_escape(pair.first) << "\" target=\""
        << detail::xml_escape(pair.second) << "\"><data key=\"weight\">" << w << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_json(const CooccurrenceGraph& g, std::ostream& out) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& [name, count] : g.nodes) nodes.push_back({{"name", name}, {"count", count}});
  json edges = json::array();
  for (const auto& [pair, w] : g.edges) {
    edges.push_back({{"source", pair.first}, {"target", pair.second}, {"weight", w}});
  }
  json doc = {{"nodes", std::move(nodes)}, {"edges", std::move(edges)},
              {"threshold", g.threshold ? json(*g.threshold) : json(nullptr)}};
  out << doc.dump(2) << "\n";
}

}  // namespace

void export_graph(const CooccurrenceGraph& g, GraphFormat format, std::ostream& out) {
  if (format == GraphFormat::kJson) {
    write_json(g, out);
  } else {
    const CooccurrenceGraph shown = g.threshold ? filter_graph(g, *g.threshold) : g;
    if (format == GraphFormat::kDot) {
      write_dot(shown, out);
    } else {
      write_graphml(shown, out);
    }
  }
  if (!out) throw IoError("failed writing graph export");
}

std::string export_graph(const CooccurrenceGraph& g, GraphFormat format) {
  std::ostringstream ss;
  export_graph(g, format, ss);
  return ss.str();
}

CooccurrenceGraph graph_from_json(std::string_view text) {
  using nlohmann::json;
  CooccurrenceGraph g;
  try {
    json doc = json::parse(text);
    for (const auto& n : doc.at("nodes")) g.nodes[n.at("name").get<std::string>()] = n.at("count").get<long>();
    for (const auto& e : doc.at("edges")) {
      auto a = e.at("source").get<std::string>();
      auto b = e.at("target").get<std::string>();
      long w = e.at("weight").get<long>();
      if (a >= b) throw ValidationError("graph JSON: edge (" + a + ", " + b + ") is not a sorted distinct pair");
      if (w < 0) throw ValidationError("graph JSON: negative edge weight");
      if (!g.nodes.count(a) || !g.nodes.count(b)) throw ValidationError("graph JSON: edge references unknown node");
      g.edges[{a, b}] = w;
    }
    if (const auto& t = doc.at("threshold"); !t.is_null()) g.threshold = t.get<long>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("graph JSON: ") + e.what());
  }
  return g;
}

}  // namespace folk
