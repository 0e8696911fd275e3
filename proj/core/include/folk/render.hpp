#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "folk/cooccurrence.hpp"
#include "folk/error.hpp"
#include "folk/pca.hpp"

namespace folk {

/// Labeled points and labeled arrows from the origin. The viewBox spans the data extent
/// (origin included) plus a 10% margin on each side; y grows upward. Arrows shorter than
/// 1e-9 of the longest one are omitted.
void render_biplot_svg(const Biplot& biplot, std::ostream& out);
std::string render_biplot_svg(const Biplot& biplot);

/// Co-occurrence edges drawn between the animals' biplot points, stroke width linear in
/// weight. Graph nodes without a biplot point are dropped and reported in `diagnostics`;
/// ValidationError if no graph node has a point.
void render_overlay_svg(const CooccurrenceGraph& graph, const Biplot& biplot, std::ostream& out,
                        Diagnostics* diagnostics = nullptr);
std::string render_overlay_svg(const CooccurrenceGraph& graph, const Biplot& biplot,
                               Diagnostics* diagnostics = nullptr);

}  // namespace folk
