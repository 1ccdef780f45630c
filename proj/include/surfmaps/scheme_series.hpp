#pragma once

#include <string>
#include <vector>

#include "surfmaps/decomposition.hpp"
#include "surfmaps/series.hpp"
#include "surfmaps/surface.hpp"

namespace surfmaps {

/// Labeled scheme from an unlabeled one: corner label = relative label plus
/// the height of its vertex (vertices numbered as in cells(s)). Throws
/// RootNotZero unless the root corner lands on 0.
LabeledScheme label_scheme(const FlagMap& s, const std::vector<int>& heights);

/// Every labeled scheme over s whose vertex heights lie in [lo, hi].
std::vector<LabeledScheme> labeled_schemes_in_window(const FlagMap& s, int lo, int hi);

/// Cores with scheme l by rootable stem colour, from the product of one
/// factor per real rootable stem and one per edge. Variables (t_black, t_white).
/// A real root bud counts with the colour opposite to its labels (black), the
/// way the face replaces the root bud in the face colour weight; with that
/// choice the shortcut sums reproduce the face-coloured series exactly.
Series core_series_from_scheme(const LabeledScheme& l, int order);
/// Same series by building every decorated core up to the order.
Series core_series_direct(const LabeledScheme& l, int order);

/// C_s summed over all labelings, grouped by binary surjections.
Series scheme_class_series(const FlagMap& s, int order);
/// Reference: plain sum of the product formula over heights in [-window, window].
Series scheme_class_series_window(const FlagMap& s, int order, int window);

/// C(t_black, t_white) + C(t_white, t_black).
Series symmetrized(const Series& c);

/// Rooted schemes of one unrooted class.
struct SchemeClass {
    std::string key;
    int rootable_corners = 0;
    std::vector<FlagMap> members;
};

std::vector<SchemeClass> scheme_classes(const SurfaceId& surface);

/// Well-rooted four-valent maps of the class, by rootable stem colour:
/// symmetrized class series with trees substituted, over the number of
/// rootable corners. Variables (z_black, z_white).
Series R_from_scheme(const SchemeClass& c, int order);
/// Sum over every class of the surface.
Series R_from_schemes(const SurfaceId& surface, int order);

}  // namespace surfmaps
