#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sclop/dendrogram.hpp"
#include "sclop/sclop.hpp"

namespace sclop {

/// Newick serialization with merge heights as node depths: every branch
/// length is parent height minus child height, leaves sit at depth 0.
std::string to_newick(const Dendrogram& dend);

/// Graphviz DOT rendering; internal nodes carry their merge height.
std::string to_dot(const Dendrogram& dend);

enum class LeafColoring { by_run, by_cluster };

/// Standalone SVG: leaves on the left with their labels, merges drawn as
/// brackets growing rightward proportionally to height, plus a distance
/// axis. Colors follow the run of each leaf or its pruned cluster.
/// `groups` is required for LeafColoring::by_cluster; `annotations`, when
/// given, is appended to each leaf label (one string per leaf).
std::string to_svg(const Dendrogram& dend, LeafColoring coloring,
                   const std::vector<ClusterGroup>* groups = nullptr,
                   const std::vector<std::string>* annotations = nullptr);

/// One named ECDF curve.
struct EcdfCurve {
  std::string name;
  std::vector<double> samples;
};

/// Standalone SVG with step-function ECDF curves over [0, 1] and a legend.
std::string ecdf_svg(const std::vector<EcdfCurve>& curves);

}  // namespace sclop
