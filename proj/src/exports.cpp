#include "sclop/exports.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sclop {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

// Dark2 palette, cycled when more series are needed.
const char* const kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                "#66a61e", "#e6ab02", "#a6761d", "#666666"};
constexpr int kPaletteSize = 8;

const char* color_of(std::size_t index) { return kPalette[index % kPaletteSize]; }

void newick_node(const Dendrogram& dend, std::int32_t node, std::string& out) {
  if (dend.is_leaf(node)) {
    out += label_of(dend.leaf_labels[static_cast<std::size_t>(node)]);
    return;
  }
  const auto& m = dend.merge_of(node);
  out += '(';
  newick_node(dend, m.left, out);
  out += ':';
  out += num(m.height - dend.height_of(m.left));
  out += ',';
  newick_node(dend, m.right, out);
  out += ':';
  out += num(m.height - dend.height_of(m.right));
  out += ')';
}

// Leaves in left-first depth-first order; display_row[leaf] = drawing row.
std::vector<std::int32_t> display_rows(const Dendrogram& dend) {
  std::vector<std::int32_t> row(static_cast<std::size_t>(dend.leaf_count()), -1);
  std::int32_t next = 0;
  std::vector<std::int32_t> stack{dend.root()};
  while (!stack.empty()) {
    const auto id = stack.back();
    stack.pop_back();
    if (dend.is_leaf(id)) {
      row[static_cast<std::size_t>(id)] = next++;
    } else {
      const auto& m = dend.merge_of(id);
      stack.push_back(m.right);
      stack.push_back(m.left);
    }
  }
  return row;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string to_newick(const Dendrogram& dend) {
  std::string out;
  if (dend.leaf_count() == 1) {
    out = label_of(dend.leaf_labels.front());
  } else {
    newick_node(dend, dend.root(), out);
  }
  out += ";\n";
  return out;
}

std::string to_dot(const Dendrogram& dend) {
  std::ostringstream out;
  out << "digraph dendrogram {\n"
      << "  rankdir=RL;\n"
      << "  node [fontname=\"Helvetica\"];\n";
  for (std::int32_t leaf = 0; leaf < dend.leaf_count(); ++leaf) {
    out << "  n" << leaf << " [shape=box, label=\""
        << label_of(dend.leaf_labels[static_cast<std::size_t>(leaf)]) << "\"];\n";
  }
  for (std::size_t i = 0; i < dend.merges.size(); ++i) {
    const auto id = dend.leaf_count() + static_cast<std::int32_t>(i);
    out << "  n" << id << " [shape=circle, label=\"" << num(dend.merges[i].height) << "\"];\n";
  }
  for (std::size_t i = 0; i < dend.merges.size(); ++i) {
    const auto id = dend.leaf_count() + static_cast<std::int32_t>(i);
    out << "  n" << id << " -> n" << dend.merges[i].left << ";\n"
        << "  n" << id << " -> n" << dend.merges[i].right << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_svg(const Dendrogram& dend, LeafColoring coloring,
                   const std::vector<ClusterGroup>* groups,
                   const std::vector<std::string>* annotations) {
  if (coloring == LeafColoring::by_cluster && groups == nullptr)
    throw std::invalid_argument("svg: cluster coloring needs the pruned groups");
  if (annotations != nullptr &&
      annotations->size() != static_cast<std::size_t>(dend.leaf_count()))
    throw std::invalid_argument("svg: one annotation per leaf required");

  const auto n = dend.leaf_count();
  const auto rows = display_rows(dend);

  // Color index per leaf: its run, or the pruned cluster it belongs to.
  std::vector<std::size_t> color_index(static_cast<std::size_t>(n), 0);
  if (coloring == LeafColoring::by_run) {
    for (std::int32_t leaf = 0; leaf < n; ++leaf)
      color_index[static_cast<std::size_t>(leaf)] =
          static_cast<std::size_t>(dend.leaf_labels[static_cast<std::size_t>(leaf)].run);
  } else {
    std::unordered_map<std::int64_t, std::size_t> group_of;
    for (std::size_t g = 0; g < groups->size(); ++g) {
      for (const auto& member : (*groups)[g].members)
        group_of[(static_cast<std::int64_t>(member.run) << 32) | static_cast<std::uint32_t>(member.topic)] = g;
    }
    for (std::int32_t leaf = 0; leaf < n; ++leaf) {
      const auto& ref = dend.leaf_labels[static_cast<std::size_t>(leaf)];
      const auto it = group_of.find((static_cast<std::int64_t>(ref.run) << 32) |
                                    static_cast<std::uint32_t>(ref.topic));
      color_index[static_cast<std::size_t>(leaf)] = it == group_of.end() ? 0 : it->second;
    }
  }

  std::vector<std::string> labels(static_cast<std::size_t>(n));
  std::size_t label_chars = 0;
  for (std::int32_t leaf = 0; leaf < n; ++leaf) {
    auto text = label_of(dend.leaf_labels[static_cast<std::size_t>(leaf)]);
    if (annotations != nullptr && !(*annotations)[static_cast<std::size_t>(leaf)].empty())
      text += " " + (*annotations)[static_cast<std::size_t>(leaf)];
    label_chars = std::max(label_chars, text.size());
    labels[static_cast<std::size_t>(leaf)] = std::move(text);
  }

  const double row_h = 16.0;
  const double margin = 12.0;
  const double label_w = static_cast<double>(label_chars) * 6.8 + 10.0;
  const double tree_w = 480.0;
  const double axis_h = 34.0;
  const double width = margin * 2 + label_w + tree_w;
  const double height = margin * 2 + row_h * n + axis_h;
  double max_h = 0.0;
  for (const auto& m : dend.merges) max_h = std::max(max_h, m.height);
  if (max_h <= 0.0) max_h = 1.0;

  const auto x_of = [&](double h) { return margin + label_w + h / max_h * tree_w; };
  const auto y_of_row = [&](std::int32_t r) { return margin + row_h * (r + 0.5); };

  // y of every node: leaves at their row, merges midway between children.
  std::vector<double> y(static_cast<std::size_t>(dend.node_count()));
  for (std::int32_t leaf = 0; leaf < n; ++leaf)
    y[static_cast<std::size_t>(leaf)] = y_of_row(rows[static_cast<std::size_t>(leaf)]);
  for (std::size_t i = 0; i < dend.merges.size(); ++i) {
    const auto& m = dend.merges[i];
    y[static_cast<std::size_t>(n) + i] =
        (y[static_cast<std::size_t>(m.left)] + y[static_cast<std::size_t>(m.right)]) / 2.0;
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g font-family=\"monospace\" font-size=\"11\">\n";

  for (std::int32_t leaf = 0; leaf < n; ++leaf) {
    svg << "<text x=\"" << num(margin + label_w - 6.0) << "\" y=\""
        << num(y[static_cast<std::size_t>(leaf)] + 3.5) << "\" text-anchor=\"end\" fill=\""
        << color_of(color_index[static_cast<std::size_t>(leaf)]) << "\">"
        << xml_escape(labels[static_cast<std::size_t>(leaf)]) << "</text>\n";
  }
  svg << "</g>\n<g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n";
  for (std::size_t i = 0; i < dend.merges.size(); ++i) {
    const auto& m = dend.merges[i];
    const double xp = x_of(m.height);
    const double xl = x_of(dend.height_of(m.left));
    const double xr = x_of(dend.height_of(m.right));
    const double yl = y[static_cast<std::size_t>(m.left)];
    const double yr = y[static_cast<std::size_t>(m.right)];
    svg << "<path d=\"M " << num(xl) << ' ' << num(yl) << " H " << num(xp) << " V " << num(yr)
        << " H " << num(xr) << "\"/>\n";
  }
  svg << "</g>\n";

  // Distance axis under the tree.
  const double axis_y = margin + row_h * n + 16.0;
  svg << "<g stroke=\"#333333\" stroke-width=\"1\">\n"
      << "<line x1=\"" << num(x_of(0.0)) << "\" y1=\"" << num(axis_y) << "\" x2=\""
      << num(x_of(max_h)) << "\" y2=\"" << num(axis_y) << "\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double h = max_h * tick / 4.0;
    svg << "<line x1=\"" << num(x_of(h)) << "\" y1=\"" << num(axis_y) << "\" x2=\""
        << num(x_of(h)) << "\" y2=\"" << num(axis_y + 4.0) << "\"/>\n";
  }
  svg << "</g>\n<g font-family=\"monospace\" font-size=\"10\" fill=\"#333333\">\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double h = max_h * tick / 4.0;
    svg << "<text x=\"" << num(x_of(h)) << "\" y=\"" << num(axis_y + 15.0)
        << "\" text-anchor=\"middle\">" << num(h) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string ecdf_svg(const std::vector<EcdfCurve>& curves) {
  if (curves.empty()) throw std::invalid_argument("ecdf svg: at least one curve required");
  const double width = 640.0;
  const double height = 420.0;
  const double ml = 52.0, mr = 16.0, mt = 16.0, mb = 44.0;
  const double plot_w = width - ml - mr;
  const double plot_h = height - mt - mb;
  const auto x_of = [&](double v) { return ml + v * plot_w; };
  const auto y_of = [&](double p) { return mt + (1.0 - p) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Frame and ticks at 0, 0.25, .., 1 on both axes.
  svg << "<g stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n"
      << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\"" << num(plot_w)
      << "\" height=\"" << num(plot_h) << "\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = tick / 4.0;
    svg << "<line x1=\"" << num(x_of(v)) << "\" y1=\"" << num(mt + plot_h) << "\" x2=\""
        << num(x_of(v)) << "\" y2=\"" << num(mt + plot_h + 4.0) << "\"/>\n"
        << "<line x1=\"" << num(ml - 4.0) << "\" y1=\"" << num(y_of(v)) << "\" x2=\"" << num(ml)
        << "\" y2=\"" << num(y_of(v)) << "\"/>\n";
  }
  svg << "</g>\n<g font-family=\"monospace\" font-size=\"11\" fill=\"#333333\">\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = tick / 4.0;
    svg << "<text x=\"" << num(x_of(v)) << "\" y=\"" << num(mt + plot_h + 17.0)
        << "\" text-anchor=\"middle\">" << num(v) << "</text>\n"
        << "<text x=\"" << num(ml - 7.0) << "\" y=\"" << num(y_of(v) + 3.5)
        << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  svg << "<text x=\"" << num(ml + plot_w / 2.0) << "\" y=\"" << num(height - 8.0)
      << "\" text-anchor=\"middle\">mean similarity</text>\n"
      << "</g>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    auto samples = curves[c].samples;
    if (samples.empty()) continue;
    std::sort(samples.begin(), samples.end());
    const auto count = static_cast<double>(samples.size());
    std::ostringstream points;
    points << num(x_of(std::clamp(samples.front(), 0.0, 1.0))) << ',' << num(y_of(0.0));
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const std::string x = num(x_of(std::clamp(samples[i], 0.0, 1.0)));
      points << ' ' << x << ',' << num(y_of(static_cast<double>(i) / count));
      points << ' ' << x << ',' << num(y_of(static_cast<double>(i + 1) / count));
    }
    points << ' ' << num(x_of(1.0)) << ',' << num(y_of(1.0));
    svg << "<polyline fill=\"none\" stroke=\"" << color_of(c)
        << "\" stroke-width=\"1.5\" points=\"" << points.str() << "\"/>\n";
  }

  svg << "<g font-family=\"monospace\" font-size=\"11\">\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const double ly = mt + 16.0 + 16.0 * static_cast<double>(c);
    svg << "<line x1=\"" << num(ml + 10.0) << "\" y1=\"" << num(ly - 3.5) << "\" x2=\""
        << num(ml + 34.0) << "\" y2=\"" << num(ly - 3.5) << "\" stroke=\"" << color_of(c)
        << "\" stroke-width=\"1.5\"/>\n"
        << "<text x=\"" << num(ml + 40.0) << "\" y=\"" << num(ly) << "\" fill=\"#333333\">"
        << xml_escape(curves[c].name) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace sclop
