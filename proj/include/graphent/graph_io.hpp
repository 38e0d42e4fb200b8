#pragma once

#include <iosfwd>
#include <string>

#include "graphent/graph.hpp"

namespace graphent {

// Line-oriented text format, '#' starts a comment:
//
//   graph <name>
//   vertex <id>
//   edge <id> <origin-vertex> <terminus-vertex> <length>
//
// Each edge line declares one reversal pair in its positive orientation.

MetricGraph parse_graph(std::istream& in);
MetricGraph parse_graph_string(const std::string& text);
MetricGraph load_graph(const std::string& path);

/// Lengths are written with 17 significant digits so parsing reproduces them.
void write_graph(std::ostream& out, const Graph& g, const LengthFunction& lengths);
std::string format_graph(const Graph& g, const LengthFunction& lengths);

}  // namespace graphent
