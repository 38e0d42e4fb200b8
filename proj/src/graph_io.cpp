#include "graphent/graph_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "graphent/error.hpp"

namespace graphent {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> tokens;
  for (std::string tok; ss >> tok;) tokens.push_back(tok);
  return tokens;
}

double parse_length(const std::string& tok, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE) {
    throw ParseError(line, "invalid length '" + tok + "'");
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ParseError(line, "length must be finite and strictly positive");
  }
  return x;
}

}  // namespace

MetricGraph parse_graph(std::istream& in) {
  std::string name;
  std::map<std::string, int> vertex_index;
  std::vector<std::string> vertex_labels;
  std::map<std::string, int> edge_index;
  std::vector<std::string> edge_labels;
  std::vector<EdgeSpec> specs;
  std::vector<double> lengths;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& kind = tok[0];
    if (kind == "graph") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'graph <name>'");
      if (!name.empty()) throw ParseError(lineno, "duplicate graph line");
      name = tok[1];
    } else if (kind == "vertex") {
      if (tok.size() != 2) throw ParseError(lineno, "expected 'vertex <id>'");
      if (vertex_index.count(tok[1])) throw ParseError(lineno, "duplicate vertex " + tok[1]);
      vertex_index[tok[1]] = static_cast<int>(vertex_labels.size());
      vertex_labels.push_back(tok[1]);
    } else if (kind == "edge") {
      if (tok.size() != 5) {
        throw ParseError(lineno, "expected 'edge <id> <origin> <terminus> <length>'");
      }
      if (edge_index.count(tok[1])) throw ParseError(lineno, "duplicate edge " + tok[1]);
      auto o = vertex_index.find(tok[2]);
      auto t = vertex_index.find(tok[3]);
      if (o == vertex_index.end()) throw ParseError(lineno, "undeclared vertex " + tok[2]);
      if (t == vertex_index.end()) throw ParseError(lineno, "undeclared vertex " + tok[3]);
      edge_index[tok[1]] = static_cast<int>(edge_labels.size());
      edge_labels.push_back(tok[1]);
      specs.push_back({o->second, t->second});
      lengths.push_back(parse_length(tok[4], lineno));
    } else {
      throw ParseError(lineno, "unknown directive '" + kind + "'");
    }
  }
  if (specs.empty()) throw ParseError(lineno, "graph has no edges");

  MetricGraph m{build_graph(static_cast<int>(vertex_labels.size()), specs),
                LengthFunction(std::move(lengths))};
  m.graph.set_name(name.empty() ? "unnamed" : name);
  m.graph.set_vertex_labels(std::move(vertex_labels));
  m.graph.set_pair_labels(std::move(edge_labels));
  return m;
}

MetricGraph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

MetricGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const LengthFunction& lengths) {
  out << "graph " << (g.name().empty() ? "unnamed" : g.name()) << '\n';
  for (VertexId v = 0; v < g.num_vertices(); ++v) out << "vertex " << g.vertex_label(v) << '\n';
  char buf[64];
  for (PairId p = 0; p < g.num_pairs(); ++p) {
    std::snprintf(buf, sizeof buf, "%.17g", lengths[p]);
    const EdgeId e = positive_edge(p);
    out << "edge " << g.pair_label(p) << ' ' << g.vertex_label(g.origin(e)) << ' '
        << g.vertex_label(g.terminus(e)) << ' ' << buf << '\n';
  }
}

std::string format_graph(const Graph& g, const LengthFunction& lengths) {
  std::ostringstream out;
  write_graph(out, g, lengths);
  return out.str();
}

}  // namespace graphent
