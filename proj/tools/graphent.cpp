// Command-line front end: entropy, normalisation, equilibrium measures,
// subgraph entropy, blow-up traces, inequality sweeps and minimisation.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "graphent/blowup.hpp"
#include "graphent/bounds.hpp"
#include "graphent/error.hpp"
#include "graphent/explorer.hpp"
#include "graphent/graph_io.hpp"
#include "graphent/spectral.hpp"

namespace {

using namespace graphent;

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

std::string fixed12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", x);
  return buf;
}

std::string hex_seed(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llX", static_cast<unsigned long long>(seed));
  return buf;
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    throw InvalidInput("invalid seed '" + text + "'");
  }
  if (used != text.size()) throw InvalidInput("invalid seed '" + text + "'");
  return v;
}

PairId find_edge(const Graph& g, const std::string& label) {
  for (PairId p = 0; p < g.num_pairs(); ++p) {
    if (g.pair_label(p) == label) return p;
  }
  throw InvalidInput("no edge with id '" + label + "'");
}

/// Rescales to unit entropy, warning on stderr when the input was not unit.
LengthFunction unit_or_warn(const MetricGraph& mg) {
  if (is_unit_entropy(mg.graph, mg.lengths)) return mg.lengths;
  std::cerr << "warning: input lengths do not have unit entropy; rescaling\n";
  return normalize_unit(mg.graph, mg.lengths);
}

/// Writes to the file at `path`, or to stdout when it is empty.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open '" + path + "' for writing");
  write(out);
}

int cmd_entropy(const std::string& path) {
  const MetricGraph mg = load_graph(path);
  const double h = entropy(mg.graph, mg.lengths);
  std::cout << "entropy " << fixed12(h) << '\n';
  std::cout << "rank " << rank(mg.graph) << '\n';
  std::cout << "components " << mg.graph.num_components() << '\n';
  if (h == 0.0) std::cout << "note rank <= 1 in every component\n";
  return 0;
}

int cmd_normalize(const std::string& path, const std::string& out_path) {
  const MetricGraph mg = load_graph(path);
  const LengthFunction unit = normalize_unit(mg.graph, mg.lengths);
  emit(out_path, [&](std::ostream& out) { write_graph(out, mg.graph, unit); });
  return 0;
}

int cmd_measure(const std::string& path) {
  const MetricGraph mg = load_graph(path);
  const LengthFunction unit = unit_or_warn(mg);
  const EquilibriumMeasure mu = equilibrium_measure(mg.graph, unit);
  double total = 0.0;
  for (double x : mu.mu) total += x;
  char buf[160];
  std::cout << "edge,mu,mu_reverse,pair_total\n";
  for (PairId p = 0; p < mg.graph.num_pairs(); ++p) {
    const EdgeId e = positive_edge(p);
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g\n", mg.graph.pair_label(p).c_str(),
                  mu.of_edge(e), mu.of_edge(reverse(e)), mu.pair_total(p));
    std::cout << buf;
  }
  std::cout << "total " << fixed12(total) << '\n';
  return 0;
}

int cmd_subgraph(const std::string& path, const std::string& edge, const std::string& method) {
  const MetricGraph mg = load_graph(path);
  const PairId e = find_edge(mg.graph, edge);
  const LengthFunction unit = unit_or_warn(mg);
  double direct = 0.0;
  double integral = 0.0;
  if (method != "integral") {
    direct = subgraph_entropy_direct(mg.graph, unit, e);
    std::cout << "direct " << fixed12(direct) << '\n';
  }
  if (method != "direct") {
    const SubgraphIntegralResult r = subgraph_entropy_integral(mg.graph, unit, e);
    integral = r.value;
    std::cout << "integral " << fixed12(integral) << '\n';
    std::cout << "horizon " << r.horizon << '\n';
    std::cout << "tail_bound " << r.tail_bound << '\n';
  }
  if (method == "both") {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", std::abs(integral - direct));
    std::cout << "discrepancy " << buf << '\n';
  }
  return 0;
}

int cmd_blowup(const std::string& path, const std::string& edge, double horizon, int samples,
               bool log_spaced, const std::string& out_path) {
  const MetricGraph mg = load_graph(path);
  const PairId e = find_edge(mg.graph, edge);
  const LengthFunction unit = unit_or_warn(mg);
  const BlowupTrace trace = blowup_trace(mg.graph, unit, e, horizon, samples, log_spaced);
  emit(out_path, [&](std::ostream& out) { write_trace_csv(out, trace); });
  std::cerr << "tail_bound " << trace.tail_bound << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, int n, std::uint64_t seed, const std::string& out_path) {
  if (n < 0) throw InvalidInput("--n must be non-negative");
  std::vector<SweepSummary> parts;
  const bool all = suite == "all";
  if (all || suite == "rose") {
    parts.push_back(sweep_rose_estimate(n, seed));
    parts.push_back(sweep_rose_floor(n, seed, 3, 6));
  }
  if (all || suite == "nonloop") parts.push_back(sweep_nonloop_estimate(n, seed));
  if (all || suite == "barbell") {
    parts.push_back(sweep_rose_barbell(n, seed));
    parts.push_back(sweep_barbell_floor(n));
  }
  if (all || suite == "collapse") parts.push_back(sweep_collapse(n, seed));
  if (all || suite == "assembly") parts.push_back(sweep_assembly(n, seed));

  int violations = 0;
  int skipped = 0;
  std::size_t rows = 0;
  for (const auto& p : parts) {
    violations += p.violations;
    skipped += p.skipped;
    rows += p.rows.size();
  }
  emit(out_path, [&](std::ostream& out) {
    write_sweep_csv_header(out);
    for (const auto& p : parts) write_sweep_csv_rows(out, p);
  });
  std::ostream& summary = out_path.empty() ? std::cerr : std::cout;
  summary << "verify suite=" << suite << " n=" << n << " seed=" << hex_seed(seed)
          << " checked=" << rows << " skipped=" << skipped << " violations=" << violations << '\n';
  return violations == 0 ? 0 : kExitViolation;
}

int cmd_minimize(const std::string& path, int restarts, std::uint64_t seed,
                 const std::string& out_path) {
  const MetricGraph mg = load_graph(path);
  OptimizerConfig config;
  config.restarts = restarts;
  config.seed = seed;
  const InfEstimate est = minimize_entropy_sup(mg.graph, config);
  std::cout << "seed " << hex_seed(seed) << '\n';
  std::cout << "restarts " << restarts << '\n';
  std::cout << "entropy_sup_min " << fixed12(est.value) << '\n';
  std::cout << "converged " << (est.converged ? "yes" : "no") << '\n';
  std::cout << "argmin\n";
  write_graph(std::cout, mg.graph, est.argmin_lengths);
  if (!out_path.empty()) {
    emit(out_path, [&](std::ostream& out) { write_optimizer_trace_csv(out, est.optimizer_trace); });
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy of metric graphs and their subgraphs"};
  app.require_subcommand(1);

  std::string input;
  std::string out_path;
  std::string edge;
  std::string method = "both";
  std::string suite = "all";
  std::string seed_text = "0xC0FFEE";
  double horizon = 20.0;
  int samples = 50;
  int n = 1000;
  int restarts = 20;
  bool log_spaced = false;

  auto* entropy_cmd = app.add_subcommand("entropy", "Print entropy, rank and component count");
  entropy_cmd->add_option("graph", input, "Graph file")->required();

  auto* normalize_cmd = app.add_subcommand("normalize", "Rescale lengths to unit entropy");
  normalize_cmd->add_option("graph", input, "Graph file")->required();
  normalize_cmd->add_option("--out", out_path, "Output graph file (default stdout)");

  auto* measure_cmd = app.add_subcommand("measure", "Equilibrium measure per edge");
  measure_cmd->add_option("graph", input, "Graph file")->required();

  auto* subgraph_cmd = app.add_subcommand("subgraph", "Entropy of the graph minus one edge");
  subgraph_cmd->add_option("graph", input, "Graph file")->required();
  subgraph_cmd->add_option("--edge", edge, "Edge id")->required();
  subgraph_cmd->add_option("--method", method, "integral, direct or both")
      ->check(CLI::IsMember({"integral", "direct", "both"}))
      ->capture_default_str();

  auto* blowup_cmd = app.add_subcommand("blowup", "Sample the linear blow-up along an edge");
  blowup_cmd->add_option("graph", input, "Graph file")->required();
  blowup_cmd->add_option("--edge", edge, "Edge id")->required();
  blowup_cmd->add_option("--horizon", horizon, "Final time T")->capture_default_str();
  blowup_cmd->add_option("--samples", samples, "Number of samples")->capture_default_str();
  blowup_cmd->add_flag("--log-spaced", log_spaced, "Space samples evenly in log(1 + t)");
  blowup_cmd->add_option("--out", out_path, "CSV output (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Randomised inequality sweeps");
  verify_cmd->add_option("--suite", suite, "rose, nonloop, barbell, collapse, assembly or all")
      ->check(CLI::IsMember({"rose", "nonloop", "barbell", "collapse", "assembly", "all"}))
      ->capture_default_str();
  verify_cmd->add_option("--n", n, "Samples per check")->capture_default_str();
  verify_cmd->add_option("--seed", seed_text, "Base RNG seed")->capture_default_str();
  verify_cmd->add_option("--out", out_path, "CSV output (default stdout)");

  auto* minimize_cmd = app.add_subcommand("minimize", "Minimise entropy_sup over unit lengths");
  minimize_cmd->add_option("graph", input, "Graph file")->required();
  minimize_cmd->add_option("--restarts", restarts, "Nelder-Mead restarts")->capture_default_str();
  minimize_cmd->add_option("--seed", seed_text, "RNG seed for restart points")->capture_default_str();
  minimize_cmd->add_option("--out", out_path, "Optimizer trace CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*entropy_cmd) return cmd_entropy(input);
    if (*normalize_cmd) return cmd_normalize(input, out_path);
    if (*measure_cmd) return cmd_measure(input);
    if (*subgraph_cmd) return cmd_subgraph(input, edge, method);
    if (*blowup_cmd) return cmd_blowup(input, edge, horizon, samples, log_spaced, out_path);
    if (*verify_cmd) return cmd_verify(suite, n, parse_seed(seed_text), out_path);
    if (*minimize_cmd) return cmd_minimize(input, restarts, parse_seed(seed_text), out_path);
  } catch (const graphent::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
