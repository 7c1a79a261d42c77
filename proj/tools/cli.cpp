#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "dirred/errors.hpp"
#include "dirred/graph.hpp"
#include "dirred/infer.hpp"
#include "dirred/network_io.hpp"
#include "dirred/pid.hpp"
#include "dirred/random.hpp"
#include "dirred/reduce.hpp"

namespace dirred::cli {

namespace {

using nlohmann::json;

constexpr double kTolerance = 1e-9;

struct Options {
  std::string command;
  std::string net;
  std::string evidence;
  std::string order;
  std::string node;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  bool json = false;
};

std::string num(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += parts[k];
  }
  return out;
}

std::vector<std::string> names_of(const std::vector<std::string>& names, std::span<const NodeId> ids) {
  std::vector<std::string> out;
  for (NodeId v : ids) out.push_back(names.at(v));
  return out;
}

std::string braces(const std::vector<std::string>& names) { return "{" + join(names, ",") + "}"; }

NodeOrder parse_order(const std::string& text, const std::vector<std::string>& names) {
  std::vector<NodeId> seq;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    auto it = std::find(names.begin(), names.end(), item);
    if (it == names.end()) throw InputError("--order names unknown node '" + item + "'");
    seq.push_back(static_cast<NodeId>(it - names.begin()));
  }
  return NodeOrder(std::move(seq), names.size());
}

json edge_list(const UndirectedGraph& u, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  json out = json::array();
  for (auto [a, b] : edges) out.push_back({u.name(a), u.name(b)});
  return out;
}

json arc_list(const DirectedGraph& g) {
  json out = json::array();
  for (auto [a, b] : g.arcs()) out.push_back({g.name(a), g.name(b)});
  return out;
}

void print_arcs(std::ostream& out, const DirectedGraph& g) {
  out << "arcs: " << g.arc_count() << "\n";
  for (auto [a, b] : g.arcs()) out << "  " << g.name(a) << " -> " << g.name(b) << "\n";
}

void print_trace(std::ostream& out, const ReversalTrace& trace) {
  out << "steps: " << trace.size() << "\n";
  for (const TraceStep& step : trace) {
    out << "  " << to_string(step.kind) << " ";
    switch (step.kind) {
      case StepKind::arc_reversal:
      case StepKind::evidence_reversal:
        out << step.i << "->" << step.j;
        break;
      case StepKind::absorption:
        out << step.i << "=" << *step.value;
        break;
      case StepKind::combination:
        out << step.j << " <- " << braces(step.merged);
        break;
      case StepKind::likelihood_node:
        out << step.i << " on " << braces(step.parents_i);
        break;
    }
    out << "\n";
  }
}

void print_diagram(std::ostream& out, const Pid& p) {
  out << "nodes: " << p.size() << "\n";
  for (NodeId v = 0; v < p.size(); ++v) {
    out << "  " << p.name(v) << " | " << join(names_of(p.graph().names(), p.parents(v)), ",");
    if (p.is_evidence(v)) {
      out << " [evidence";
      if (auto obs = p.observed(v)) out << " = " << p.outcomes(v)[*obs];
      out << "]";
    }
    out << "\n";
  }
}

class Session {
 public:
  explicit Session(const Options& options) : options_(options) {}

  const Pid& network() {
    if (!network_) {
      if (options_.net.empty()) throw InputError("--net is required");
      network_ = parse_network(read_file(options_.net));
    }
    return *network_;
  }

  EvidenceSet evidence() {
    if (options_.evidence.empty()) return {};
    return parse_evidence(read_file(options_.evidence), network());
  }

  // --order, or the network's topological order.
  NodeOrder target() {
    if (!options_.order.empty()) return parse_order(options_.order, network().graph().names());
    return topological_order(network().graph());
  }

  // --order, or the file's node order.
  NodeOrder tiebreak() {
    if (!options_.order.empty()) return parse_order(options_.order, network().graph().names());
    return NodeOrder::identity(network().size());
  }

  PipelineResult pipeline() { return run_pipeline(network(), target(), evidence()); }

 private:
  const Options& options_;
  std::optional<Pid> network_;
};

void emit(std::ostream& out, json doc) { out << doc.dump(2) << "\n"; }

// A directed cycle is a structural error; every other finding is a validation failure.
int exit_code_for(const ValidationReport& report) {
  if (report.ok) return kOk;
  for (const Finding& f : report.findings)
    if (f.severity == Severity::error && f.code == "cycle") return kStructuralError;
  return kValidationFailure;
}

// Commands -------------------------------------------------------------------

int cmd_validate(const Options& o, std::ostream& out) {
  ValidationReport report;
  std::size_t nodes = 0;
  std::size_t arcs = 0;
  if (o.net.empty()) throw InputError("--net is required");
  try {
    Pid p = parse_network(read_file(o.net));
    report = validate(p);
    nodes = p.size();
    arcs = p.graph().arc_count();
  } catch (const ValidationError& e) {
    report = e.report();
  }
  if (o.json) {
    emit(out, {{"command", "validate"}, {"nodes", nodes}, {"arcs", arcs}, {"report", report_to_json(report)}});
  } else {
    out << "validate: " << (report.ok ? "ok" : "invalid");
    if (report.ok) out << " (" << nodes << " nodes, " << arcs << " arcs)";
    out << "\n";
    for (const Finding& f : report.findings) {
      out << (f.severity == Severity::error ? "error" : "warning") << " " << f.code;
      if (!f.subject.empty()) out << " [" << f.subject << "]";
      out << ": " << f.message << "\n";
    }
  }
  return exit_code_for(report);
}

int cmd_moralize(Session& s, const Options& o, std::ostream& out) {
  const Pid& p = s.network();
  const UndirectedGraph moral = moral_graph(p.graph());
  std::vector<std::pair<NodeId, NodeId>> added;
  for (auto [a, b] : moral.edges())
    if (!p.graph().has_arc(a, b) && !p.graph().has_arc(b, a)) added.emplace_back(a, b);
  if (o.json) {
    emit(out, {{"command", "moralize"}, {"edges", edge_list(moral, moral.edges())}, {"added", edge_list(moral, added)}});
    return kOk;
  }
  out << "moral graph: " << moral.size() << " nodes, " << moral.edge_count() << " edges, " << added.size()
      << " added\n";
  for (auto [a, b] : moral.edges()) {
    out << "  " << moral.name(a) << " - " << moral.name(b);
    if (std::find(added.begin(), added.end(), std::pair{a, b}) != added.end()) out << " (added)";
    out << "\n";
  }
  return kOk;
}

int cmd_chordal(Session& s, const Options& o, std::ostream& out) {
  const Pid& p = s.network();
  const UndirectedGraph moral = moral_graph(p.graph());
  const NodeOrder order = s.target();
  const UndirectedGraph chordal = fill_in(moral, order);
  std::vector<std::pair<NodeId, NodeId>> added;
  for (auto [a, b] : chordal.edges())
    if (!moral.adjacent(a, b)) added.emplace_back(a, b);
  std::vector<std::vector<std::string>> cliques;
  for (const NodeSet& c : maximal_cliques(chordal, order)) cliques.push_back(names_of(chordal.names(), c));
  const bool moral_chordal = is_chordal(moral);
  const auto order_names = names_of(p.graph().names(), order.sequence());

  if (o.json) {
    emit(out, {{"command", "chordal"},
               {"moral_chordal", moral_chordal},
               {"order", order_names},
               {"edges", edge_list(chordal, chordal.edges())},
               {"fill_in", edge_list(chordal, added)},
               {"cliques", cliques}});
    return kOk;
  }
  out << "moral graph chordal: " << (moral_chordal ? "yes" : "no") << "\n";
  out << "order: " << join(order_names, ",") << "\n";
  out << "fill-in: " << added.size() << "\n";
  for (auto [a, b] : added) out << "  " << chordal.name(a) << " - " << chordal.name(b) << "\n";
  out << "cliques:";
  for (const auto& c : cliques) out << " " << braces(c);
  out << "\n";
  return kOk;
}

int cmd_mcs(Session& s, const Options& o, std::ostream& out) {
  const Pid& p = s.network();
  const UndirectedGraph moral = moral_graph(p.graph());
  const NodeOrder order = max_cardinality_search(moral, s.tiebreak());
  const bool perfect = is_perfect(moral, order);
  const auto names = names_of(p.graph().names(), order.sequence());
  if (o.json) {
    emit(out, {{"command", "mcs"}, {"order", names}, {"perfect", perfect}});
    return kOk;
  }
  out << "order: " << join(names, ",") << "\n";
  out << "perfect: " << (perfect ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_fillin(Session& s, const Options& o, std::ostream& out) {
  const Pid& p = s.network();
  const UndirectedGraph moral = moral_graph(p.graph());
  const NodeOrder order = s.target();
  const UndirectedGraph filled = fill_in(moral, order);
  std::vector<std::pair<NodeId, NodeId>> added;
  for (auto [a, b] : filled.edges())
    if (!moral.adjacent(a, b)) added.emplace_back(a, b);
  const auto names = names_of(p.graph().names(), order.sequence());
  if (o.json) {
    emit(out, {{"command", "fillin"}, {"order", names}, {"added", edge_list(filled, added)}});
    return kOk;
  }
  out << "order: " << join(names, ",") << "\n";
  out << "added edges: " << added.size() << "\n";
  for (auto [a, b] : added) out << "  " << filled.name(a) << " - " << filled.name(b) << "\n";
  return kOk;
}

int cmd_prereverse(Session& s, const Options& o, std::ostream& out) {
  Pid p = s.network();
  const NodeOrder target = s.target();
  const ReversalTrace trace = pre_reverse_to_target(p, target);
  const auto names = names_of(p.graph().names(), target.sequence());
  if (o.json) {
    emit(out, {{"command", "prereverse"},
               {"target", names},
               {"arcs", arc_list(p.graph())},
               {"network", network_to_json(p)},
               {"trace", trace_to_json(trace)}});
    return kOk;
  }
  out << "target: " << join(names, ",") << "\n";
  print_trace(out, trace);
  print_arcs(out, p.graph());
  return kOk;
}

int cmd_absorb(Session& s, const Options& o, std::ostream& out) {
  Pid p = s.network();
  const EvidenceSet evidence = s.evidence();
  ReversalTrace trace;
  for (const VirtualEvidence& ev : evidence.likelihoods) trace.push_back(add_likelihood_node(p, ev));
  for (const Observation& obs : evidence.observations) trace.push_back(absorb_evidence(p, obs.node, obs.value));
  if (o.json) {
    emit(out, {{"command", "absorb"}, {"network", network_to_json(p)}, {"trace", trace_to_json(trace)}});
    return kOk;
  }
  print_trace(out, trace);
  print_diagram(out, p);
  return kOk;
}

int cmd_propagate(Session& s, const Options& o, std::ostream& out) {
  const PipelineResult r = s.pipeline();
  const double probability = evidence_probability(r.final);
  if (o.json) {
    emit(out, {{"command", "propagate"},
               {"target", names_of(r.original.graph().names(), r.target.sequence())},
               {"evidence_probability", probability},
               {"network", network_to_json(r.final)},
               {"trace", trace_to_json(r.trace)}});
    return kOk;
  }
  out << "target: " << join(names_of(r.original.graph().names(), r.target.sequence()), ",") << "\n";
  print_trace(out, r.trace);
  print_arcs(out, r.final.graph());
  out << "evidence probability " << num(probability) << "\n";
  return kOk;
}

int cmd_marginal(Session& s, const Options& o, std::ostream& out) {
  const PipelineResult r = s.pipeline();
  const Pid& p = r.final;
  std::vector<NodeId> nodes;
  if (!o.node.empty()) {
    nodes.push_back(p.id(o.node));
  } else {
    for (NodeId v = 0; v < s.network().size(); ++v) nodes.push_back(p.id(s.network().name(v)));
  }
  json list = json::array();
  for (NodeId v : nodes) {
    const std::vector<double> dist = posterior_marginal(p, v);
    if (o.json) {
      list.push_back({{"node", p.name(v)}, {"outcomes", p.outcomes(v)}, {"probabilities", dist}});
      continue;
    }
    out << p.name(v) << ":";
    for (std::size_t x = 0; x < dist.size(); ++x) out << " " << p.outcomes(v)[x] << "=" << num(dist[x]);
    out << "\n";
  }
  if (o.json)
    emit(out, {{"command", "marginal"},
               {"evidence_probability", evidence_probability(p)},
               {"marginals", std::move(list)},
               {"trace", trace_to_json(r.trace)}});
  return kOk;
}

int cmd_evprob(Session& s, const Options& o, std::ostream& out) {
  const PipelineResult r = s.pipeline();
  const double probability = evidence_probability(r.final);
  if (o.json) {
    emit(out, {{"command", "evprob"}, {"evidence_probability", probability}, {"trace", trace_to_json(r.trace)}});
    return kOk;
  }
  out << "evidence probability " << num(probability) << "\n";
  return kOk;
}

struct OracleComparison {
  double probability = 0.0;
  double oracle_probability = 0.0;
  double max_deviation = 0.0;
};

OracleComparison compare_with_oracle(const Pid& network, const EvidenceSet& evidence, const PipelineResult& r) {
  Pid reference = r.original;
  for (const Observation& obs : evidence.observations) absorb_evidence(reference, obs.node, obs.value);
  const JointTable joint = joint_oracle(reference);

  OracleComparison c;
  c.probability = evidence_probability(r.final);
  c.oracle_probability = joint.total();
  c.max_deviation = std::abs(c.probability - c.oracle_probability);
  if (c.oracle_probability > 0.0) {
    for (NodeId v = 0; v < network.size(); ++v) {
      if (reference.is_evidence(v)) continue;
      std::vector<double> expected = joint.marginal(v);
      const std::vector<double> got = posterior_marginal(r.final, r.final.id(network.name(v)));
      for (std::size_t x = 0; x < expected.size(); ++x)
        c.max_deviation = std::max(c.max_deviation, std::abs(expected[x] / c.oracle_probability - got[x]));
    }
  }
  return c;
}

int cmd_oracle_check(Session& s, const Options& o, std::ostream& out) {
  const EvidenceSet evidence = s.evidence();
  const PipelineResult r = run_pipeline(s.network(), s.target(), evidence);
  const OracleComparison c = compare_with_oracle(s.network(), evidence, r);
  const bool pass = c.max_deviation <= kTolerance;
  if (o.json) {
    emit(out, {{"command", "oracle-check"},
               {"evidence_probability", c.probability},
               {"oracle_evidence_probability", c.oracle_probability},
               {"max_deviation", c.max_deviation},
               {"tolerance", kTolerance},
               {"pass", pass},
               {"trace", trace_to_json(r.trace)}});
  } else {
    out << "evidence probability " << num(c.probability) << "; max deviation "
        << (pass ? "< 1e-9" : num(c.max_deviation) + " exceeds 1e-9") << "\n";
  }
  return pass ? kOk : kValidationFailure;
}

int cmd_report(Session& s, const Options& o, std::ostream& out) {
  const PipelineResult r = s.pipeline();
  const ComplexityReport c = complexity_report(r.trace, r.original, r.target);
  std::map<std::string, std::size_t> kinds;
  for (const TraceStep& step : r.trace) ++kinds[to_string(step.kind)];
  const double probability = evidence_probability(r.final);
  if (o.json) {
    json scopes = json::array();
    for (const ScopeCheck& sc : c.scopes)
      scopes.push_back({{"step", sc.step}, {"vars", sc.scope.vars}, {"cells", sc.scope.cells}, {"contained", sc.contained}});
    emit(out, {{"command", "report"},
               {"target", names_of(r.original.graph().names(), r.target.sequence())},
               {"cliques", c.cliques},
               {"max_table_scope", c.max_table_scope},
               {"max_table_cells", c.max_table_cells},
               {"max_clique_cells", c.max_clique_cells},
               {"clique_containment", c.clique_containment},
               {"added_arc_count", c.added_arc_count},
               {"step_counts", kinds},
               {"scopes", std::move(scopes)},
               {"evidence_probability", probability},
               {"network", network_to_json(r.final)},
               {"trace", trace_to_json(r.trace)}});
    return kOk;
  }
  out << "target: " << join(names_of(r.original.graph().names(), r.target.sequence()), ",") << "\n";
  out << "steps: " << r.trace.size();
  for (const auto& [kind, count] : kinds) out << " " << kind << "=" << count;
  out << "\n";
  out << "cliques:";
  for (const auto& clique : c.cliques) out << " " << braces(clique);
  out << "\n";
  out << "max table: " << c.max_table_cells << " cells over " << braces(c.max_table_scope) << "\n";
  out << "max clique state space: " << c.max_clique_cells << " cells\n";
  out << "clique containment: " << (c.clique_containment ? "yes" : "no") << "\n";
  out << "added arcs: " << c.added_arc_count << "\n";
  out << "evidence probability " << num(probability) << "\n";
  return kOk;
}

int cmd_random_test(const Options& o, std::ostream& out) {
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, 8);
  std::uniform_int_distribution<std::size_t> evidence_dist(0, 3);
  std::uniform_int_distribution<std::size_t> virtual_dist(0, 1);
  double worst = 0.0;
  std::size_t containment_failures = 0;
  for (std::size_t k = 0; k < o.count; ++k) {
    RandomNetworkOptions opts;
    opts.nodes = size_dist(rng);
    const Pid network = random_network(rng, opts);
    const NodeOrder target = random_order(rng, network.size());
    const std::size_t observed = std::min(evidence_dist(rng), network.size());
    const EvidenceSet evidence = random_evidence(rng, network, observed, virtual_dist(rng));
    const PipelineResult r = run_pipeline(network, target, evidence);
    worst = std::max(worst, compare_with_oracle(network, evidence, r).max_deviation);
    if (!complexity_report(r.trace, r.original, r.target).clique_containment) ++containment_failures;
  }
  const bool pass = worst <= kTolerance && containment_failures == 0;
  if (o.json) {
    emit(out, {{"command", "random-test"},
               {"seed", o.seed},
               {"count", o.count},
               {"max_deviation", worst},
               {"containment_failures", containment_failures},
               {"pass", pass}});
  } else {
    out << "random-test: " << o.count << " pipelines, seed " << o.seed << "; max deviation "
        << (worst <= kTolerance ? "< 1e-9" : num(worst)) << "; containment failures " << containment_failures
        << "\n";
  }
  return pass ? kOk : kValidationFailure;
}

int dispatch(const Options& o, std::ostream& out) {
  Session s(o);
  static const std::map<std::string, std::function<int(Session&, const Options&, std::ostream&)>> commands = {
      {"moralize", cmd_moralize},     {"chordal", cmd_chordal},     {"mcs", cmd_mcs},
      {"fillin", cmd_fillin},         {"prereverse", cmd_prereverse}, {"absorb", cmd_absorb},
      {"propagate", cmd_propagate},   {"marginal", cmd_marginal},   {"evprob", cmd_evprob},
      {"oracle-check", cmd_oracle_check}, {"report", cmd_report},
  };
  if (o.command == "validate") return cmd_validate(o, out);
  if (o.command == "random-test") return cmd_random_test(o, out);
  return commands.at(o.command)(s, o, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact inference in influence diagrams by directed reduction", "dirred"};
  app.add_option("command", o.command, "Command to run")
      ->required()
      ->check(CLI::IsMember({"validate", "moralize", "chordal", "mcs", "fillin", "prereverse", "absorb", "propagate",
                             "marginal", "evprob", "oracle-check", "report", "random-test"}));
  app.add_option("--net", o.net, "Network file (JSON)");
  app.add_option("--evidence", o.evidence, "Evidence file (JSON)");
  app.add_option("--order", o.order, "Comma-separated node order (target list or tiebreak)");
  app.add_option("--node", o.node, "Node to query");
  app.add_option("--seed", o.seed, "Seed for random-test");
  app.add_option("--count", o.count, "Number of pipelines for random-test");
  app.add_flag("--json", o.json, "Machine-readable output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kStructuralError;
  }

  try {
    return dispatch(o, out);
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.report());
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResourceError;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kStructuralError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kStructuralError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kStructuralError;
  }
}

}  // namespace dirred::cli
