#include "dirred/network_io.hpp"

#include <algorithm>
#include <sstream>

#include "dirred/errors.hpp"

namespace dirred {

using nlohmann::json;

namespace {

std::string summarize(const ValidationReport& report) {
  std::ostringstream msg;
  msg << "network failed validation";
  for (const Finding& f : report.findings) {
    if (f.severity != Severity::error) continue;
    msg << "; " << f.code;
    if (!f.subject.empty()) msg << " at '" << f.subject << "'";
    msg << ": " << f.message;
  }
  return msg.str();
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw FormatError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw FormatError(path + "." + key + ": missing");
  return *it;
}

std::string as_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw FormatError(path + ": expected a string");
  return value.get<std::string>();
}

std::vector<std::string> as_strings(const json& value, const std::string& path) {
  if (!value.is_array()) throw FormatError(path + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < value.size(); ++k)
    out.push_back(as_string(value[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<double> as_numbers(const json& value, const std::string& path) {
  if (!value.is_array()) throw FormatError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    if (!value[k].is_number()) throw FormatError(path + "[" + std::to_string(k) + "]: expected a number");
    out.push_back(value[k].get<double>());
  }
  return out;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(e.what());
  }
}

std::size_t outcome_index(const std::vector<std::string>& outcomes, const std::string& label,
                          const std::string& path) {
  auto it = std::find(outcomes.begin(), outcomes.end(), label);
  if (it == outcomes.end()) throw FormatError(path + ": unknown outcome '" + label + "'");
  return static_cast<std::size_t>(it - outcomes.begin());
}

}  // namespace

ValidationError::ValidationError(ValidationReport report)
    : std::runtime_error(summarize(report)), report_(std::move(report)) {}

Pid parse_network(std::string_view text) { return network_from_json(parse_text(text)); }

Pid network_from_json(const json& doc) {
  const std::string version = as_string(field(doc, "version", "$"), "$.version");
  if (version != kNetworkVersion) throw FormatError("$.version: unsupported '" + version + "'");
  const json& nodes = field(doc, "nodes", "$");
  if (!nodes.is_array()) throw FormatError("$.nodes: expected an array");

  std::vector<std::string> names;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::string path = "$.nodes[" + std::to_string(k) + "]";
    std::string name = as_string(field(nodes[k], "id", path), path + ".id");
    if (std::find(names.begin(), names.end(), name) != names.end())
      throw FormatError(path + ".id: duplicate node '" + name + "'");
    names.push_back(std::move(name));
  }

  DirectedGraph graph(names);
  std::vector<std::vector<std::string>> outcomes(names.size());
  std::vector<std::vector<NodeId>> listed_parents(names.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::string path = "$.nodes[" + std::to_string(k) + "]";
    outcomes[k] = as_strings(field(nodes[k], "outcomes", path), path + ".outcomes");
    if (outcomes[k].empty()) throw FormatError(path + ".outcomes: node '" + names[k] + "' has no outcomes");
    for (const std::string& parent : as_strings(field(nodes[k], "parents", path), path + ".parents")) {
      auto it = std::find(names.begin(), names.end(), parent);
      if (it == names.end())
        throw FormatError(path + ".parents: unknown parent '" + parent + "' of node '" + names[k] + "'");
      const NodeId pid = static_cast<NodeId>(it - names.begin());
      try {
        graph.add_arc(pid, k);
      } catch (const InputError& e) {
        throw FormatError(path + ".parents: " + e.what());
      }
      listed_parents[k].push_back(pid);
    }
  }

  std::vector<Cpt> tables;
  std::vector<std::optional<std::size_t>> observed(names.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::string path = "$.nodes[" + std::to_string(k) + "]";
    TableKind kind = TableKind::conditional;
    if (auto it = nodes[k].find("kind"); it != nodes[k].end()) {
      const std::string text = as_string(*it, path + ".kind");
      if (text == "likelihood")
        kind = TableKind::likelihood;
      else if (text != "conditional")
        throw FormatError(path + ".kind: expected 'conditional' or 'likelihood'");
    }
    if (auto it = nodes[k].find("observed"); it != nodes[k].end()) {
      if (kind != TableKind::likelihood) throw FormatError(path + ".observed: only evidence nodes carry a value");
      observed[k] = outcome_index(outcomes[k], as_string(*it, path + ".observed"), path + ".observed");
    }

    std::vector<NodeId> vars = listed_parents[k];
    std::vector<std::size_t> cards;
    for (NodeId p : vars) cards.push_back(outcomes[p].size());
    if (kind == TableKind::conditional) {
      vars.push_back(k);
      cards.push_back(outcomes[k].size());
    }
    std::vector<double> values = as_numbers(field(nodes[k], "table", path), path + ".table");
    if (values.size() != cell_count(cards)) {
      std::ostringstream msg;
      msg << path << ".table: node '" << names[k] << "' needs " << cell_count(cards) << " values, got "
          << values.size();
      throw FormatError(msg.str());
    }
    tables.push_back(make_cpt(k, kind, Factor(std::move(vars), std::move(cards), std::move(values))));
  }

  Pid p(std::move(graph), std::move(outcomes), std::move(tables), std::move(observed));
  ValidationReport report = validate(p);
  if (!report.ok) throw ValidationError(std::move(report));
  return p;
}

json network_to_json(const Pid& p) {
  json nodes = json::array();
  for (NodeId v = 0; v < p.size(); ++v) {
    json node;
    node["id"] = p.name(v);
    node["outcomes"] = p.outcomes(v);
    json parents = json::array();
    for (NodeId u : p.parents(v)) parents.push_back(p.name(u));
    node["parents"] = std::move(parents);
    if (p.is_evidence(v)) {
      node["kind"] = "likelihood";
      if (auto obs = p.observed(v)) node["observed"] = p.outcomes(v)[*obs];
    }
    node["table"] = p.table(v).table.values();
    nodes.push_back(std::move(node));
  }
  return json{{"version", kNetworkVersion}, {"nodes", std::move(nodes)}};
}

std::string serialize_network(const Pid& p) { return network_to_json(p).dump(2) + "\n"; }

EvidenceSet parse_evidence(std::string_view text, const Pid& network) {
  const json doc = parse_text(text);
  if (!doc.is_object()) throw FormatError("$: expected an object");
  EvidenceSet out;
  auto lookup = [&](const std::string& name, const std::string& path) {
    const auto& names = network.graph().names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw FormatError(path + ": unknown node '" + name + "'");
    return static_cast<NodeId>(it - names.begin());
  };

  if (auto it = doc.find("observations"); it != doc.end()) {
    if (!it->is_array()) throw FormatError("$.observations: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string path = "$.observations[" + std::to_string(k) + "]";
      const NodeId node = lookup(as_string(field((*it)[k], "node", path), path + ".node"), path + ".node");
      const std::string label = as_string(field((*it)[k], "value", path), path + ".value");
      for (const Observation& seen : out.observations)
        if (seen.node == node) throw FormatError(path + ": node '" + network.name(node) + "' observed twice");
      out.observations.push_back({node, outcome_index(network.outcomes(node), label, path + ".value")});
    }
  }
  if (auto it = doc.find("likelihoods"); it != doc.end()) {
    if (!it->is_array()) throw FormatError("$.likelihoods: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string path = "$.likelihoods[" + std::to_string(k) + "]";
      VirtualEvidence ev;
      ev.name = as_string(field((*it)[k], "id", path), path + ".id");
      for (const std::string& parent : as_strings(field((*it)[k], "parents", path), path + ".parents"))
        ev.parents.push_back(lookup(parent, path + ".parents"));
      ev.table = as_numbers(field((*it)[k], "table", path), path + ".table");
      out.likelihoods.push_back(std::move(ev));
    }
  }
  return out;
}

json trace_to_json(const ReversalTrace& trace) {
  json steps = json::array();
  for (const TraceStep& step : trace) {
    json s;
    s["kind"] = to_string(step.kind);
    s["i"] = step.i;
    s["j"] = step.j;
    if (step.value) s["value"] = *step.value;
    if (!step.merged.empty()) s["merged"] = step.merged;
    if (step.kind == StepKind::likelihood_node) s["table"] = step.table;
    s["parents_i"] = step.parents_i;
    s["parents_j"] = step.parents_j;
    json scopes = json::array();
    for (const TableScope& scope : step.scopes) scopes.push_back(json{{"vars", scope.vars}, {"cells", scope.cells}});
    s["scopes"] = std::move(scopes);
    steps.push_back(std::move(s));
  }
  return steps;
}

ReversalTrace trace_from_json(const json& doc) {
  if (!doc.is_array()) throw FormatError("trace: expected an array");
  ReversalTrace trace;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const std::string path = "trace[" + std::to_string(k) + "]";
    const json& s = doc[k];
    TraceStep step;
    try {
      step.kind = step_kind_from_string(as_string(field(s, "kind", path), path + ".kind"));
    } catch (const InputError& e) {
      throw FormatError(path + ".kind: " + e.what());
    }
    step.i = as_string(field(s, "i", path), path + ".i");
    step.j = as_string(field(s, "j", path), path + ".j");
    if (auto it = s.find("value"); it != s.end()) step.value = it->get<std::size_t>();
    if (auto it = s.find("merged"); it != s.end()) step.merged = as_strings(*it, path + ".merged");
    if (auto it = s.find("table"); it != s.end()) step.table = as_numbers(*it, path + ".table");
    step.parents_i = as_strings(field(s, "parents_i", path), path + ".parents_i");
    step.parents_j = as_strings(field(s, "parents_j", path), path + ".parents_j");
    for (const json& scope : field(s, "scopes", path))
      step.scopes.push_back({as_strings(field(scope, "vars", path), path + ".scopes"),
                             field(scope, "cells", path).get<std::size_t>()});
    trace.push_back(std::move(step));
  }
  return trace;
}

json report_to_json(const ValidationReport& report) {
  json findings = json::array();
  for (const Finding& f : report.findings) {
    findings.push_back({{"severity", f.severity == Severity::error ? "error" : "warning"},
                        {"subject", f.subject},
                        {"code", f.code},
                        {"message", f.message}});
  }
  return json{{"ok", report.ok}, {"findings", std::move(findings)}};
}

}  // namespace dirred
