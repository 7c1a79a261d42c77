#pragma once

// JSON network, evidence and trace files.
//
// Network file:
//   { "version": "dirred-network/1",
//     "nodes": [ { "id": "Y", "outcomes": ["0","1"], "parents": ["X"],
//                  "table": [0.8, 0.2, 0.1, 0.9] }, ... ] }
// Tables are flat, parents in listed order most significant, the node's own
// outcome varying fastest. Evidence nodes additionally carry
// "kind": "likelihood" (their table then covers the parents only) and, for
// exact observations, "observed": <outcome label>.
//
// Evidence file:
//   { "observations": [ { "node": "Y", "value": "1" } ],
//     "likelihoods":  [ { "id": "K", "parents": ["C"], "table": [0.2, 0.9] } ] }

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dirred/infer.hpp"
#include "dirred/pid.hpp"
#include "dirred/reduce.hpp"

namespace dirred {

inline constexpr const char* kNetworkVersion = "dirred-network/1";

// Malformed text or schema violations; the message carries a line number or
// a field path.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The file parsed but the diagram fails validate().
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

Pid parse_network(std::string_view text);
Pid network_from_json(const nlohmann::json& doc);
nlohmann::json network_to_json(const Pid& p);
// Canonical text: two-space indent, trailing newline.
std::string serialize_network(const Pid& p);

EvidenceSet parse_evidence(std::string_view text, const Pid& network);

nlohmann::json trace_to_json(const ReversalTrace& trace);
ReversalTrace trace_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const ValidationReport& report);

}  // namespace dirred
