#include "dirred/pid.hpp"

#include <gtest/gtest.h>

#include "dirred/errors.hpp"
#include "dirred/reduce.hpp"
#include "fixtures.hpp"

namespace dirred {
namespace {

using testing::arc_names;
using testing::chain2;
using testing::chain3;
using testing::collider;
using testing::PidBuilder;
using Pairs = std::vector<std::pair<std::string, std::string>>;

bool has_finding(const ValidationReport& report, const std::string& code, Severity severity = Severity::error) {
  for (const Finding& f : report.findings)
    if (f.code == code && f.severity == severity) return true;
  return false;
}

Pid collider_with_x1_x2() {
  return PidBuilder()
      .node("X1", 2, {}, {0.6, 0.4})
      .node("X2", 2, {"X1"}, {0.5, 0.5, 0.1, 0.9})
      .node("X3", 2, {"X1", "X2"}, {0.9, 0.1, 0.5, 0.5, 0.3, 0.7, 0.05, 0.95})
      .build();
}

std::vector<std::string> names(const Pid& p, const std::vector<NodeId>& ids) {
  std::vector<std::string> out;
  for (NodeId v : ids) out.push_back(p.name(v));
  return out;
}

TEST(MakeCpt, CanonicalizesParentOrder) {
  // Table over (C, A, B) with B the child; canonical is (A, C, B).
  const Factor listed({2, 0, 1}, {2, 3, 2}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  const Cpt cpt = make_cpt(1, TableKind::conditional, listed);
  EXPECT_EQ(cpt.table.vars(), (std::vector<NodeId>{0, 2, 1}));
  EXPECT_EQ(cpt.parents(), (NodeSet{0, 2}));
  EXPECT_EQ(cpt.child_cardinality(), 2u);
  // Entry (A=1, C=1, B=0) was at (C=1, A=1, B=0) = index 1*6 + 1*2 + 0.
  EXPECT_EQ(cpt.table.values()[1 * 4 + 1 * 2 + 0], listed.values()[8]);
}

TEST(Validate, Chain2IsValid) {
  const ValidationReport report = validate(chain2());
  EXPECT_TRUE(report.ok);
  EXPECT_TRUE(report.findings.empty());
}

TEST(Validate, Normalization) {
  const Pid p = PidBuilder().node("X", 2, {}, {0.7, 0.3}).node("Y", 2, {"X"}, {0.5, 0.6, 0.1, 0.9}).build();
  const ValidationReport report = validate(p);
  EXPECT_FALSE(report.ok);
  EXPECT_TRUE(has_finding(report, "normalization"));
}

TEST(Validate, ParentsMismatch) {
  Pid p = chain2();
  p.add_arc(p.id("Y"), p.id("X"));
  p.remove_arc(p.id("X"), p.id("Y"));
  const ValidationReport report = validate(p);
  EXPECT_FALSE(report.ok);
  EXPECT_TRUE(has_finding(report, "parents mismatch"));
}

TEST(Validate, NegativeValues) {
  const Pid p = PidBuilder().node("X", 2, {}, {1.5, -0.5}).build();
  EXPECT_TRUE(has_finding(validate(p), "values"));
}

TEST(Validate, Cycle) {
  Pid p = PidBuilder().node("A", 2, {}, {0.5, 0.5}).node("B", 2, {"A"}, {0.5, 0.5, 0.5, 0.5}).build();
  p.add_arc(1, 0);
  EXPECT_TRUE(has_finding(validate(p), "cycle"));
}

TEST(Validate, NonAdjacentLikelihoodParentsWarn) {
  Pid p = collider();
  add_likelihood_node(p, {"K", {p.id("X1"), p.id("X2")}, {1, 2, 3, 4}});
  const ValidationReport report = validate(p);
  EXPECT_TRUE(report.ok);
  EXPECT_TRUE(has_finding(report, "decomposability", Severity::warning));
}

TEST(AncestralSet, Examples) {
  const Pid chain = chain3();
  EXPECT_EQ(names(chain, ancestral_set(chain, chain.id("C"))), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(names(chain, ancestral_set(chain, chain.id("A"))), (std::vector<std::string>{"A"}));
  const Pid col = collider();
  EXPECT_EQ(names(col, ancestral_set(col, col.id("X3"))), (std::vector<std::string>{"X1", "X2", "X3"}));
  EXPECT_THROW(ancestral_set(col, 7), InputError);
}

TEST(IsDecomposable, Examples) {
  const Pid col = collider();
  EXPECT_FALSE(is_decomposable(col));
  EXPECT_TRUE(is_decomposable(collider_with_x1_x2()));
  EXPECT_TRUE(is_decomposable_wrt(col, col.id("X1")));
  EXPECT_FALSE(is_decomposable_wrt(col, col.id("X3")));
}

TEST(UniqueOrderedList, Examples) {
  const Pid married = collider_with_x1_x2();
  EXPECT_EQ(names(married, unique_ordered_list(married, married.id("X3"))),
            (std::vector<std::string>{"X1", "X2", "X3"}));
  const Pid chain = chain3();
  EXPECT_EQ(names(chain, unique_ordered_list(chain, chain.id("C"))), (std::vector<std::string>{"A", "B", "C"}));
  const Pid col = collider();
  EXPECT_THROW(unique_ordered_list(col, col.id("X3")), InputError);
}

TEST(MinimalDpidGraph, Examples) {
  const Pid col = collider();
  const auto& n = col.graph().names();
  auto order = [&](std::initializer_list<const char*> labels) {
    std::vector<NodeId> seq;
    for (const char* l : labels) seq.push_back(static_cast<NodeId>(std::find(n.begin(), n.end(), l) - n.begin()));
    return NodeOrder(seq, n.size());
  };
  EXPECT_EQ(arc_names(minimal_dpid_graph(col, order({"X3", "X1", "X2"}))),
            (Pairs{{"X1", "X2"}, {"X3", "X1"}, {"X3", "X2"}}));
  EXPECT_EQ(arc_names(minimal_dpid_graph(col, order({"X1", "X2", "X3"}))),
            (Pairs{{"X1", "X2"}, {"X1", "X3"}, {"X2", "X3"}}));
  const Pid chain = chain3();
  EXPECT_EQ(minimal_dpid_graph(chain, NodeOrder::identity(3)), chain.graph());
}

TEST(Pid, AddAndRemoveNode) {
  Pid p = chain2();
  const NodeId k = p.add_node("K", {"observed"}, std::nullopt);
  EXPECT_EQ(k, 2u);
  EXPECT_TRUE(p.is_evidence(k));
  EXPECT_EQ(p.evidence(), (NodeSet{k}));
  p.remove_node(k);
  EXPECT_EQ(p, chain2());
  EXPECT_THROW(p.remove_node(p.id("X")), InputError);
}

}  // namespace
}  // namespace dirred
