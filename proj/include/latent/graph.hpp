#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace latent {

enum class NodeKind { Observed, LatentClassical, LatentQuantum };

struct Node {
  std::string name;
  NodeKind kind = NodeKind::Observed;
  int cardinality = 0;  // observed nodes only
};

struct CycleDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DuplicateName : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ObservedWithoutCardinality : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAnIntermediateLatent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotASetting : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidPartition : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FanoutDetected : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentWiring : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable DAG of observed and latent nodes. Roles are structural: a
/// "setting" is a parentless observed node, an "outcome" is an observed node
/// with at least one parent, and an "intermediate latent" is a latent node
/// with at least one latent parent. Every transform returns a new graph.
class CausalScenario {
 public:
  CausalScenario() = default;
  /// Builds and validates; throws CycleDetected / DuplicateName /
  /// ObservedWithoutCardinality / UnknownNode.
  CausalScenario(std::vector<Node> nodes,
                 std::vector<std::pair<std::string, std::string>> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int i) const { return nodes_[i]; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  int index_of(const std::string& name) const;
  bool has_node(const std::string& name) const;

  const std::vector<int>& parents(int i) const { return parents_[i]; }
  const std::vector<int>& children(int i) const { return children_[i]; }

  bool is_observed(int i) const { return nodes_[i].kind == NodeKind::Observed; }
  bool is_latent(int i) const { return !is_observed(i); }
  bool is_setting(int i) const { return is_observed(i) && parents_[i].empty(); }
  bool is_outcome(int i) const { return is_observed(i) && !parents_[i].empty(); }
  bool is_intermediate_latent(int i) const;

  std::vector<int> settings() const;
  std::vector<int> outcomes() const;
  std::vector<int> latents() const;
  std::vector<int> intermediate_latents() const;

  std::set<int> ancestors(const std::set<int>& of) const;  // excludes `of`
  std::vector<std::string> names(const std::vector<int>& ids) const;

  bool operator==(const CausalScenario& o) const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::pair<int, int>> edges_;  // (parent, child), sorted
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
  std::map<std::string, int> by_name_;
};

struct Classification {
  std::vector<std::string> settings;
  std::vector<std::string> outcomes;
  std::vector<std::string> latents;
  std::vector<std::string> intermediate_latents;
};

/// Role partition of a valid scenario (construction already validates).
Classification validate(const CausalScenario& g);

struct ExogenizeResult {
  CausalScenario graph;
  /// True when a removed intermediate was quantum: the rewiring is then only
  /// guaranteed to preserve the classical correlation set (no-broadcasting).
  bool classically_equivalent_only = false;
};

/// Removes intermediate latents: each one's parents gain edges to all of its
/// children, its latent-parent edges are dropped, and the node itself is
/// deleted once another latent covers its child set. Runs to fixpoint.
ExogenizeResult exogenize(const CausalScenario& g);

/// True iff exogenizing `latent_name` provably preserves the correlation set
/// under any theory: single child, or single parent, or all ancestors
/// classical.
bool exogenization_safe(const CausalScenario& g, const std::string& latent_name);

/// Splits a setting into one copy per block of `blocks` (a partition of its
/// children). Copy k keeps the original name followed by k primes.
CausalScenario interrupt(const CausalScenario& g, const std::string& setting,
                         const std::vector<std::vector<std::string>>& blocks);

struct FullInterruption {
  CausalScenario graph;
  /// interrupted setting copy -> original setting
  std::map<std::string, std::string> merge;
};

/// Splits every multi-child setting into per-child copies so that each
/// outcome reads private setting wires. The d-separation constraints of the
/// result are the complete no-signaling family of the scenario; a shared
/// setting hides part of that family (two parties reading one wire cannot be
/// signaled apart by conditioning).
FullInterruption full_interruption(const CausalScenario& g);

/// Standard d-separation verdict for disjoint node sets.
bool d_separated(const CausalScenario& g, const std::set<std::string>& xs,
                 const std::set<std::string>& ys,
                 const std::set<std::string>& zs);

struct IndependenceConstraint {
  std::vector<std::string> outputs;
  std::vector<std::string> free_settings;          // marginal must not depend on these
  std::vector<std::string> conditioning_settings;  // remaining settings
  bool operator==(const IndependenceConstraint&) const = default;
};

/// Complete d-separation-derived no-signaling family: for every nonempty
/// outcome subset S and setting s, emits S ⫫ s | (other settings) whenever it
/// holds in the graph. Implied constraints are retained.
std::vector<IndependenceConstraint> nosignaling_constraints(
    const CausalScenario& g);

/// Simplification rules, applied to fixpoint:
///  1. contract a latent with exactly one child (parents inherit the child);
///  2. contract an intermediate latent with exactly one parent;
///  3. delete a parentless latent whose child set is strictly contained in
///     another parentless latent's child set;
///  4. delete an edge u→w when a quantum latent μ carries u→μ→w.
CausalScenario reduce(const CausalScenario& g);

struct InflationSpec {
  /// Copies per original latent (defaults to 1 when absent).
  std::map<std::string, int> latent_copies;
  /// Copies per original observed node (defaults to 1 when absent).
  std::map<std::string, int> observed_copies;
  /// (child node name, child copy, latent parent name) -> parent copy index,
  /// 1-based. May be omitted when the parent has a single copy.
  std::map<std::tuple<std::string, int, std::string>, int> wiring;
};

struct Inflation {
  CausalScenario graph;
  std::map<std::string, std::string> origin;  // copy name -> original name
  /// All observed-copy sets whose ancestral subgraph matches the original's
  /// under the copy -> original labeling.
  std::vector<std::vector<std::string>> injectable;
};

/// Builds the inflation graph defined by `spec` and enumerates injectable
/// sets. Throws FanoutDetected when a latent copy would feed two copies of
/// the same original child, InconsistentWiring for out-of-range targets.
Inflation inflate(const CausalScenario& original, const InflationSpec& spec);

/// Fritz-style correlation scenario: every setting s is replaced by a fresh
/// root latent with children {s} ∪ children(s), turning s into an outcome.
CausalScenario correlation_scenario(const CausalScenario& g);

struct IsoOptions {
  bool match_observed_names = false;
  bool match_cardinality = false;
};

/// Backtracking DAG isomorphism respecting node kinds (and optionally
/// observed names / cardinalities). Latent names never need to match.
bool isomorphic(const CausalScenario& a, const CausalScenario& b,
                const IsoOptions& opts = {});

/// Induced subgraph on `keep` ∪ ancestors(keep).
CausalScenario ancestral_subgraph(const CausalScenario& g,
                                  const std::set<std::string>& keep);

}  // namespace latent
