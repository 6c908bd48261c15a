#include "latent/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace latent {

namespace {

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

CausalScenario::CausalScenario(
    std::vector<Node> nodes,
    std::vector<std::pair<std::string, std::string>> edges)
    : nodes_(std::move(nodes)) {
  for (int i = 0; i < node_count(); ++i) {
    const Node& n = nodes_[i];
    if (by_name_.count(n.name))
      throw DuplicateName("duplicate node name: " + n.name);
    by_name_[n.name] = i;
    if (n.kind == NodeKind::Observed && n.cardinality < 2)
      throw ObservedWithoutCardinality("observed node " + n.name +
                                       " needs cardinality >= 2");
  }
  for (const auto& [p, c] : edges) {
    edges_.emplace_back(index_of(p), index_of(c));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  parents_.resize(node_count());
  children_.resize(node_count());
  for (const auto& [p, c] : edges_) {
    parents_[c].push_back(p);
    children_[p].push_back(c);
  }
  for (auto& v : parents_) v = sorted(std::move(v));
  for (auto& v : children_) v = sorted(std::move(v));

  // Kahn's algorithm; leftovers mean a cycle.
  std::vector<int> indeg(node_count());
  for (const auto& [p, c] : edges_) indeg[c]++;
  std::deque<int> q;
  for (int i = 0; i < node_count(); ++i)
    if (indeg[i] == 0) q.push_back(i);
  int seen = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    ++seen;
    for (int c : children_[u])
      if (--indeg[c] == 0) q.push_back(c);
  }
  if (seen != node_count()) throw CycleDetected("edge relation has a cycle");
}

int CausalScenario::index_of(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) throw UnknownNode("unknown node: " + name);
  return it->second;
}

bool CausalScenario::has_node(const std::string& name) const {
  return by_name_.count(name) > 0;
}

bool CausalScenario::is_intermediate_latent(int i) const {
  if (!is_latent(i)) return false;
  for (int p : parents_[i])
    if (is_latent(p)) return true;
  return false;
}

std::vector<int> CausalScenario::settings() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (is_setting(i)) out.push_back(i);
  return out;
}

std::vector<int> CausalScenario::outcomes() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (is_outcome(i)) out.push_back(i);
  return out;
}

std::vector<int> CausalScenario::latents() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (is_latent(i)) out.push_back(i);
  return out;
}

std::vector<int> CausalScenario::intermediate_latents() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (is_intermediate_latent(i)) out.push_back(i);
  return out;
}

std::set<int> CausalScenario::ancestors(const std::set<int>& of) const {
  std::set<int> anc;
  std::deque<int> q(of.begin(), of.end());
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int p : parents_[u])
      if (anc.insert(p).second) q.push_back(p);
  }
  for (int x : of) anc.erase(x);
  return anc;
}

std::vector<std::string> CausalScenario::names(const std::vector<int>& ids) const {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(nodes_[i].name);
  return out;
}

bool CausalScenario::operator==(const CausalScenario& o) const {
  if (node_count() != o.node_count() || edges_.size() != o.edges_.size())
    return false;
  for (int i = 0; i < node_count(); ++i) {
    const Node& a = nodes_[i];
    if (!o.has_node(a.name)) return false;
    const Node& b = o.nodes_[o.index_of(a.name)];
    if (a.kind != b.kind || a.cardinality != b.cardinality) return false;
  }
  for (const auto& [p, c] : edges_) {
    auto e = std::make_pair(o.index_of(nodes_[p].name), o.index_of(nodes_[c].name));
    if (!std::binary_search(o.edges_.begin(), o.edges_.end(), e)) {
      // o.edges_ is sorted by indices, not by our index mapping
      if (std::find(o.edges_.begin(), o.edges_.end(), e) == o.edges_.end())
        return false;
    }
  }
  return true;
}

Classification validate(const CausalScenario& g) {
  Classification c;
  c.settings = g.names(g.settings());
  c.outcomes = g.names(g.outcomes());
  c.latents = g.names(g.latents());
  c.intermediate_latents = g.names(g.intermediate_latents());
  return c;
}

namespace {

CausalScenario rebuild(const CausalScenario& g,
                       const std::set<int>& drop_nodes,
                       const std::set<std::pair<int, int>>& drop_edges,
                       const std::set<std::pair<int, int>>& add_edges) {
  std::vector<Node> nodes;
  std::vector<int> remap(g.node_count(), -1);
  for (int i = 0; i < g.node_count(); ++i) {
    if (drop_nodes.count(i)) continue;
    remap[i] = static_cast<int>(nodes.size());
    nodes.push_back(g.node(i));
  }
  std::set<std::pair<int, int>> edge_set(g.edges().begin(), g.edges().end());
  for (const auto& e : drop_edges) edge_set.erase(e);
  for (const auto& e : add_edges) edge_set.insert(e);
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [p, ch] : edge_set) {
    if (remap[p] < 0 || remap[ch] < 0) continue;
    edges.emplace_back(g.node(p).name, g.node(ch).name);
  }
  return CausalScenario(std::move(nodes), std::move(edges));
}

/// Deletes node i, wiring each of its parents to each of its children.
CausalScenario contract(const CausalScenario& g, int i) {
  std::set<std::pair<int, int>> add;
  for (int p : g.parents(i))
    for (int c : g.children(i)) add.insert({p, c});
  return rebuild(g, {i}, {}, add);
}

}  // namespace

ExogenizeResult exogenize(const CausalScenario& g) {
  ExogenizeResult res{g, false};
  std::vector<std::string> former;
  for (;;) {
    const CausalScenario& cur = res.graph;
    int target = -1;
    for (int i = 0; i < cur.node_count(); ++i)
      if (cur.is_intermediate_latent(i)) {
        target = i;
        break;
      }
    if (target < 0) break;
    if (cur.node(target).kind == NodeKind::LatentQuantum)
      res.classically_equivalent_only = true;
    former.push_back(cur.node(target).name);
    std::set<std::pair<int, int>> add, drop;
    for (int p : cur.parents(target))
      for (int c : cur.children(target)) add.insert({p, c});
    for (int p : cur.parents(target))
      if (cur.is_latent(p)) drop.insert({p, target});
    res.graph = rebuild(cur, {}, drop, add);
  }
  // A former intermediate whose children are covered by another latent is
  // redundant in any theory; dropping it recovers the plain exogenized graph.
  for (const std::string& name : former) {
    const CausalScenario& cur = res.graph;
    if (!cur.has_node(name)) continue;
    int i = cur.index_of(name);
    const auto& ch = cur.children(i);
    bool covered = false;
    for (int l : cur.latents()) {
      if (l == i) continue;
      const auto& lc = cur.children(l);
      covered = std::includes(lc.begin(), lc.end(), ch.begin(), ch.end());
      if (covered) break;
    }
    if (covered) res.graph = rebuild(cur, {i}, {}, {});
  }
  return res;
}

bool exogenization_safe(const CausalScenario& g, const std::string& latent_name) {
  int i = g.index_of(latent_name);
  if (!g.is_intermediate_latent(i))
    throw NotAnIntermediateLatent(latent_name + " is not an intermediate latent");
  if (g.children(i).size() == 1) return true;
  if (g.parents(i).size() == 1) return true;
  for (int a : g.ancestors({i}))
    if (g.node(a).kind == NodeKind::LatentQuantum) return false;
  return true;
}

CausalScenario interrupt(const CausalScenario& g, const std::string& setting,
                         const std::vector<std::vector<std::string>>& blocks) {
  int s = g.index_of(setting);
  if (!g.is_setting(s)) throw NotASetting(setting + " is not a setting");
  std::set<int> child_set(g.children(s).begin(), g.children(s).end());
  std::set<int> covered;
  for (const auto& block : blocks) {
    if (block.empty()) throw InvalidPartition("empty block");
    for (const auto& name : block) {
      int c = g.index_of(name);
      if (!child_set.count(c))
        throw InvalidPartition(name + " is not a child of " + setting);
      if (!covered.insert(c).second)
        throw InvalidPartition(name + " appears in two blocks");
    }
  }
  if (covered != child_set)
    throw InvalidPartition("blocks do not cover all children of " + setting);

  std::vector<Node> nodes;
  for (int i = 0; i < g.node_count(); ++i) {
    if (i == s) {
      for (size_t k = 0; k < blocks.size(); ++k) {
        Node copy = g.node(s);
        copy.name = setting + std::string(k, '\'');
        nodes.push_back(copy);
      }
    } else {
      nodes.push_back(g.node(i));
    }
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [p, c] : g.edges()) {
    if (p != s) {
      edges.emplace_back(g.node(p).name, g.node(c).name);
      continue;
    }
    for (size_t k = 0; k < blocks.size(); ++k) {
      const auto& block = blocks[k];
      if (std::find(block.begin(), block.end(), g.node(c).name) != block.end())
        edges.emplace_back(setting + std::string(k, '\''), g.node(c).name);
    }
  }
  return CausalScenario(std::move(nodes), std::move(edges));
}

FullInterruption full_interruption(const CausalScenario& g) {
  FullInterruption out{g, {}};
  for (int s : g.settings()) {
    const std::string name = g.node(s).name;
    int cur = out.graph.index_of(name);
    const auto& kids = out.graph.children(cur);
    std::vector<std::vector<std::string>> blocks;
    for (int c : kids) blocks.push_back({out.graph.node(c).name});
    if (blocks.size() > 1) out.graph = interrupt(out.graph, name, blocks);
    for (size_t k = 0; k < std::max<size_t>(blocks.size(), 1); ++k)
      out.merge[name + std::string(k, '\'')] = name;
  }
  return out;
}

bool d_separated(const CausalScenario& g, const std::set<std::string>& xs,
                 const std::set<std::string>& ys,
                 const std::set<std::string>& zs) {
  std::set<int> x, y, z;
  for (const auto& n : xs) x.insert(g.index_of(n));
  for (const auto& n : ys) y.insert(g.index_of(n));
  for (const auto& n : zs) z.insert(g.index_of(n));

  std::set<int> barrier = g.ancestors(z);
  barrier.insert(z.begin(), z.end());

  // Reachability over (node, direction): up = entered against an edge.
  enum { Up = 0, Down = 1 };
  std::set<std::pair<int, int>> visited;
  std::deque<std::pair<int, int>> q;
  for (int s : x) q.push_back({s, Up});
  while (!q.empty()) {
    auto [u, d] = q.front();
    q.pop_front();
    if (!visited.insert({u, d}).second) continue;
    if (!z.count(u) && y.count(u)) return false;
    if (d == Up && !z.count(u)) {
      for (int p : g.parents(u)) q.push_back({p, Up});
      for (int c : g.children(u)) q.push_back({c, Down});
    } else if (d == Down) {
      if (!z.count(u))
        for (int c : g.children(u)) q.push_back({c, Down});
      if (barrier.count(u))
        for (int p : g.parents(u)) q.push_back({p, Up});
    }
  }
  return true;
}

std::vector<IndependenceConstraint> nosignaling_constraints(
    const CausalScenario& g) {
  std::vector<IndependenceConstraint> out;
  auto outcome_ids = g.outcomes();
  auto setting_ids = g.settings();
  const int m = static_cast<int>(outcome_ids.size());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::set<std::string> s_names;
    for (int b = 0; b < m; ++b)
      if (mask & (1u << b)) s_names.insert(g.node(outcome_ids[b]).name);
    for (int s : setting_ids) {
      std::set<std::string> cond;
      for (int t : setting_ids)
        if (t != s) cond.insert(g.node(t).name);
      if (d_separated(g, s_names, {g.node(s).name}, cond)) {
        IndependenceConstraint c;
        c.outputs.assign(s_names.begin(), s_names.end());
        c.free_settings = {g.node(s).name};
        c.conditioning_settings.assign(cond.begin(), cond.end());
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

CausalScenario reduce(const CausalScenario& g) {
  CausalScenario cur = g;
  for (bool changed = true; changed;) {
    changed = false;
    // Rule 1: contract a latent with exactly one child.
    for (int i = 0; i < cur.node_count() && !changed; ++i)
      if (cur.is_latent(i) && cur.children(i).size() == 1) {
        cur = contract(cur, i);
        changed = true;
      }
    if (changed) continue;
    // Rule 2: contract an intermediate latent with exactly one parent.
    for (int i = 0; i < cur.node_count() && !changed; ++i)
      if (cur.is_intermediate_latent(i) && cur.parents(i).size() == 1) {
        cur = contract(cur, i);
        changed = true;
      }
    if (changed) continue;
    // Rule 3: drop a root latent covered by another root latent.
    for (int i = 0; i < cur.node_count() && !changed; ++i) {
      if (!cur.is_latent(i) || !cur.parents(i).empty()) continue;
      const auto& ci = cur.children(i);
      for (int j = 0; j < cur.node_count() && !changed; ++j) {
        if (i == j || !cur.is_latent(j) || !cur.parents(j).empty()) continue;
        const auto& cj = cur.children(j);
        if (ci.size() < cj.size() &&
            std::includes(cj.begin(), cj.end(), ci.begin(), ci.end())) {
          cur = rebuild(cur, {i}, {}, {});
          changed = true;
        }
      }
    }
    if (changed) continue;
    // Rule 4: a direct edge is redundant when a quantum latent mediates it.
    for (const auto& [u, w] : cur.edges()) {
      bool mediated = false;
      for (int mu : cur.children(u)) {
        if (mu == w || !cur.is_latent(mu) ||
            cur.node(mu).kind != NodeKind::LatentQuantum)
          continue;
        const auto& mc = cur.children(mu);
        if (std::binary_search(mc.begin(), mc.end(), w)) {
          mediated = true;
          break;
        }
      }
      if (mediated) {
        cur = rebuild(cur, {}, {{u, w}}, {});
        changed = true;
        break;
      }
    }
  }
  return cur;
}

namespace {

std::string copy_name(const std::string& base, int k, int total) {
  return total == 1 ? base : base + "^" + std::to_string(k);
}

}  // namespace

Inflation inflate(const CausalScenario& original, const InflationSpec& spec) {
  auto copies_of = [&](int node) {
    const std::string& name = original.node(node).name;
    const auto& m = original.is_latent(node) ? spec.latent_copies
                                             : spec.observed_copies;
    auto it = m.find(name);
    int n = it == m.end() ? 1 : it->second;
    if (n < 1) throw InconsistentWiring("copy count < 1 for " + name);
    return n;
  };
  for (const auto& [name, n] : spec.latent_copies) {
    int i = original.index_of(name);
    if (!original.is_latent(i))
      throw InconsistentWiring(name + " is not a latent node");
    (void)n;
  }

  Inflation out;
  std::vector<Node> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < original.node_count(); ++i) {
    int n = copies_of(i);
    for (int k = 1; k <= n; ++k) {
      Node c = original.node(i);
      c.name = copy_name(original.node(i).name, k, n);
      nodes.push_back(c);
      out.origin[c.name] = original.node(i).name;
    }
  }
  for (int i = 0; i < original.node_count(); ++i) {
    const std::string& child = original.node(i).name;
    int nc = copies_of(i);
    for (int k = 1; k <= nc; ++k) {
      for (int p : original.parents(i)) {
        const std::string& par = original.node(p).name;
        int np = copies_of(p);
        int target = 1;
        auto it = spec.wiring.find({child, k, par});
        if (it != spec.wiring.end()) {
          target = it->second;
        } else if (np > 1) {
          throw InconsistentWiring("missing wiring for (" + child + "," +
                                   std::to_string(k) + ") <- " + par);
        }
        if (target < 1 || target > np)
          throw InconsistentWiring("wiring target out of range for " + par);
        edges.emplace_back(copy_name(par, target, np), copy_name(child, k, nc));
      }
    }
  }
  out.graph = CausalScenario(std::move(nodes), std::move(edges));

  // Non-fanout: a latent copy may feed at most one copy of each original
  // child (hence never more children than the original latent has).
  for (int i = 0; i < out.graph.node_count(); ++i) {
    if (!out.graph.is_latent(i)) continue;
    std::set<std::string> seen;
    for (int c : out.graph.children(i)) {
      const std::string& orig = out.origin.at(out.graph.node(c).name);
      if (!seen.insert(orig).second)
        throw FanoutDetected(out.graph.node(i).name +
                             " feeds two copies of " + orig);
    }
  }

  // Injectability: the ancestral subgraph of a set of observed copies must
  // match the original's under the copy -> original labeling.
  auto injectable_set = [&](const std::vector<int>& obs_copies) {
    std::set<int> s(obs_copies.begin(), obs_copies.end());
    std::set<int> closure = out.graph.ancestors(s);
    closure.insert(s.begin(), s.end());
    std::set<std::string> origins;
    for (int u : closure) {
      if (!origins.insert(out.origin.at(out.graph.node(u).name)).second)
        return false;  // two copies of one original in the closure
    }
    // Image must be the ancestral closure of the image set.
    std::set<int> img;
    for (int u : s) img.insert(original.index_of(out.origin.at(out.graph.node(u).name)));
    std::set<int> img_closure = original.ancestors(img);
    img_closure.insert(img.begin(), img.end());
    std::set<std::string> img_names;
    for (int u : img_closure) img_names.insert(original.node(u).name);
    if (img_names != origins) return false;
    // Edge biconditional within the closures.
    std::map<std::string, int> rep;  // original name -> inflation node
    for (int u : closure) rep[out.origin.at(out.graph.node(u).name)] = u;
    for (int u : closure) {
      for (int v : closure) {
        int ou = original.index_of(out.origin.at(out.graph.node(u).name));
        int ov = original.index_of(out.origin.at(out.graph.node(v).name));
        const auto& oc = original.children(ou);
        const auto& ic = out.graph.children(u);
        bool orig_edge = std::binary_search(oc.begin(), oc.end(), ov);
        bool infl_edge = std::binary_search(ic.begin(), ic.end(), v);
        if (orig_edge != infl_edge) return false;
      }
    }
    return true;
  };

  std::vector<int> obs;
  for (int i = 0; i < out.graph.node_count(); ++i)
    if (out.graph.is_observed(i)) obs.push_back(i);
  const int n = static_cast<int>(obs.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    std::set<std::string> origs;
    bool dup = false;
    for (int b = 0; b < n; ++b)
      if (mask & (1u << b)) {
        subset.push_back(obs[b]);
        if (!origs.insert(out.origin.at(out.graph.node(obs[b]).name)).second)
          dup = true;
      }
    if (dup) continue;
    if (injectable_set(subset)) {
      std::vector<std::string> names;
      for (int u : subset) names.push_back(out.graph.node(u).name);
      out.injectable.push_back(std::move(names));
    }
  }
  return out;
}

CausalScenario correlation_scenario(const CausalScenario& g) {
  std::vector<Node> nodes = g.nodes();
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [p, c] : g.edges())
    if (!g.is_setting(p))
      edges.emplace_back(g.node(p).name, g.node(c).name);
  for (int s : g.settings()) {
    std::string src = "L_" + g.node(s).name;
    while (g.has_node(src)) src += "_src";
    nodes.push_back({src, NodeKind::LatentQuantum, 0});
    edges.emplace_back(src, g.node(s).name);
    for (int c : g.children(s)) edges.emplace_back(src, g.node(c).name);
  }
  return CausalScenario(std::move(nodes), std::move(edges));
}

bool isomorphic(const CausalScenario& a, const CausalScenario& b,
                const IsoOptions& opts) {
  if (a.node_count() != b.node_count() || a.edges().size() != b.edges().size())
    return false;
  const int n = a.node_count();
  std::vector<std::vector<int>> cand(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Node& x = a.node(i);
      const Node& y = b.node(j);
      if (x.kind != y.kind) continue;
      if (a.parents(i).size() != b.parents(j).size()) continue;
      if (a.children(i).size() != b.children(j).size()) continue;
      if (opts.match_cardinality && x.cardinality != y.cardinality) continue;
      if (opts.match_observed_names && x.kind == NodeKind::Observed &&
          x.name != y.name)
        continue;
      cand[i].push_back(j);
    }
    if (cand[i].empty()) return false;
  }
  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> go = [&](int i) -> bool {
    if (i == n) return true;
    for (int j : cand[i]) {
      if (used[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        const auto& ac = a.children(k);
        const auto& bc = b.children(map[k]);
        bool ae = std::binary_search(ac.begin(), ac.end(), i);
        bool be = std::binary_search(bc.begin(), bc.end(), j);
        if (ae != be) ok = false;
        const auto& ac2 = a.children(i);
        const auto& bc2 = b.children(j);
        bool ae2 = std::binary_search(ac2.begin(), ac2.end(), k);
        bool be2 = std::binary_search(bc2.begin(), bc2.end(), map[k]);
        if (ae2 != be2) ok = false;
      }
      if (!ok) continue;
      map[i] = j;
      used[j] = 1;
      if (go(i + 1)) return true;
      used[j] = 0;
      map[i] = -1;
    }
    return false;
  };
  return go(0);
}

CausalScenario ancestral_subgraph(const CausalScenario& g,
                                  const std::set<std::string>& keep) {
  std::set<int> s;
  for (const auto& n : keep) s.insert(g.index_of(n));
  std::set<int> closure = g.ancestors(s);
  closure.insert(s.begin(), s.end());
  std::vector<Node> nodes;
  for (int i = 0; i < g.node_count(); ++i)
    if (closure.count(i)) nodes.push_back(g.node(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [p, c] : g.edges())
    if (closure.count(p) && closure.count(c))
      edges.emplace_back(g.node(p).name, g.node(c).name);
  return CausalScenario(std::move(nodes), std::move(edges));
}

}  // namespace latent
