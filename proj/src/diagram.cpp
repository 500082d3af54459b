#include "ddk/diagram.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "ddk/oracle.hpp"

namespace ddk {

const char* class_name(DiagramClass c) {
  switch (c) {
    case DiagramClass::Bdd: return "bdd";
    case DiagramClass::Fbdd: return "fbdd";
    case DiagramClass::Obdd: return "obdd";
    case DiagramClass::VeeObdd: return "vee-obdd";
    case DiagramClass::Vee1Obdd: return "vee1-obdd";
    case DiagramClass::KObdd: return "k-obdd";
  }
  return "bdd";
}

std::optional<DiagramClass> parse_class(const std::string& s) {
  for (auto c : {DiagramClass::Bdd, DiagramClass::Fbdd, DiagramClass::Obdd, DiagramClass::VeeObdd,
                 DiagramClass::Vee1Obdd, DiagramClass::KObdd})
    if (s == class_name(c)) return c;
  return std::nullopt;
}

VarId Diagram::find_var(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  return it == vars.end() ? -1 : static_cast<VarId>(it - vars.begin());
}

VarId Diagram::ensure_var(const std::string& name) {
  VarId v = find_var(name);
  if (v >= 0) return v;
  vars.push_back(name);
  return static_cast<VarId>(vars.size() - 1);
}

NodeId Diagram::add_sink(bool value) {
  Node n;
  n.kind = NodeKind::Sink;
  n.value = value;
  nodes.push_back(std::move(n));
  return static_cast<NodeId>(nodes.size() - 1);
}

NodeId Diagram::add_decision(VarId var, NodeId lo, NodeId hi) {
  Node n;
  n.kind = NodeKind::Decision;
  n.var = var;
  n.lo = lo;
  n.hi = hi;
  nodes.push_back(std::move(n));
  return static_cast<NodeId>(nodes.size() - 1);
}

NodeId Diagram::add_nondet(std::vector<NodeId> kids) {
  Node n;
  n.kind = NodeKind::Nondet;
  n.kids = std::move(kids);
  nodes.push_back(std::move(n));
  return static_cast<NodeId>(nodes.size() - 1);
}

std::vector<int> Diagram::positions() const {
  std::vector<int> pos(vars.size(), -1);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  return pos;
}

bool Diagram::has_nondet() const {
  for (NodeId u : topo_order(*this))
    if (nodes[u].is_or()) return true;
  return false;
}

int Diagram::num_layers() const {
  int k = 0;
  for (int l : layer) k = std::max(k, l);
  return k;
}

std::vector<NodeId> topo_order(const Diagram& d, NodeId from) {
  if (from < 0) from = d.root;
  std::vector<NodeId> out;
  if (from < 0 || from >= static_cast<NodeId>(d.size())) return out;
  // 0 = unseen, 1 = on stack, 2 = done
  std::vector<uint8_t> state(d.size(), 0);
  std::vector<std::pair<NodeId, size_t>> stack;
  auto child_at = [&](const Node& n, size_t i) -> NodeId {
    if (n.kind == NodeKind::Decision) return i == 0 ? n.lo : (i == 1 ? n.hi : -2);
    if (n.is_or()) return i < n.kids.size() ? n.kids[i] : -2;
    return -2;
  };
  stack.emplace_back(from, 0);
  state[from] = 1;
  while (!stack.empty()) {
    auto& [u, i] = stack.back();
    NodeId c = child_at(d.nodes[u], i);
    if (c == -2) {
      state[u] = 2;
      out.push_back(u);
      stack.pop_back();
      continue;
    }
    ++i;
    if (c < 0 || c >= static_cast<NodeId>(d.size()))
      throw Error(ErrorCode::Parse, "node " + std::to_string(u) + " has an invalid child");
    if (state[c] == 1) throw Error(ErrorCode::Cyclic, "cycle through node " + std::to_string(c));
    if (state[c] == 0) {
      state[c] = 1;
      stack.emplace_back(c, 0);
    }
  }
  return out;
}

Diagram gc(const Diagram& d) {
  Diagram out;
  out.vars = d.vars;
  out.order = d.order;
  out.cls = d.cls;
  auto topo = topo_order(d);
  std::vector<NodeId> remap(d.size(), -1);
  for (NodeId u : topo) remap[u] = static_cast<NodeId>(out.nodes.size()), out.nodes.push_back(d.nodes[u]);
  for (auto& n : out.nodes) {
    if (n.kind == NodeKind::Decision) {
      n.lo = remap[n.lo];
      n.hi = remap[n.hi];
    }
    for (auto& c : n.kids) c = remap[c];
  }
  if (!d.layer.empty()) {
    out.layer.assign(out.nodes.size(), 0);
    for (NodeId u : topo) out.layer[remap[u]] = d.layer[u];
  }
  out.root = d.root >= 0 ? remap[d.root] : -1;
  return out;
}

std::vector<VarSet> vars_below(const Diagram& d) {
  int n = static_cast<int>(d.vars.size());
  std::vector<VarSet> vs(d.size(), VarSet(n));
  std::vector<uint8_t> done(d.size(), 0);
  auto run = [&](NodeId from) {
    for (NodeId u : topo_order(d, from)) {
      if (done[u]) continue;
      done[u] = 1;
      const Node& nd = d.nodes[u];
      if (nd.is_decision()) vs[u].insert(nd.var);
      for_each_child(nd, [&](NodeId c) { vs[u] |= vs[c]; });
    }
  };
  if (d.root >= 0) run(d.root);
  for (NodeId u = 0; u < static_cast<NodeId>(d.size()); ++u)
    if (!done[u]) run(u);
  return vs;
}

VarSet vars_below(const Diagram& d, NodeId u) {
  VarSet s(static_cast<int>(d.vars.size()));
  for (NodeId w : topo_order(d, u))
    if (d.nodes[w].is_decision()) s.insert(d.nodes[w].var);
  return s;
}

Assignment make_assignment(const Diagram& d, const std::vector<std::pair<std::string, bool>>& values) {
  Assignment a(d.vars.size(), -1);
  for (const auto& [name, v] : values) {
    VarId id = d.find_var(name);
    if (id < 0) throw Error(ErrorCode::VarUnbound, "unknown variable " + name);
    a[id] = v ? 1 : 0;
  }
  return a;
}

namespace {

int8_t value_of(const Assignment& a, VarId v) {
  if (v < 0 || v >= static_cast<VarId>(a.size()) || a[v] < 0)
    throw Error(ErrorCode::VarUnbound, "assignment does not bind variable id " + std::to_string(v));
  return a[v];
}

uint64_t sat_add(uint64_t x, uint64_t y) {
  uint64_t r = x + y;
  return r < x ? std::numeric_limits<uint64_t>::max() : r;
}

}  // namespace

bool eval(const Diagram& d, const Assignment& a) { return count_accepting_paths(d, a) > 0; }

uint64_t count_accepting_paths(const Diagram& d, const Assignment& a) {
  // Only activated nodes are visited, so unbound variables elsewhere are fine.
  if (d.root < 0) return 0;
  std::vector<uint64_t> memo(d.size(), 0);
  std::vector<uint8_t> done(d.size(), 0);
  auto rec = [&](auto&& self, NodeId u) -> uint64_t {
    if (done[u]) return memo[u];
    const Node& n = d.nodes[u];
    uint64_t r = 0;
    if (n.is_sink()) {
      r = n.value ? 1 : 0;
    } else if (n.is_decision()) {
      r = self(self, value_of(a, n.var) ? n.hi : n.lo);
    } else {
      for (NodeId c : n.kids) r = sat_add(r, self(self, c));
    }
    done[u] = 1;
    return memo[u] = r;
  };
  return rec(rec, d.root);
}

bool respects_order(const Diagram& d, const std::vector<VarId>& order, std::vector<int>* witness) {
  std::vector<int> pos(d.vars.size(), -1);
  for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  const int inf = std::numeric_limits<int>::max();
  // first[u]: smallest position among the first decision nodes below u (u included)
  std::vector<int> first(d.size(), inf);
  std::vector<NodeId> arg(d.size(), -1);
  for (NodeId u : topo_order(d)) {
    const Node& n = d.nodes[u];
    if (n.is_decision()) {
      int p = pos[n.var];
      if (p < 0) {
        if (witness) *witness = {u};
        return false;
      }
      for (NodeId c : {n.lo, n.hi}) {
        if (first[c] <= p) {
          if (witness) *witness = {u, arg[c]};
          return false;
        }
      }
      first[u] = p;
      arg[u] = u;
    } else if (n.is_or()) {
      for (NodeId c : n.kids)
        if (first[c] < first[u]) first[u] = first[c], arg[u] = arg[c];
    }
  }
  return true;
}

namespace {

// root -> target path via BFS, for witnesses
std::vector<int> path_to(const Diagram& d, NodeId target) {
  std::vector<NodeId> parent(d.size(), -2);
  std::queue<NodeId> q;
  parent[d.root] = -1;
  q.push(d.root);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    if (u == target) break;
    for_each_child(d.nodes[u], [&](NodeId c) {
      if (parent[c] == -2) parent[c] = u, q.push(c);
    });
  }
  std::vector<int> path;
  if (parent[target] == -2) return path;
  for (NodeId u = target; u != -1; u = parent[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

void check_structure(const Diagram& d, Report& r, std::vector<NodeId>& topo) {
  if (d.root < 0 || d.root >= static_cast<NodeId>(d.size())) {
    r.fail("structure", "missing root");
    return;
  }
  try {
    topo = topo_order(d);
  } catch (const Error& e) {
    r.fail(e.code() == ErrorCode::Cyclic ? "acyclic" : "structure", e.what());
    return;
  }
  for (NodeId u : topo) {
    const Node& n = d.nodes[u];
    if (n.is_or() && n.kids.empty()) r.fail("structure", "nondeterministic node without children", {u});
    if (n.is_decision() && (n.var < 0 || n.var >= static_cast<VarId>(d.vars.size())))
      r.fail("structure", "decision node with unknown variable", {u});
  }
  if (topo.size() != d.size()) {
    std::vector<uint8_t> seen(d.size(), 0);
    for (NodeId u : topo) seen[u] = 1;
    for (NodeId u = 0; u < static_cast<NodeId>(d.size()); ++u)
      if (!seen[u]) {
        r.fail("reachable", "node not reachable from root", {u});
        break;
      }
  }
}

void check_deterministic_nodes(const Diagram& d, const std::vector<NodeId>& topo, Report& r) {
  for (NodeId u : topo)
    if (d.nodes[u].is_or()) {
      r.fail("deterministic", "nondeterministic node in a deterministic class", path_to(d, u));
      return;
    }
}

void check_ordering(const Diagram& d, Report& r) {
  if (d.order.empty()) {
    r.fail("ordering", "class requires a variable order");
    return;
  }
  std::vector<int> w;
  if (!respects_order(d, d.order, &w)) {
    std::vector<int> path = path_to(d, w[0]);
    if (w.size() > 1) path.push_back(w[1]);
    r.fail("ordering", "decision labels not increasing along a path", path);
  }
}

void check_read_once(const Diagram& d, const std::vector<NodeId>& topo, Report& r) {
  auto vs = vars_below(d);
  for (NodeId u : topo) {
    const Node& n = d.nodes[u];
    if (!n.is_decision()) continue;
    for (NodeId c : {n.lo, n.hi}) {
      if (!vs[c].contains(n.var)) continue;
      // walk down to a node repeating the variable
      std::vector<int> path = path_to(d, u);
      NodeId w = c;
      while (!(d.nodes[w].is_decision() && d.nodes[w].var == n.var)) {
        path.push_back(w);
        NodeId next = -1;
        for_each_child(d.nodes[w], [&](NodeId x) {
          if (next < 0 && vs[x].contains(n.var)) next = x;
        });
        w = next;
      }
      path.push_back(w);
      r.fail("read-once", "variable " + d.vars[n.var] + " tested twice on a path", path);
      return;
    }
  }
}

void check_layers(const Diagram& d, const std::vector<NodeId>& topo, Report& r) {
  if (d.layer.size() != d.size()) {
    r.fail("layers", "k-OBDD without a layer map");
    return;
  }
  if (d.order.empty()) {
    r.fail("ordering", "class requires a variable order");
    return;
  }
  auto pos = d.positions();
  for (NodeId u : topo) {
    const Node& n = d.nodes[u];
    if (n.is_sink()) continue;
    if (d.layer[u] < 1) {
      r.fail("layers", "inner node without a layer", {u});
      return;
    }
    if (!n.is_decision()) continue;
    if (pos[n.var] < 0) {
      r.fail("ordering", "variable outside the order", {u});
      return;
    }
    for (NodeId c : {n.lo, n.hi}) {
      const Node& cn = d.nodes[c];
      if (cn.is_sink()) continue;
      if (d.layer[c] < d.layer[u]) {
        r.fail("layers", "edge into an earlier layer", {u, c});
        return;
      }
      if (d.layer[c] == d.layer[u] && cn.is_decision() && pos[cn.var] <= pos[n.var]) {
        r.fail("ordering", "layer does not respect the order", {u, c});
        return;
      }
    }
  }
}

}  // namespace

Report check_class(const Diagram& d) { return check_class_as(d, d.cls); }

Report check_class_as(const Diagram& d, DiagramClass cls) {
  Report r;
  std::vector<NodeId> topo;
  check_structure(d, r, topo);
  if (!r.ok() && topo.empty()) return r;
  switch (cls) {
    case DiagramClass::Bdd: break;
    case DiagramClass::Fbdd:
      check_deterministic_nodes(d, topo, r);
      check_read_once(d, topo, r);
      break;
    case DiagramClass::Obdd:
      check_deterministic_nodes(d, topo, r);
      check_ordering(d, r);
      break;
    case DiagramClass::VeeObdd: check_ordering(d, r); break;
    case DiagramClass::Vee1Obdd: {
      check_ordering(d, r);
      if (static_cast<int>(d.vars.size()) > exhaustive_limit()) {
        r.unchecked.push_back("unambiguous");
        break;
      }
      auto amb = check_unambiguous(d);
      if (!amb.unambiguous) {
        TruthTable probe(d.vars);
        r.fail("unambiguous", "two accepting paths for " + probe.row_string(*amb.witness),
               {static_cast<int>(*amb.witness)});
      }
      break;
    }
    case DiagramClass::KObdd:
      check_deterministic_nodes(d, topo, r);
      check_layers(d, topo, r);
      break;
  }
  return r;
}

Report check_simple(const Diagram& d) {
  Report r;
  auto topo = topo_order(d);
  auto cst = constant_nodes(d);
  for (NodeId u : topo) {
    const Node& n = d.nodes[u];
    if (n.is_sink()) continue;
    if (cst[u] != 0) r.fail("constant-node", cst[u] > 0 ? "inner node computes top" : "inner node computes bottom", {u});
    if (!n.is_or()) continue;
    if (n.kids.size() < 2) r.fail("or-fanout", "or-node with fewer than two children", {u});
    for (NodeId c : n.kids) {
      if (d.nodes[c].is_or()) r.fail("or-or-edge", "edge between or-nodes", {u, c});
      if (d.nodes[c].is_sink()) r.fail("or-sink-edge", "or-node connected to a sink", {u, c});
    }
  }
  return r;
}

}  // namespace ddk
