#include <algorithm>
#include <set>

#include "ddk/circuit.hpp"
#include "ddk/oracle.hpp"

namespace ddk {

int Vtree::add_leaf(std::string var) {
  VNode n;
  n.var = std::move(var);
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size() - 1);
}

int Vtree::add_inner(int left, int right) {
  VNode n;
  n.left = left;
  n.right = right;
  nodes.push_back(std::move(n));
  return static_cast<int>(nodes.size() - 1);
}

VtreeIndex::VtreeIndex(const Vtree& t) : t_(&t) {
  size_t n = t.nodes.size();
  parent_.assign(n, -1);
  depth_.assign(n, 0);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  if (t.root < 0) return;
  int clock = 0;
  // iterative preorder; tout assigned after both subtrees
  std::vector<std::pair<int, int>> stack{{t.root, 0}};
  tin_[t.root] = clock++;
  while (!stack.empty()) {
    auto& [v, step] = stack.back();
    const auto& nd = t.nodes[v];
    if (nd.is_leaf() || step == 2) {
      if (nd.is_leaf()) {
        leaf_index_.emplace(nd.var, v);
        leaves_.push_back(nd.var);
      }
      tout_[v] = clock++;
      stack.pop_back();
      continue;
    }
    int c = step == 0 ? nd.left : nd.right;
    ++step;
    parent_[c] = v;
    depth_[c] = depth_[v] + 1;
    tin_[c] = clock++;
    stack.emplace_back(c, 0);
  }
}

int VtreeIndex::lca(int a, int b) const {
  if (a < 0) return b;
  if (b < 0) return a;
  while (depth_[a] > depth_[b]) a = parent_[a];
  while (depth_[b] > depth_[a]) b = parent_[b];
  while (a != b) a = parent_[a], b = parent_[b];
  return a;
}

int VtreeIndex::leaf_of(const std::string& var) const {
  auto it = leaf_index_.find(var);
  return it == leaf_index_.end() ? -1 : it->second;
}

bool VtreeIndex::is_linear() const {
  for (const auto& nd : t_->nodes)
    if (!nd.is_leaf() && !t_->nodes[nd.left].is_leaf() && !t_->nodes[nd.right].is_leaf()) return false;
  return true;
}

bool VtreeIndex::is_right_linear() const {
  for (const auto& nd : t_->nodes)
    if (!nd.is_leaf() && !t_->nodes[nd.left].is_leaf()) return false;
  return true;
}

Report check_vtree(const Vtree& t) {
  Report r;
  int n = static_cast<int>(t.nodes.size());
  if (t.root < 0 || t.root >= n) {
    r.fail("structure", "missing root");
    return r;
  }
  std::vector<int> parents(n, 0);
  for (int v = 0; v < n; ++v) {
    const auto& nd = t.nodes[v];
    if (nd.is_leaf()) {
      if (nd.right >= 0) r.fail("full", "node " + std::to_string(v) + " has a single child", {v});
      if (nd.var.empty()) r.fail("structure", "leaf " + std::to_string(v) + " without a variable", {v});
      continue;
    }
    if (nd.right < 0 || nd.left >= n || nd.right >= n) {
      r.fail("full", "inner node " + std::to_string(v) + " lacks two valid children", {v});
      continue;
    }
    if (nd.left == nd.right) r.fail("structure", "inner node " + std::to_string(v) + " repeats a child", {v});
    ++parents[nd.left];
    ++parents[nd.right];
  }
  if (!r.ok()) return r;
  if (parents[t.root] != 0) r.fail("structure", "root has a parent", {t.root});
  for (int v = 0; v < n; ++v)
    if (v != t.root && parents[v] != 1)
      r.fail("structure", "node " + std::to_string(v) + " has " + std::to_string(parents[v]) + " parents", {v});
  if (!r.ok()) return r;
  // with unique parents, reachability from the root excludes cycles
  std::vector<uint8_t> seen(n, 0);
  std::vector<int> stack{t.root};
  seen[t.root] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (t.nodes[v].is_leaf()) continue;
    for (int c : {t.nodes[v].left, t.nodes[v].right})
      if (!seen[c]) seen[c] = 1, stack.push_back(c);
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) r.fail("structure", "node " + std::to_string(v) + " unreachable from the root", {v});
  std::set<std::string> names;
  for (int v = 0; v < n; ++v)
    if (t.nodes[v].is_leaf() && !names.insert(t.nodes[v].var).second)
      r.fail("bijection", "variable " + t.nodes[v].var + " labels two leaves", {v});
  return r;
}

Vtree right_linear_vtree(const std::vector<std::string>& names) {
  if (names.empty()) throw Error(ErrorCode::Param, "vtree needs at least one variable");
  Vtree t;
  int cur = t.add_leaf(names.back());
  for (size_t i = names.size() - 1; i-- > 0;) {
    int leaf = t.add_leaf(names[i]);
    cur = t.add_inner(leaf, cur);
  }
  t.root = cur;
  return t;
}

namespace {

// Per gate, lca of the leaves of its variables (-1 when it mentions none).
std::vector<int> gate_lcas(const Circuit& c, const VtreeIndex& ix, const std::vector<GateId>& topo, Report& r) {
  std::vector<int> leaf(c.vars.size(), -1);
  for (size_t v = 0; v < c.vars.size(); ++v) leaf[v] = ix.leaf_of(c.vars[v]);
  std::vector<int> m(c.size(), -1);
  for (GateId g : topo) {
    const Gate& gt = c.gates[g];
    if (gt.kind == GateKind::Lit) {
      m[g] = leaf[gt.var];
      if (m[g] < 0) r.fail("universe", "variable " + c.vars[gt.var] + " has no vtree leaf", {g});
      continue;
    }
    int a = -1;
    for (GateId k : gt.kids) a = ix.lca(a, m[k]);
    m[g] = a;
  }
  return m;
}

}  // namespace

RespectResult check_respects_vtree(const Circuit& c, const Vtree& t) {
  RespectResult out;
  out.dnode.assign(c.size(), -1);
  out.swapped.assign(c.size(), 0);
  out.report.merge(check_vtree(t));
  if (!out.report.ok()) return out;
  VtreeIndex ix(t);
  auto topo = topo_order(c);
  auto m = gate_lcas(c, ix, topo, out.report);
  if (!out.report.ok()) return out;
  auto under = [&](int anc, int v) { return v >= 0 && ix.is_ancestor(anc, v); };
  for (GateId g : topo) {
    const Gate& gt = c.gates[g];
    if (gt.kind != GateKind::And) continue;
    if (gt.kids.size() != 2) {
      out.report.fail("fanin", "and-gate " + std::to_string(g) + " is not binary", {g});
      continue;
    }
    int a = m[gt.kids[0]], b = m[gt.kids[1]];
    int v;
    if (a < 0 && b < 0) {
      v = t.nodes[t.root].is_leaf() ? -1 : t.root;
    } else if (a < 0 || b < 0) {
      v = ix.parent(a < 0 ? b : a);
    } else {
      v = ix.lca(a, b);
      if (v == a || v == b) v = -1;
    }
    if (v < 0) {
      out.report.fail("respects", "and-gate " + std::to_string(g) + " has no decomposition node", {g});
      continue;
    }
    out.dnode[g] = v;
    int lft = t.nodes[v].left;
    out.swapped[g] = under(lft, b) || (a >= 0 && !under(lft, a));
  }
  return out;
}

SddResult check_sdd(const Circuit& c, const Vtree& t) {
  SddResult out;
  out.vnode.assign(c.size(), -1);
  out.prime_first.assign(c.size(), 1);
  out.report.merge(check_vtree(t));
  if (!out.report.ok()) return out;
  VtreeIndex ix(t);
  auto topo = topo_order(c);
  std::vector<int> leaf(c.vars.size(), -1);
  for (size_t v = 0; v < c.vars.size(); ++v) leaf[v] = ix.leaf_of(c.vars[v]);
  auto vs = gate_vars(c);
  const int limit = exhaustive_limit();

  if (c.root >= 0 && c.gates[c.root].kind == GateKind::And)
    out.report.fail("shape", "root is an and-gate", {c.root});

  for (GateId g : topo) {
    const Gate& gt = c.gates[g];
    if (gt.kind == GateKind::Const) continue;
    if (gt.kind == GateKind::Lit) {
      out.vnode[g] = leaf[gt.var];
      if (leaf[gt.var] < 0) out.report.fail("universe", "variable " + c.vars[gt.var] + " has no vtree leaf", {g});
      continue;
    }
    if (gt.kind == GateKind::And) continue;  // judged inside its or-gate

    bool bad = false;
    for (GateId e : gt.kids) {
      const Gate& el = c.gates[e];
      if (el.kind != GateKind::And || el.kids.size() != 2) {
        out.report.fail("shape", "or-gate " + std::to_string(g) + " has input " + std::to_string(e) +
                                     " that is not a binary and-gate", {g, e});
        bad = true;
        continue;
      }
      for (GateId k : el.kids)
        if (c.gates[k].kind == GateKind::And) {
          out.report.fail("shape", "element " + std::to_string(e) + " has an and-gate input", {e, k});
          bad = true;
        }
    }
    if (bad || gt.kids.empty()) {
      if (gt.kids.empty()) out.report.fail("shape", "or-gate " + std::to_string(g) + " has no inputs", {g});
      continue;
    }

    // locate the vtree node v this gate decomposes over
    int v = -1;
    for (GateId e : gt.kids) {
      int ma = out.vnode[c.gates[e].kids[0]], mb = out.vnode[c.gates[e].kids[1]];
      if (ma < 0 || mb < 0) continue;
      int ve = ix.lca(ma, mb);
      if (ve == ma || ve == mb) {
        out.report.fail("respects", "element " + std::to_string(e) + " does not split at a vtree node", {g, e});
        bad = true;
      } else if (v >= 0 && v != ve) {
        out.report.fail("respects", "elements of or-gate " + std::to_string(g) + " split at different vtree nodes",
                        {g, e});
        bad = true;
      } else {
        v = ve;
      }
    }
    if (bad) continue;

    // Candidate placements. A fixed split leaves one; otherwise the lca of the
    // non-constant inputs and the nearest ancestors that put them on one side.
    std::vector<int> cands;
    if (v >= 0) {
      cands.push_back(v);
    } else {
      std::vector<int> ws;
      for (GateId e : gt.kids)
        for (GateId k : c.gates[e].kids)
          if (out.vnode[k] >= 0) ws.push_back(out.vnode[k]);
      if (ws.empty()) {
        cands.push_back(-1);
      } else {
        int l = -1;
        for (int w : ws) l = ix.lca(l, w);
        if (std::find(ws.begin(), ws.end(), l) == ws.end()) cands.push_back(l);
        int a = l;
        while (ix.parent(a) >= 0 && t.nodes[ix.parent(a)].left != a) a = ix.parent(a);
        if (ix.parent(a) >= 0) cands.push_back(ix.parent(a));
        if (ix.parent(l) >= 0 && std::find(cands.begin(), cands.end(), ix.parent(l)) == cands.end())
          cands.push_back(ix.parent(l));
      }
    }
    if (cands.empty()) {
      out.report.fail("respects", "or-gate " + std::to_string(g) + " has no vtree node", {g});
      continue;
    }

    Report first_fail;
    bool placed = false;
    for (size_t ci = 0; ci < cands.size() && !placed; ++ci) {
      int cv = cands[ci];
      Report rep;
      std::vector<GateId> primes;
      std::vector<uint8_t> orient;
      for (GateId e : gt.kids) {
        GateId a = c.gates[e].kids[0], b = c.gates[e].kids[1];
        bool first = true;
        if (cv >= 0) {
          int lft = t.nodes[cv].left, rgt = t.nodes[cv].right;
          auto side = [&](int m) {
            return m < 0 ? 0 : (ix.is_ancestor(lft, m) ? 1 : (ix.is_ancestor(rgt, m) ? 2 : -1));
          };
          int sa = side(out.vnode[a]), sb = side(out.vnode[b]);
          if (sa < 0 || sb < 0 || (sa && sa == sb)) {
            rep.fail("respects", "element " + std::to_string(e) + " does not respect vtree node " + std::to_string(cv),
                     {g, e});
            break;
          }
          first = sa == 1 || sb == 2 || (sa == 0 && sb == 0);
        }
        orient.push_back(first);
        primes.push_back(first ? a : b);
      }
      if (rep.ok()) {
        VarSet pv(static_cast<int>(c.vars.size()));
        for (GateId p : primes) pv |= vs[p];
        if (pv.count() > limit) {
          rep.unchecked.push_back("partition at gate " + std::to_string(g));
        } else {
          std::vector<std::string> names;
          for (int x : pv.elements()) names.push_back(c.vars[x]);
          auto pr = partition_check(gate_tables(c, primes, names));
          if (!pr.ok) {
            std::vector<int> wit{g};
            for (int mbr : pr.members) wit.push_back(primes[mbr]);
            rep.fail(pr.clause, "primes of or-gate " + std::to_string(g) + " violate " + pr.clause, std::move(wit));
          }
        }
      }
      if (rep.ok()) {
        placed = true;
        out.vnode[g] = cv;
        for (size_t i = 0; i < gt.kids.size(); ++i) out.prime_first[gt.kids[i]] = orient[i];
        out.report.merge(rep);
      } else if (ci == 0) {
        first_fail = rep;
      }
    }
    if (!placed) out.report.merge(first_fail);
  }
  return out;
}

}  // namespace ddk
