#include "ddk/obdd2sdd.hpp"

#include <algorithm>

#include "ddk/oracle.hpp"

namespace ddk::obdd2sdd {

std::vector<int> min_positions(const Diagram& f) {
  auto pos = f.positions();
  int n = static_cast<int>(f.order.size());
  std::vector<int> mp(f.size(), n);
  for (NodeId u : topo_order(f)) {
    const Node& nd = f.nodes[u];
    if (nd.is_decision()) mp[u] = pos[nd.var];
    for_each_child(nd, [&](NodeId c) { mp[u] = std::min(mp[u], mp[c]); });
  }
  return mp;
}

namespace {

// Nodes reachable from the root under a partial assignment by position.
// With `stop_at` >= 0, nodes whose variables lie inside Y are not expanded.
std::vector<uint8_t> reach_under(const Diagram& f, const std::vector<int>& pos, const std::vector<int8_t>& fixed,
                                 const std::vector<int>* mp, int stop_at) {
  std::vector<uint8_t> reach(f.size(), 0);
  auto topo = topo_order(f);
  reach[f.root] = 1;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    NodeId u = *it;
    if (!reach[u]) continue;
    if (mp && (*mp)[u] >= stop_at) continue;
    const Node& nd = f.nodes[u];
    if (nd.is_decision()) {
      int p = pos[nd.var];
      int8_t b = p < static_cast<int>(fixed.size()) ? fixed[p] : -1;
      if (b != 1) reach[nd.lo] = 1;
      if (b != 0) reach[nd.hi] = 1;
    } else {
      for (NodeId c : nd.kids) reach[c] = 1;
    }
  }
  return reach;
}

void require_ordered(const Diagram& f, const char* what) {
  if (f.order.empty() || !respects_order(f, f.order))
    throw Error(ErrorCode::OrderMismatch, std::string(what) + " is not ordered");
}

}  // namespace

BetaChoice beta_pick(const Diagram& f, NodeId u) {
  require_ordered(f, "diagram");
  auto mp = min_positions(f);
  auto pos = f.positions();
  BetaChoice b;
  b.node = u;
  b.start = std::min(mp[u], static_cast<int>(f.order.size()));
  b.values.assign(b.start, -1);
  // satisfiable below u is assumed (simple diagrams); only the prefix path matters
  if (!reach_under(f, pos, b.values, nullptr, -1)[u])
    throw Error(ErrorCode::NoBeta, "node " + std::to_string(u) + " is unreachable");
  for (int p = 0; p < b.start; ++p) {
    b.values[p] = 0;
    if (!reach_under(f, pos, b.values, nullptr, -1)[u]) b.values[p] = 1;
  }
  if (!reach_under(f, pos, b.values, nullptr, -1)[u])
    throw Error(ErrorCode::NoBeta, "no assignment reaches node " + std::to_string(u));
  return b;
}

std::vector<NodeId> maximal_nodes(const Diagram& f, int start) {
  auto mp = min_positions(f);
  // a node below another inner node inside Y lies in that node's subgraph
  std::vector<uint8_t> covered(f.size(), 0);
  std::vector<NodeId> out;
  for (NodeId u : topo_order(f)) {
    if (f.nodes[u].is_sink() || mp[u] < start) continue;
    for_each_child(f.nodes[u], [&](NodeId c) { covered[c] = 1; });
  }
  for (NodeId u : topo_order(f))
    if (!f.nodes[u].is_sink() && mp[u] >= start && !covered[u]) out.push_back(u);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> r_plus(const Diagram& f, const BetaChoice& beta) {
  require_ordered(f, "diagram");
  auto mp = min_positions(f);
  auto reach = reach_under(f, f.positions(), beta.values, &mp, beta.start);
  std::vector<NodeId> out;
  for (NodeId u = 0; u < static_cast<NodeId>(f.size()); ++u) {
    if (!reach[u] || f.nodes[u].is_sink() || mp[u] < beta.start) continue;
    if (f.nodes[u].is_or()) {
      for (NodeId c : f.nodes[u].kids)
        if (!f.nodes[c].is_sink()) out.push_back(c);
    } else {
      out.push_back(u);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string help_var(const std::vector<std::string>& names, size_t i) {
  if (i + 1 == names.size()) return "h[" + names[i] + "]";
  return "h[" + names[i] + ".." + names.back() + "]";
}

Vtree build_help_vtree(const std::vector<std::string>& names) {
  if (names.empty()) throw Error(ErrorCode::Param, "help vtree needs at least one variable");
  Vtree t;
  size_t n = names.size();
  // bottom-up: v_n' is the leaf x_n
  int vi = t.add_inner(t.add_leaf(names[n - 1]), t.add_leaf(help_var(names, n - 1)));
  for (size_t i = n - 1; i-- > 0;) {
    int vpi = t.add_inner(t.add_leaf(names[i]), vi);
    vi = t.add_inner(vpi, t.add_leaf(help_var(names, i)));
  }
  t.root = vi;
  return t;
}

namespace {

Result build(const Diagram& f, const Diagram* fbar) {
  require_ordered(f, "f");
  std::vector<std::string> names;
  for (VarId v : f.order) names.push_back(f.vars[v]);
  const Diagram* ds[2] = {&f, fbar};
  int nd = fbar ? 2 : 1;

  Result res;
  res.vtree = build_help_vtree(names);
  Circuit& c = res.circuit;
  c.vars = names;
  std::vector<std::vector<VarId>> cvar(nd);
  for (int k = 0; k < nd; ++k) {
    cvar[k].assign(ds[k]->vars.size(), -1);
    for (size_t i = 0; i < ds[k]->order.size(); ++i) cvar[k][ds[k]->order[i]] = c.find_var(ds[k]->vars[ds[k]->order[i]]);
    res.n_input += ds[k]->size();
  }

  // (u, empty) gates first, filled in a second pass
  std::vector<std::vector<GateId>> top(nd);
  for (int k = 0; k < nd; ++k) {
    const Diagram& d = *ds[k];
    top[k].assign(d.size(), -1);
    for (NodeId u = 0; u < static_cast<NodeId>(d.size()); ++u) {
      const Node& n = d.nodes[u];
      if (n.is_sink()) {
        top[k][u] = c.add_const(n.value);
      } else if (n.is_decision() && d.nodes[n.lo].is_sink() && d.nodes[n.hi].is_sink()) {
        bool lo = d.nodes[n.lo].value, hi = d.nodes[n.hi].value;
        top[k][u] = lo == hi ? c.add_const(lo) : c.add_lit(cvar[k][n.var], hi);
      } else {
        top[k][u] = c.add_or({});
      }
    }
  }

  for (int k = 0; k < nd; ++k) {
    const Diagram& d = *ds[k];
    for (NodeId u = 0; u < static_cast<NodeId>(d.size()); ++u) {
      const Node& n = d.nodes[u];
      if (n.is_sink() || c.gates[top[k][u]].kind != GateKind::Or) continue;
      std::vector<GateId> elems;
      if (n.is_decision()) {
        GateId nx = c.add_lit(cvar[k][n.var], false);
        GateId px = c.add_lit(cvar[k][n.var], true);
        elems.push_back(c.add_and(nx, top[k][n.lo]));
        elems.push_back(c.add_and(px, top[k][n.hi]));
      } else if (!fbar) {
        GateId one = c.add_const(true);
        for (NodeId v : n.kids) elems.push_back(c.add_and(top[k][v], one));
      } else {
        OrInfo info;
        info.in_fbar = k == 1;
        info.node = u;
        info.beta = beta_pick(d, u);
        info.rplus = r_plus(d, info.beta);
        info.rplus_bar = r_plus(*ds[1 - k], info.beta);
        GateId one = c.add_const(true), zero = c.add_const(false);
        for (NodeId v : info.rplus) {
          bool child = std::find(n.kids.begin(), n.kids.end(), v) != n.kids.end();
          elems.push_back(c.add_and(top[k][v], child ? one : zero));
        }
        for (NodeId v : info.rplus_bar) elems.push_back(c.add_and(top[1 - k][v], zero));
        res.ors.push_back(std::move(info));
      }
      c.gates[top[k][u]].kids = std::move(elems);
    }
  }

  c.root = top[0][f.root];
  auto topo = topo_order(c);
  std::vector<GateId> remap(c.size(), -1);
  for (size_t i = 0; i < topo.size(); ++i) remap[topo[i]] = static_cast<GateId>(i);
  c = gc(c);
  res.gate_f.assign(f.size(), -1);
  for (NodeId u = 0; u < static_cast<NodeId>(f.size()); ++u) res.gate_f[u] = remap[top[0][u]];
  if (fbar) {
    res.gate_fbar.assign(fbar->size(), -1);
    for (NodeId u = 0; u < static_cast<NodeId>(fbar->size()); ++u) res.gate_fbar[u] = remap[top[1][u]];
  }
  return res;
}

void require_simple(const Diagram& d, const char* what) {
  auto r = check_simple(d);
  if (!r.ok()) throw Error(ErrorCode::NotSimple, std::string(what) + ": " + r.summary());
}

}  // namespace

Result simulate(const Diagram& f, const Diagram& fbar, const Options& opt) {
  require_ordered(f, "f");
  require_ordered(fbar, "fbar");
  std::vector<std::string> nf, nb;
  for (VarId v : f.order) nf.push_back(f.vars[v]);
  for (VarId v : fbar.order) nb.push_back(fbar.vars[v]);
  if (nf != nb) throw Error(ErrorCode::OrderMismatch, "f and fbar use different orders");
  require_simple(f, "f");
  require_simple(fbar, "fbar");
  bool checked = false;
  if (opt.check_complement && static_cast<int>(nf.size()) <= exhaustive_limit()) {
    auto eq = equiv(table_of(f, nf), table_of(fbar, nf), true);
    if (!eq.equal)
      throw Error(ErrorCode::NotComplement, "f and fbar agree on row " + std::to_string(*eq.witness));
    checked = true;
  }
  Result r = build(f, &fbar);
  r.complement_checked = checked;
  return r;
}

Result uobdd_to_structured_ddnnf(const Diagram& f) {
  require_ordered(f, "f");
  require_simple(f, "f");
  return build(f, nullptr);
}

}  // namespace ddk::obdd2sdd
