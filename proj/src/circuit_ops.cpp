#include <map>

#include "ddk/builder.hpp"
#include "ddk/circuit.hpp"

namespace ddk {

CircuitWithVtree obdd_to_sdd_rightlinear(const Diagram& d) {
  if (d.order.empty() || !respects_order(d, d.order))
    throw Error(ErrorCode::OrderMismatch, "input is not ordered");
  if (d.has_nondet()) throw Error(ErrorCode::NotDeterministic, "input has nondeterministic nodes");
  CircuitWithVtree out;
  std::vector<std::string> names;
  for (VarId v : d.order) names.push_back(d.vars[v]);
  out.vtree = right_linear_vtree(names);
  Circuit& c = out.circuit;
  c.vars = names;
  std::vector<GateId> cvar(d.vars.size(), -1);
  for (size_t i = 0; i < d.order.size(); ++i) cvar[d.order[i]] = static_cast<VarId>(i);

  GateId consts[2] = {-1, -1};
  std::vector<GateId> lits(2 * names.size(), -1);
  auto cst = [&](bool v) {
    if (consts[v] < 0) consts[v] = c.add_const(v);
    return consts[v];
  };
  auto lit = [&](VarId v, bool pos) {
    GateId& slot = lits[2 * v + pos];
    if (slot < 0) slot = c.add_lit(v, pos);
    return slot;
  };
  std::vector<GateId> map(d.size(), -1);
  for (NodeId u : topo_order(d)) {
    const Node& n = d.nodes[u];
    if (n.is_sink()) {
      map[u] = cst(n.value);
      continue;
    }
    VarId x = cvar[n.var];
    const Node& lo = d.nodes[n.lo];
    const Node& hi = d.nodes[n.hi];
    if (lo.is_sink() && hi.is_sink()) {
      map[u] = lo.value == hi.value ? cst(lo.value) : lit(x, hi.value);
      continue;
    }
    GateId e0 = c.add_and(lit(x, false), map[n.lo]);
    GateId e1 = c.add_and(lit(x, true), map[n.hi]);
    map[u] = c.add_or({e0, e1});
  }
  c.root = map[d.root];
  c = gc(c);
  return out;
}

Diagram sdd_linear_to_uobdd(const Circuit& c, const Vtree& t) {
  VtreeIndex ix(t);
  if (!check_vtree(t).ok()) throw Error(ErrorCode::NotSdd, "malformed vtree");
  if (!ix.is_linear()) throw Error(ErrorCode::NotLinear, "vtree is not linear");
  auto sdd = check_sdd(c, t);
  if (!sdd.report.ok()) throw Error(ErrorCode::NotSdd, sdd.report.summary());

  std::vector<std::string> vars;
  for (const auto& name : ix.leaf_order())
    if (c.find_var(name) >= 0) vars.push_back(name);
  std::vector<VarId> order(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) order[i] = static_cast<VarId>(i);
  std::vector<VarId> dvar(c.vars.size(), -1);
  for (size_t i = 0; i < vars.size(); ++i) dvar[c.find_var(vars[i])] = static_cast<VarId>(i);

  DiagramBuilder b(vars, order);
  std::map<std::pair<GateId, NodeId>, NodeId> memo;
  auto build = [&](auto&& self, GateId g, NodeId cont) -> NodeId {
    auto key = std::make_pair(g, cont);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Gate& gt = c.gates[g];
    NodeId r = 0;
    switch (gt.kind) {
      case GateKind::Const: r = gt.value ? cont : 0; break;
      case GateKind::Lit: {
        VarId x = dvar[gt.var];
        r = gt.value ? b.decision(x, 0, cont) : b.decision(x, cont, 0);
        break;
      }
      case GateKind::Or: {
        std::vector<NodeId> kids;
        for (GateId e : gt.kids) {
          const Gate& el = c.gates[e];
          GateId p = sdd.prime_first[e] ? el.kids[0] : el.kids[1];
          GateId s = sdd.prime_first[e] ? el.kids[1] : el.kids[0];
          kids.push_back(self(self, p, self(self, s, cont)));
        }
        r = b.nondet(std::move(kids));
        break;
      }
      case GateKind::And: throw Error(ErrorCode::NotSdd, "and-gate outside an element");
    }
    memo.emplace(key, r);
    return r;
  };
  NodeId root = build(build, c.root, 1);
  return b.finish(root, DiagramClass::Vee1Obdd);
}

}  // namespace ddk
