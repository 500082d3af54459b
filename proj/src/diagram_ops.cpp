#include <algorithm>

#include "ddk/builder.hpp"
#include "ddk/diagram.hpp"
#include "ddk/oracle.hpp"

namespace ddk {

namespace {

using u128 = unsigned __int128;

// top detection by 0-sink unreachability; bottom by 1-sink unreachability
std::vector<int> constants_by_reachability(const Diagram& d, const std::vector<NodeId>& topo) {
  std::vector<uint8_t> r0(d.size(), 0), r1(d.size(), 0);
  for (NodeId u : topo) {
    const Node& n = d.nodes[u];
    if (n.is_sink()) {
      (n.value ? r1 : r0)[u] = 1;
      continue;
    }
    for_each_child(n, [&](NodeId c) {
      r0[u] |= r0[c];
      r1[u] |= r1[c];
    });
  }
  std::vector<int> out(d.size(), 0);
  for (NodeId u : topo) out[u] = !r1[u] ? -1 : (!r0[u] ? 1 : 0);
  return out;
}

bool ordered_read_once(const Diagram& d) { return !d.order.empty() && respects_order(d, d.order); }

}  // namespace

std::vector<int> constant_nodes(const Diagram& d) {
  auto topo = topo_order(d);
  auto by_reach = constants_by_reachability(d, topo);
  int n = static_cast<int>(d.order.size());
  if (!ordered_read_once(d) || n > 120) return by_reach;
  // model counting relative to each node's level
  auto pos = d.positions();
  std::vector<int> lev(d.size(), n);
  std::vector<u128> cnt(d.size(), 0);
  bool overflow = false;
  for (NodeId u : topo) {
    const Node& nd = d.nodes[u];
    if (nd.is_sink()) {
      lev[u] = n;
      cnt[u] = nd.value ? 1 : 0;
    } else if (nd.is_decision()) {
      int p = pos[nd.var];
      lev[u] = p;
      cnt[u] = (cnt[nd.lo] << (lev[nd.lo] - p - 1)) + (cnt[nd.hi] << (lev[nd.hi] - p - 1));
    } else {
      int l = n;
      for (NodeId c : nd.kids) l = std::min(l, lev[c]);
      lev[u] = l;
      u128 s = 0;
      for (NodeId c : nd.kids) s += cnt[c] << (lev[c] - l);
      cnt[u] = s;
    }
    if (cnt[u] > (u128{1} << (n - lev[u]))) overflow = true;  // more paths than models
  }
  if (overflow) return by_reach;
  std::vector<int> out(d.size(), 0);
  for (NodeId u : topo) {
    u128 full = u128{1} << (n - lev[u]);
    out[u] = cnt[u] == 0 ? -1 : (cnt[u] == full ? 1 : 0);
  }
  return out;
}

Diagram make_simple(const Diagram& d) {
  if (d.order.empty() || !respects_order(d, d.order))
    throw Error(ErrorCode::OrderMismatch, "make_simple needs an ordered diagram");
  if (static_cast<int>(d.vars.size()) <= exhaustive_limit()) {
    auto amb = check_unambiguous(d);
    if (!amb.unambiguous) throw Error(ErrorCode::NotUnambiguous, "input has two accepting paths for some input");
  }
  auto cst = constant_nodes(d);
  Diagram out;
  out.vars = d.vars;
  out.order = d.order;
  out.cls = DiagramClass::Vee1Obdd;
  std::vector<NodeId> map(d.size(), -1);
  NodeId fresh[2] = {-1, -1};
  auto const_sink = [&](bool v) {
    if (fresh[v] < 0) fresh[v] = out.add_sink(v);
    return fresh[v];
  };
  auto topo = topo_order(d);
  // Non-constant children of an or-node with or-children flattened.
  auto flatten = [&](NodeId u) {
    std::vector<NodeId> acc;
    std::vector<NodeId> stack(d.nodes[u].kids.rbegin(), d.nodes[u].kids.rend());
    while (!stack.empty()) {
      NodeId c = stack.back();
      stack.pop_back();
      if (cst[c] < 0) continue;
      if (d.nodes[c].is_or()) {
        for (auto it = d.nodes[c].kids.rbegin(); it != d.nodes[c].kids.rend(); ++it) stack.push_back(*it);
        continue;
      }
      NodeId m = map[c];
      if (std::find(acc.begin(), acc.end(), m) == acc.end()) acc.push_back(m);
    }
    return acc;
  };
  for (NodeId u : topo) {
    const Node& n = d.nodes[u];
    if (n.is_sink()) {
      map[u] = out.add_sink(n.value);
      continue;
    }
    if (cst[u] != 0) {
      map[u] = const_sink(cst[u] > 0);
      continue;
    }
    if (n.is_decision()) {
      map[u] = out.add_decision(n.var, map[n.lo], map[n.hi]);
      continue;
    }
    auto kids = flatten(u);
    map[u] = kids.size() == 1 ? kids[0] : out.add_nondet(std::move(kids));
  }
  out.root = map[d.root];
  return gc(out);
}

namespace {

void require_deterministic(const Diagram& d, const char* what) {
  if (d.has_nondet()) throw Error(ErrorCode::NotDeterministic, std::string(what) + " needs a deterministic diagram");
}

Diagram apply_binary(BoolOp op, const Diagram& d1, const Diagram& d2, const std::vector<VarId>& order) {
  Diagram probe;
  probe.vars = d1.vars;
  std::vector<VarId> ord2;
  for (VarId v : order) {
    if (v < 0 || v >= static_cast<VarId>(d1.vars.size())) throw Error(ErrorCode::OrderMismatch, "bad order");
    VarId w = d2.find_var(d1.vars[v]);
    if (w >= 0) ord2.push_back(w);
  }
  if (!respects_order(d1, order)) throw Error(ErrorCode::OrderMismatch, "first operand violates the order");
  if (!respects_order(d2, ord2)) throw Error(ErrorCode::OrderMismatch, "second operand violates the order");
  require_deterministic(d1, "apply");
  require_deterministic(d2, "apply");
  DiagramBuilder b(d1.vars, order);
  NodeId r = b.apply(op, b.import(d1, d1.root), b.import(d2, d2.root));
  return b.finish(r, DiagramClass::Obdd);
}

}  // namespace

Diagram apply_and(const Diagram& d1, const Diagram& d2, const std::vector<VarId>& order) {
  return apply_binary(BoolOp::And, d1, d2, order);
}

Diagram apply_or(const Diagram& d1, const Diagram& d2, const std::vector<VarId>& order) {
  return apply_binary(BoolOp::Or, d1, d2, order);
}

Diagram conjoin_literal(const Diagram& d, VarId var, bool positive) {
  if (var < 0 || var >= static_cast<VarId>(d.vars.size()))
    throw Error(ErrorCode::VarUnbound, "literal variable outside the universe");
  if (d.order.empty() || !respects_order(d, d.order))
    throw Error(ErrorCode::OrderMismatch, "conjoin_literal needs an ordered diagram");
  require_deterministic(d, "conjoin_literal");
  DiagramBuilder b(d.vars, d.order);
  NodeId r = b.apply(BoolOp::And, b.import(d, d.root), b.literal(var, positive));
  return b.finish(r, d.cls);
}

Diagram negate(const Diagram& d) {
  require_deterministic(d, "negate");
  Diagram out = d;
  for (auto& n : out.nodes)
    if (n.is_sink()) n.value = !n.value;
  return out;
}

bool satisfiable(const Diagram& d) {
  auto topo = topo_order(d);
  bool read_once = true;
  {
    auto vs = vars_below(d);
    for (NodeId u : topo) {
      const Node& n = d.nodes[u];
      if (n.is_decision() && (vs[n.lo].contains(n.var) || vs[n.hi].contains(n.var))) {
        read_once = false;
        break;
      }
    }
  }
  if (read_once) {
    // every path is consistent, so plain reachability decides
    auto c = constants_by_reachability(d, topo);
    return c[d.root] >= 0;
  }
  if (static_cast<int>(d.vars.size()) > exhaustive_limit())
    throw Error(ErrorCode::TooLarge, "satisfiability of a repeated-test diagram beyond the exhaustive limit");
  return !table_of(d).is_zero();
}

Diagram reduce(const Diagram& d) {
  if (d.order.empty()) throw Error(ErrorCode::OrderMismatch, "reduce needs an ordered diagram");
  DiagramBuilder b(d.vars, d.order);
  return b.finish(b.import(d, d.root), d.cls);
}

Diagram determinize(const Diagram& d) {
  if (d.order.empty()) throw Error(ErrorCode::OrderMismatch, "determinize needs an ordered diagram");
  DiagramBuilder b(d.vars, d.order);
  return b.finish(b.determinize(b.import(d, d.root)), DiagramClass::Obdd);
}

}  // namespace ddk
