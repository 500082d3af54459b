#include "ddk/kobdd2uobdd.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "ddk/builder.hpp"

namespace ddk::kobdd2uobdd {

namespace {

int layer_of(const Diagram& g, NodeId u) { return g.nodes[u].is_sink() ? 0 : g.layer[u]; }

void require_kobdd(const Diagram& g) {
  if (g.layer.size() != g.size()) throw Error(ErrorCode::Param, "diagram has no layer map");
  if (g.order.empty()) throw Error(ErrorCode::OrderMismatch, "k-OBDD without an order");
  if (g.root < 0 || g.nodes[g.root].is_sink()) return;
  if (g.layer[g.root] != 1) throw Error(ErrorCode::Param, "source is not in layer 1");
}

// Non-sink exit targets of the layer part reachable from v.
std::vector<NodeId> exit_targets(const Diagram& g, NodeId v) {
  int l = layer_of(g, v);
  std::vector<uint8_t> seen(g.size(), 0), hit(g.size(), 0);
  std::vector<NodeId> stack{v}, out;
  seen[v] = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for_each_child(g.nodes[u], [&](NodeId c) {
      if (g.nodes[c].is_sink()) return;
      if (layer_of(g, c) == l) {
        if (!seen[c]) seen[c] = 1, stack.push_back(c);
      } else if (!hit[c]) {
        hit[c] = 1;
        out.push_back(c);
      }
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Slice of the layer of `v` built inside `b`.
NodeId slice_into(DiagramBuilder& b, const Diagram& g, NodeId v, NodeId next) {
  int l = layer_of(g, v);
  std::map<NodeId, NodeId> memo;
  std::function<NodeId(NodeId)> rec = [&](NodeId u) -> NodeId {
    const Node& n = g.nodes[u];
    if (n.is_sink()) return b.sink(next < 0 && n.value);
    if (layer_of(g, u) != l) return b.sink(u == next);
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    NodeId r;
    if (n.is_decision()) {
      NodeId lo = rec(n.lo), hi = rec(n.hi);
      r = b.decision(n.var, lo, hi);
    } else {
      std::vector<NodeId> kids;
      for (NodeId c : n.kids) kids.push_back(rec(c));
      r = b.nondet(kids);
    }
    memo.emplace(u, r);
    return r;
  };
  return rec(v);
}

}  // namespace

std::vector<SwitchChoice> enumerate_switch_choices(const Diagram& g) {
  require_kobdd(g);
  std::vector<SwitchChoice> out;
  if (g.root < 0) return out;
  SwitchChoice cur;
  std::function<void(NodeId)> go = [&](NodeId v) {
    cur.nodes.push_back(v);
    cur.layers.push_back(layer_of(g, v));
    out.push_back(cur);
    for (NodeId t : exit_targets(g, v)) go(t);
    cur.nodes.pop_back();
    cur.layers.pop_back();
  };
  if (g.nodes[g.root].is_sink()) {
    cur.nodes.push_back(g.root);
    cur.layers.push_back(1);
    out.push_back(cur);
    return out;
  }
  go(g.root);
  return out;
}

std::vector<Diagram> layer_slice(const Diagram& g, const SwitchChoice& c) {
  require_kobdd(g);
  std::vector<Diagram> out;
  for (int i = 0; i < c.r(); ++i) {
    DiagramBuilder b(g.vars, g.order);
    NodeId next = i + 1 < c.r() ? c.nodes[i + 1] : -1;
    NodeId root = slice_into(b, g, c.nodes[i], next);
    out.push_back(b.finish(root, DiagramClass::Obdd));
  }
  return out;
}

long double Result::bound() const {
  return 4.0L * std::pow(static_cast<long double>(input_size), static_cast<long double>(2 * k - 1));
}

Result simulate(const Diagram& g, int max_k) {
  require_kobdd(g);
  Result res;
  res.k = std::max(1, g.num_layers());
  res.input_size = g.size();
  if (res.k > max_k)
    throw Error(ErrorCode::KTooLarge, std::to_string(res.k) + " layers exceed the cap of " + std::to_string(max_k));
  auto choices = enumerate_switch_choices(g);
  res.enumerated = choices.size();
  DiagramBuilder b(g.vars, g.order);
  std::vector<NodeId> branches;
  for (const auto& c : choices) {
    NodeId acc = 1;
    for (int i = 0; i < c.r() && acc != 0; ++i) {
      NodeId next = i + 1 < c.r() ? c.nodes[i + 1] : -1;
      acc = b.apply(BoolOp::And, acc, slice_into(b, g, c.nodes[i], next));
    }
    if (acc == 0) continue;
    res.choices.push_back(c);
    branches.push_back(acc);
  }
  res.diagram = finish_with_source(b, branches, DiagramClass::Vee1Obdd);
  return res;
}

}  // namespace ddk::kobdd2uobdd
