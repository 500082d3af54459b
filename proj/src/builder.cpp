#include "ddk/builder.hpp"

#include <algorithm>

namespace ddk {

namespace {
inline size_t mix(size_t h, uint64_t v) {
  v *= 0x9e3779b97f4a7c15ULL;
  v ^= v >> 32;
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
}  // namespace

size_t DiagramBuilder::TripleHash::operator()(const Triple& t) const {
  return mix(mix(mix(0, static_cast<uint64_t>(t.a)), static_cast<uint64_t>(t.b)), static_cast<uint64_t>(t.c));
}

size_t DiagramBuilder::VecHash::operator()(const std::vector<NodeId>& k) const {
  size_t h = k.size();
  for (NodeId x : k) h = mix(h, static_cast<uint64_t>(x));
  return h;
}

DiagramBuilder::DiagramBuilder(std::vector<std::string> vars, std::vector<VarId> order)
    : vars_(std::move(vars)), order_(std::move(order)), pos_(vars_.size(), -1) {
  for (size_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = static_cast<int>(i);
  Node s0, s1;
  s0.kind = s1.kind = NodeKind::Sink;
  s1.value = true;
  add(s0, num_levels());
  add(s1, num_levels());
}

NodeId DiagramBuilder::add(Node n, int level) {
  nodes_.push_back(std::move(n));
  level_.push_back(level);
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId DiagramBuilder::decision(VarId var, NodeId lo, NodeId hi) {
  if (lo == hi) return lo;
  int p = var >= 0 && var < static_cast<VarId>(pos_.size()) ? pos_[var] : -1;
  if (p < 0) throw Error(ErrorCode::OrderMismatch, "variable outside the builder order");
  if (level_[lo] <= p || level_[hi] <= p)
    throw Error(ErrorCode::OrderMismatch, "decision on " + vars_[var] + " above an earlier variable");
  Triple key{var, lo, hi};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  Node n;
  n.kind = NodeKind::Decision;
  n.var = var;
  n.lo = lo;
  n.hi = hi;
  NodeId id = add(std::move(n), p);
  unique_.emplace(key, id);
  return id;
}

NodeId DiagramBuilder::nondet(std::vector<NodeId> kids) {
  std::vector<NodeId> keep;
  for (NodeId k : kids)
    if (k != 0 && std::find(keep.begin(), keep.end(), k) == keep.end()) keep.push_back(k);
  if (keep.empty()) return 0;
  if (keep.size() == 1) return keep[0];
  auto it = unique_or_.find(keep);
  if (it != unique_or_.end()) return it->second;
  int lev = num_levels();
  for (NodeId k : keep) lev = std::min(lev, level_[k]);
  Node n;
  n.kind = NodeKind::Nondet;
  n.kids = keep;
  NodeId id = add(std::move(n), lev);
  unique_or_.emplace(std::move(keep), id);
  return id;
}

NodeId DiagramBuilder::literal(VarId var, bool positive) {
  return positive ? decision(var, 0, 1) : decision(var, 1, 0);
}

NodeId DiagramBuilder::cube(const std::vector<std::pair<VarId, bool>>& lits) {
  std::vector<std::pair<int, bool>> byp;
  for (auto [v, s] : lits) {
    if (pos_[v] < 0) throw Error(ErrorCode::OrderMismatch, "cube variable outside the order");
    byp.emplace_back(pos_[v], s);
  }
  std::sort(byp.begin(), byp.end());
  for (size_t i = 1; i < byp.size(); ++i)
    if (byp[i].first == byp[i - 1].first && byp[i].second != byp[i - 1].second) return 0;
  NodeId cur = 1;
  for (size_t i = byp.size(); i-- > 0;) {
    if (i + 1 < byp.size() && byp[i + 1].first == byp[i].first) continue;
    VarId v = order_[byp[i].first];
    cur = byp[i].second ? decision(v, 0, cur) : decision(v, cur, 0);
  }
  return cur;
}

NodeId DiagramBuilder::import(const Diagram& src, NodeId u) {
  std::vector<VarId> vmap(src.vars.size(), -1);
  for (size_t i = 0; i < src.vars.size(); ++i) {
    auto it = std::find(vars_.begin(), vars_.end(), src.vars[i]);
    if (it != vars_.end()) vmap[i] = static_cast<VarId>(it - vars_.begin());
  }
  std::vector<NodeId> map(src.size(), -1);
  for (NodeId w : topo_order(src, u)) {
    const Node& n = src.nodes[w];
    switch (n.kind) {
      case NodeKind::Sink: map[w] = sink(n.value); break;
      case NodeKind::Decision:
        if (vmap[n.var] < 0) throw Error(ErrorCode::VarUnbound, "variable " + src.vars[n.var] + " not in universe");
        map[w] = decision(vmap[n.var], map[n.lo], map[n.hi]);
        break;
      default: {
        std::vector<NodeId> kids;
        for (NodeId c : n.kids) kids.push_back(map[c]);
        map[w] = nondet(std::move(kids));
      }
    }
  }
  return map[u];
}

NodeId DiagramBuilder::apply(BoolOp op, NodeId a, NodeId b) { return apply_rec(op, a, b); }

NodeId DiagramBuilder::apply_rec(BoolOp op, NodeId a, NodeId b) {
  switch (op) {
    case BoolOp::And:
      if (a == 0 || b == 0) return 0;
      if (a == 1) return b;
      if (b == 1 || a == b) return a;
      break;
    case BoolOp::Or:
      if (a == 1 || b == 1) return 1;
      if (a == 0) return b;
      if (b == 0 || a == b) return a;
      break;
    case BoolOp::Xor:
      if (a == 0) return b;
      if (b == 0) return a;
      if (a == b) return 0;
      if (a == 1) return negate(b);
      if (b == 1) return negate(a);
      break;
  }
  if (a > b) std::swap(a, b);
  Triple key{static_cast<int64_t>(op), a, b};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  if (nodes_[a].is_or() || nodes_[b].is_or())
    throw Error(ErrorCode::NotDeterministic, "apply on a nondeterministic node");
  int la = level_[a], lb = level_[b];
  int top = std::min(la, lb);
  NodeId a0 = a, a1 = a, b0 = b, b1 = b;
  if (la == top) a0 = nodes_[a].lo, a1 = nodes_[a].hi;
  if (lb == top) b0 = nodes_[b].lo, b1 = nodes_[b].hi;
  NodeId lo = apply_rec(op, a0, b0);
  NodeId hi = apply_rec(op, a1, b1);
  NodeId r = decision(order_[top], lo, hi);
  memo_.emplace(key, r);
  return r;
}

NodeId DiagramBuilder::negate(NodeId a) {
  if (a <= 1) return 1 - a;
  Triple key{3, a, 0};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const Node n = nodes_[a];
  if (n.is_or()) throw Error(ErrorCode::NotDeterministic, "negating a nondeterministic node");
  NodeId r = decision(n.var, negate(n.lo), negate(n.hi));
  memo_.emplace(key, r);
  return r;
}

NodeId DiagramBuilder::determinize(NodeId a) {
  if (a <= 1) return a;
  Triple key{4, a, 0};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  const Node n = nodes_[a];
  NodeId r;
  if (n.is_decision()) {
    r = decision(n.var, determinize(n.lo), determinize(n.hi));
  } else {
    r = 0;
    for (NodeId c : n.kids) r = apply(BoolOp::Or, r, determinize(c));
  }
  memo_.emplace(key, r);
  return r;
}

NodeId DiagramBuilder::from_table(const TruthTable& t) {
  std::vector<int> seq;
  for (int j = 0; j < t.num_vars(); ++j) {
    auto it = std::find(vars_.begin(), vars_.end(), t.vars()[j]);
    if (it == vars_.end() || pos_[it - vars_.begin()] < 0)
      throw Error(ErrorCode::VarUnbound, "table variable " + t.vars()[j] + " outside the order");
    seq.push_back(j);
  }
  auto p = [&](int j) { return pos_[std::find(vars_.begin(), vars_.end(), t.vars()[j]) - vars_.begin()]; };
  std::sort(seq.begin(), seq.end(), [&](int x, int y) { return p(x) < p(y); });
  return from_table_rec(t, seq, 0, 0);
}

NodeId DiagramBuilder::from_table_rec(const TruthTable& t, const std::vector<int>& seq, size_t depth,
                                      uint64_t row) {
  if (depth == seq.size()) return sink(t.get(row));
  int j = seq[depth];
  int shift = t.num_vars() - 1 - j;
  NodeId lo = from_table_rec(t, seq, depth + 1, row);
  NodeId hi = from_table_rec(t, seq, depth + 1, row | (uint64_t{1} << shift));
  VarId v = static_cast<VarId>(std::find(vars_.begin(), vars_.end(), t.vars()[j]) - vars_.begin());
  return decision(v, lo, hi);
}

Diagram DiagramBuilder::finish(NodeId root, DiagramClass cls) const {
  Diagram d;
  d.vars = vars_;
  d.order = order_;
  d.cls = cls;
  d.root = root;
  // copy only the reachable part, then renumber
  std::vector<NodeId> map(nodes_.size(), -1);
  std::vector<NodeId> stack{root};
  std::vector<NodeId> seen;
  map[root] = 0;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    seen.push_back(u);
    const Node& n = nodes_[u];
    auto visit = [&](NodeId c) {
      if (map[c] < 0) map[c] = 0, stack.push_back(c);
    };
    for_each_child(n, visit);
  }
  std::sort(seen.begin(), seen.end());
  for (size_t i = 0; i < seen.size(); ++i) map[seen[i]] = static_cast<NodeId>(i);
  for (NodeId u : seen) {
    Node n = nodes_[u];
    if (n.is_decision()) n.lo = map[n.lo], n.hi = map[n.hi];
    for (auto& c : n.kids) c = map[c];
    d.nodes.push_back(std::move(n));
  }
  d.root = map[root];
  return gc(d);
}

}  // namespace ddk

namespace ddk {

Diagram finish_with_source(const DiagramBuilder& b, const std::vector<NodeId>& branches, DiagramClass cls) {
  std::vector<NodeId> keep;
  for (NodeId k : branches)
    if (k != 0) keep.push_back(k);
  Diagram d;
  d.vars = b.vars();
  d.order = b.order();
  d.cls = cls;
  // copy the union of the branch sub-diagrams, children first
  std::vector<NodeId> map(b.size(), -1);
  std::vector<NodeId> post;
  std::vector<std::pair<NodeId, bool>> stack;
  for (NodeId r : keep) stack.emplace_back(r, false);
  stack.emplace_back(0, false);
  stack.emplace_back(1, false);
  std::vector<uint8_t> state(b.size(), 0);
  while (!stack.empty()) {
    auto [u, done] = stack.back();
    stack.pop_back();
    if (done) {
      post.push_back(u);
      state[u] = 2;
      continue;
    }
    if (state[u]) continue;
    state[u] = 1;
    stack.emplace_back(u, true);
    for_each_child(b.node(u), [&](NodeId c) {
      if (!state[c]) stack.emplace_back(c, false);
    });
  }
  for (NodeId u : post) {
    Node n = b.node(u);
    if (n.is_decision()) {
      n.lo = map[n.lo];
      n.hi = map[n.hi];
    }
    for (auto& k : n.kids) k = map[k];
    map[u] = static_cast<NodeId>(d.nodes.size());
    d.nodes.push_back(std::move(n));
  }
  Node src;
  src.kind = NodeKind::Nondet;
  for (NodeId r : keep) src.kids.push_back(map[r]);
  if (keep.empty()) src.kids.push_back(map[0]);
  d.root = static_cast<NodeId>(d.nodes.size());
  d.nodes.push_back(std::move(src));
  return gc(d);
}

}  // namespace ddk
