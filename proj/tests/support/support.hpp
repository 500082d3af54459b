#pragma once

// Brute-force reference semantics and seeded generators for tests. Nothing in
// here calls the library's oracle, builder, apply or table machinery.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ddk/circuit.hpp"
#include "ddk/diagram.hpp"

namespace support {

using namespace ddk;

constexpr uint64_t kDefaultSeed = 20240611;

/// Seed from DDK_TEST_SEED when set.
inline uint64_t base_seed() {
  if (const char* s = std::getenv("DDK_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return kDefaultSeed;
}

inline std::mt19937_64 rng_for(uint64_t salt) { return std::mt19937_64(base_seed() * 1000003ULL + salt); }

inline std::vector<std::string> names(int n, const std::string& prefix = "v") {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

/// Bits of `row` over `vars` (first variable = MSB) mapped onto a universe.
inline std::vector<int8_t> bind_row(const std::vector<std::string>& vars, uint64_t row,
                                    const std::vector<std::string>& universe) {
  std::vector<int8_t> a(universe.size(), 0);
  size_t n = vars.size();
  for (size_t j = 0; j < n; ++j) {
    auto it = std::find(universe.begin(), universe.end(), vars[j]);
    if (it != universe.end()) a[it - universe.begin()] = (row >> (n - 1 - j)) & 1;
  }
  return a;
}

// ---- path semantics ---------------------------------------------------

/// Accepting paths by plain recursion (exponential in the worst case).
inline uint64_t paths(const Diagram& d, const std::vector<int8_t>& a, NodeId u) {
  const Node& n = d.nodes[u];
  if (n.kind == NodeKind::Sink) return n.value ? 1 : 0;
  if (n.kind == NodeKind::Decision) return paths(d, a, a[n.var] ? n.hi : n.lo);
  uint64_t s = 0;
  for (NodeId c : n.kids) s += paths(d, a, c);
  return s;
}

inline uint64_t paths(const Diagram& d, const std::vector<int8_t>& a) { return paths(d, a, d.root); }

inline std::vector<uint8_t> brute_table(const Diagram& d, const std::vector<std::string>& vars) {
  std::vector<uint8_t> t(size_t{1} << vars.size());
  for (uint64_t r = 0; r < t.size(); ++r) t[r] = paths(d, bind_row(vars, r, d.vars)) > 0;
  return t;
}

// ---- circuit semantics ------------------------------------------------

inline bool value(const Circuit& c, const std::vector<int8_t>& a, GateId g) {
  const Gate& gt = c.gates[g];
  switch (gt.kind) {
    case GateKind::Const: return gt.value;
    case GateKind::Lit: return a[gt.var] == (gt.value ? 1 : 0);
    case GateKind::And:
      for (GateId k : gt.kids)
        if (!value(c, a, k)) return false;
      return true;
    case GateKind::Or:
      for (GateId k : gt.kids)
        if (value(c, a, k)) return true;
      return false;
  }
  return false;
}

inline std::vector<uint8_t> brute_table(const Circuit& c, const std::vector<std::string>& vars) {
  std::vector<uint8_t> t(size_t{1} << vars.size());
  for (uint64_t r = 0; r < t.size(); ++r) t[r] = value(c, bind_row(vars, r, c.vars), c.root);
  return t;
}

/// Certificates enumerated explicitly as sets of chosen or-branches.
inline uint64_t certificates(const Circuit& c, const std::vector<int8_t>& a, GateId g) {
  const Gate& gt = c.gates[g];
  switch (gt.kind) {
    case GateKind::Const: return gt.value;
    case GateKind::Lit: return a[gt.var] == (gt.value ? 1 : 0);
    case GateKind::And: {
      uint64_t p = 1;
      for (GateId k : gt.kids) p *= certificates(c, a, k);
      return p;
    }
    case GateKind::Or: {
      uint64_t s = 0;
      for (GateId k : gt.kids) s += certificates(c, a, k);
      return s;
    }
  }
  return 0;
}

inline std::vector<uint8_t> complement(std::vector<uint8_t> t) {
  for (auto& b : t) b = !b;
  return t;
}

// ---- generators -------------------------------------------------------

inline std::vector<uint8_t> random_function(int n, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  std::vector<uint8_t> t(size_t{1} << n);
  for (auto& b : t) b = bit(rng);
  return t;
}

/// Reduced OBDD of a truth table (vars[order[0]] tested first) via
/// subfunction hashing, built straight into a Diagram.
inline Diagram obdd_of(const std::vector<uint8_t>& table, const std::vector<std::string>& vars,
                       const std::vector<VarId>& order) {
  Diagram d;
  d.vars = vars;
  d.order = order;
  d.cls = DiagramClass::Obdd;
  d.add_sink(false);
  d.add_sink(true);
  int n = static_cast<int>(vars.size());
  std::map<std::tuple<VarId, NodeId, NodeId>, NodeId> uniq;
  // value of `table` at the row assigning bits[v] to var v
  std::function<NodeId(int, std::vector<int8_t>&)> rec = [&](int depth, std::vector<int8_t>& bits) -> NodeId {
    if (depth == n) {
      uint64_t row = 0;
      for (int v = 0; v < n; ++v) row = 2 * row + bits[v];
      return table[row] ? 1 : 0;
    }
    VarId v = order[depth];
    bits[v] = 0;
    NodeId lo = rec(depth + 1, bits);
    bits[v] = 1;
    NodeId hi = rec(depth + 1, bits);
    if (lo == hi) return lo;
    auto key = std::make_tuple(v, lo, hi);
    auto it = uniq.find(key);
    if (it != uniq.end()) return it->second;
    NodeId u = d.add_decision(v, lo, hi);
    uniq.emplace(key, u);
    return u;
  };
  std::vector<int8_t> bits(n, 0);
  d.root = rec(0, bits);
  return gc(d);
}

inline std::vector<VarId> random_order(int n, std::mt19937_64& rng) {
  std::vector<VarId> o(n);
  std::iota(o.begin(), o.end(), 0);
  std::shuffle(o.begin(), o.end(), rng);
  return o;
}

/// Replaces random inner nodes u by Or(u & -x, u & x) for a variable x at or
/// below u's level. The split halves are built by cofactor-restricted
/// copying, so the result stays ordered and unambiguous.
inline Diagram nondeterminize(const Diagram& d, std::mt19937_64& rng, double p = 0.35) {
  Diagram out = d;
  std::vector<int> pos(d.vars.size(), -1);
  for (size_t i = 0; i < d.order.size(); ++i) pos[d.order[i]] = static_cast<int>(i);
  std::bernoulli_distribution pick(p);
  int n = static_cast<int>(d.order.size());
  auto topo = topo_order(d);
  std::vector<NodeId> replaced(d.size(), -1);
  NodeId zero = -1;
  for (NodeId u = 0; u < static_cast<NodeId>(out.size()); ++u)
    if (out.nodes[u].is_sink() && !out.nodes[u].value) zero = u;
  if (zero < 0) zero = out.add_sink(false);
  // copy of u restricted to x = b; x is tested at its level if skipped
  std::function<NodeId(NodeId, VarId, bool, std::map<NodeId, NodeId>&)> restrict_ =
      [&](NodeId u, VarId x, bool b, std::map<NodeId, NodeId>& memo) -> NodeId {
    const Node nd = out.nodes[u];
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    NodeId r;
    if ((nd.is_sink() && !nd.value) || u == zero) {
      r = zero;
    } else if (nd.is_sink() || pos[nd.var] > pos[x]) {
      // x was skipped: insert the test
      r = b ? out.add_decision(x, zero, u) : out.add_decision(x, u, zero);
    } else if (nd.var == x) {
      NodeId keep = b ? nd.hi : nd.lo;
      if (out.nodes[keep].is_sink() && !out.nodes[keep].value) keep = zero;
      r = keep == zero ? zero : b ? out.add_decision(x, zero, keep) : out.add_decision(x, keep, zero);
    } else {
      NodeId lo = restrict_(nd.lo, x, b, memo), hi = restrict_(nd.hi, x, b, memo);
      r = lo == hi ? lo : out.add_decision(nd.var, lo, hi);
    }
    memo.emplace(u, r);
    return r;
  };
  auto is_const = [&](NodeId u) {
    // reachability of both sinks inside a deterministic sub-diagram
    bool z = false, o = false;
    std::vector<NodeId> st{u};
    std::vector<uint8_t> seen(out.size(), 0);
    while (!st.empty()) {
      NodeId v = st.back();
      st.pop_back();
      if (seen[v]) continue;
      seen[v] = 1;
      const Node& nd = out.nodes[v];
      if (nd.is_sink()) (nd.value ? o : z) = true;
      else for_each_child(nd, [&](NodeId c) { st.push_back(c); });
    }
    return !(z && o);
  };
  for (NodeId u : topo) {
    if (d.nodes[u].is_sink() || !pick(rng)) continue;
    std::uniform_int_distribution<int> lev(pos[d.nodes[u].var], n - 1);
    VarId x = d.order[lev(rng)];
    std::map<NodeId, NodeId> m0, m1;
    NodeId a = restrict_(u, x, false, m0), b = restrict_(u, x, true, m1);
    if (is_const(a) || is_const(b)) continue;
    replaced[u] = out.add_nondet({a, b});
  }
  // redirect original parents (and the root) to the or-nodes
  for (NodeId u = 0; u < static_cast<NodeId>(d.size()); ++u) {
    Node& nd = out.nodes[u];
    if (!nd.is_decision()) continue;
    if (replaced[nd.lo] >= 0) nd.lo = replaced[nd.lo];
    if (replaced[nd.hi] >= 0) nd.hi = replaced[nd.hi];
  }
  if (replaced[d.root] >= 0) out.root = replaced[d.root];
  out.cls = DiagramClass::Vee1Obdd;
  return gc(out);
}

/// Random vtree over `vars` with shuffled leaves.
inline Vtree random_vtree(const std::vector<std::string>& vars, std::mt19937_64& rng) {
  Vtree t;
  std::vector<std::string> v = vars;
  std::shuffle(v.begin(), v.end(), rng);
  std::function<int(int, int)> build = [&](int lo, int hi) -> int {
    if (hi - lo == 1) return t.add_leaf(v[lo]);
    std::uniform_int_distribution<int> cut(lo + 1, hi - 1);
    int m = cut(rng);
    int l = build(lo, m);
    int r = build(m, hi);
    return t.add_inner(l, r);
  };
  t.root = build(0, static_cast<int>(v.size()));
  return t;
}

/// Structured circuit over a vtree. Deterministic mode builds (g, not g) pairs
/// so every or-gate splits on a prime and its complement; otherwise or-gates
/// take independent elements and may be ambiguous.
inline Circuit random_structured(const Vtree& t, const std::vector<std::string>& vars, std::mt19937_64& rng,
                                 bool deterministic) {
  Circuit c;
  c.vars = vars;
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution skip(0.2);
  std::map<int, std::vector<std::pair<GateId, GateId>>> pool;
  std::function<std::pair<GateId, GateId>(int)> gen = [&](int v) -> std::pair<GateId, GateId> {
    auto& pl = pool[v];
    if (!pl.empty() && coin(rng)) return pl[std::uniform_int_distribution<size_t>(0, pl.size() - 1)(rng)];
    const auto& nd = t.nodes[v];
    std::pair<GateId, GateId> res;
    if (nd.is_leaf()) {
      VarId x = c.find_var(nd.var);
      bool s = coin(rng);
      res = {c.add_lit(x, s), c.add_lit(x, !s)};
    } else if (skip(rng)) {
      res = gen(coin(rng) ? nd.left : nd.right);
    } else {
      auto [p, np] = gen(nd.left);
      auto [s1, ns1] = gen(nd.right);
      if (coin(rng)) {
        // p & s1, complement (p & -s1) | -p
        GateId g = c.add_and(p, s1);
        GateId ng = c.add_or({c.add_and(p, ns1), np});
        res = {g, ng};
      } else {
        auto [s2, ns2] = gen(nd.right);
        if (deterministic) {
          res = {c.add_or({c.add_and(p, s1), c.add_and(np, s2)}), c.add_or({c.add_and(p, ns1), c.add_and(np, ns2)})};
        } else {
          auto [q, nq] = gen(nd.left);
          res = {c.add_or({c.add_and(p, s1), c.add_and(q, s2)}), c.add_or({c.add_and(np, ns1), c.add_and(nq, ns2)})};
        }
      }
    }
    pl.push_back(res);
    return res;
  };
  c.root = gen(t.root).first;
  return gc(c);
}

/// Random 2-OBDD over a random order: layer 1 may exit into any layer-2 node.
inline Diagram random_two_obdd(int n, std::mt19937_64& rng, int width = 3) {
  Diagram d;
  d.vars = names(n, "x");
  d.order = random_order(n, rng);
  d.cls = DiagramClass::KObdd;
  d.add_sink(false);
  d.add_sink(true);
  d.layer = {0, 0};
  std::uniform_int_distribution<int> wd(1, width);
  auto layer_nodes = [&](int layer, const std::vector<NodeId>& extra) {
    std::vector<NodeId> below = {0, 1};
    std::vector<NodeId> made;
    for (int lvl = n - 1; lvl >= 0; --lvl) {
      std::vector<NodeId> pool = below;
      pool.insert(pool.end(), extra.begin(), extra.end());
      std::uniform_int_distribution<size_t> ch(0, pool.size() - 1);
      std::vector<NodeId> fresh;
      int w = lvl == 0 ? 1 : wd(rng);
      for (int i = 0; i < w; ++i) {
        NodeId lo = pool[ch(rng)], hi = pool[ch(rng)];
        if (lo == hi) hi = lo == 0 ? 1 : 0;
        fresh.push_back(d.add_decision(d.order[lvl], lo, hi));
        d.layer.push_back(layer);
      }
      below.insert(below.end(), fresh.begin(), fresh.end());
      made.insert(made.end(), fresh.begin(), fresh.end());
    }
    return made;
  };
  auto second = layer_nodes(2, {});
  auto first = layer_nodes(1, second);
  d.root = first.back();
  return gc(d);
}

}  // namespace support
