#include "ddk/sdnnf2nobdd.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace ddk::sdnnf2nobdd {

namespace {

RespectResult require_structured(const Circuit& c, const Vtree& t) {
  auto rr = check_respects_vtree(c, t);
  if (!rr.report.ok()) throw Error(ErrorCode::NotStructured, rr.report.summary());
  return rr;
}

// Mass table from a precomputed decomposition map.
MassTable masses(const Circuit& c, const Vtree& t, const RespectResult& rr) {
  MassTable mt;
  size_t nv = t.nodes.size();
  mt.m.assign(nv, 0);
  mt.ml.assign(nv, 0);
  mt.mr.assign(nv, 0);
  for (GateId g : topo_order(c))
    if (c.gates[g].kind == GateKind::And) ++mt.m[rr.dnode[g]], ++mt.total;
  std::vector<uint64_t> sub(nv, 0);
  // children precede parents in a post-order; iterate by depth instead
  VtreeIndex ix(t);
  std::vector<int> byd(nv);
  for (size_t v = 0; v < nv; ++v) byd[v] = static_cast<int>(v);
  std::sort(byd.begin(), byd.end(), [&](int a, int b) { return ix.depth(a) > ix.depth(b); });
  for (int v : byd) {
    sub[v] = mt.m[v];
    if (!t.nodes[v].is_leaf()) {
      mt.ml[v] = sub[t.nodes[v].left];
      mt.mr[v] = sub[t.nodes[v].right];
      sub[v] += mt.ml[v] + mt.mr[v];
    }
  }
  return mt;
}

// Index of the light input of an and-gate.
int light_slot(const Vtree& t, const RespectResult& rr, const MassTable& m, GateId g) {
  int v = rr.dnode[g];
  bool left_light = m.ml[v] <= m.mr[v];
  // slot 0 sits on the left side unless swapped
  bool slot0_left = !rr.swapped[g];
  (void)t;
  return left_light == slot0_left ? 0 : 1;
}

}  // namespace

MassTable compute_mass(const Circuit& c, const Vtree& t) { return masses(c, t, require_structured(c, t)); }

std::vector<std::vector<EdgeClass>> classify_edges(const Circuit& c, const Vtree& t, const MassTable& m) {
  auto rr = require_structured(c, t);
  std::vector<std::vector<EdgeClass>> out(c.size());
  for (GateId g = 0; g < static_cast<GateId>(c.size()); ++g) {
    out[g].assign(c.gates[g].kids.size(), EdgeClass::Neutral);
    if (c.gates[g].kind != GateKind::And || rr.dnode[g] < 0) continue;
    int ls = light_slot(t, rr, m, g);
    out[g][ls] = EdgeClass::Light;
    out[g][1 - ls] = EdgeClass::Heavy;
  }
  return out;
}

std::vector<std::string> induced_order(const Vtree& t, const MassTable& m) {
  std::vector<std::string> out;
  if (t.root < 0) return out;
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    const auto& nd = t.nodes[v];
    if (nd.is_leaf()) {
      out.push_back(nd.var);
      continue;
    }
    bool swap = m.ml[v] > m.mr[v];
    int first = swap ? nd.right : nd.left, second = swap ? nd.left : nd.right;
    stack.push_back(second);
    stack.push_back(first);
  }
  return out;
}

Quantities measure(const Circuit& c, const Vtree& t) {
  auto rr = require_structured(c, t);
  auto m = masses(c, t, rr);
  Quantities q;
  q.m_and = m.total;
  std::vector<uint64_t> depth(c.size(), 0);
  for (GateId g : topo_order(c)) {
    const Gate& gt = c.gates[g];
    if (gt.kind == GateKind::Lit) {
      q.n_lowered += 3;
      continue;
    }
    ++q.n_lowered;
    int ls = gt.kind == GateKind::And ? light_slot(t, rr, m, g) : -1;
    for (size_t i = 0; i < gt.kids.size(); ++i)
      depth[g] = std::max(depth[g], depth[gt.kids[i]] + (static_cast<int>(i) == ls ? 1 : 0));
  }
  if (c.root >= 0) q.l_light = depth[c.root];
  return q;
}

long double Result::bound() const {
  return static_cast<long double>(n_lowered) * std::pow(static_cast<long double>(m_and + 1), static_cast<long double>(l_light));
}

Result simulate(const Circuit& c, const Vtree& t) {
  if (has_constant_inputs(c)) throw Error(ErrorCode::ConstInput, "normalize the circuit first");
  auto rr = require_structured(c, t);
  Result res;
  res.mass = masses(c, t, rr);
  res.m_and = res.mass.total;

  std::vector<std::string> order;
  for (const auto& name : induced_order(t, res.mass))
    if (c.find_var(name) >= 0) order.push_back(name);
  res.order = order;

  // lowered graph: gates keep their ids, literal g gets sinks lit0[g], lit1[g]
  const GateId G = static_cast<GateId>(c.size());
  auto topo = topo_order(c);
  std::vector<int> sink0(G, -1), sink1(G, -1);
  int next = G;
  uint64_t nonlit = 0, lits = 0;
  for (GateId g : topo) {
    if (c.gates[g].kind == GateKind::Lit) {
      sink0[g] = next++;
      sink1[g] = next++;
      ++lits;
    } else {
      ++nonlit;
    }
  }
  res.n_lowered = nonlit + 3 * lits;
  const int total = next;
  std::vector<GateId> sink_owner(total, -1);
  for (GateId g : topo)
    if (sink0[g] >= 0) sink_owner[sink0[g]] = g, sink_owner[sink1[g]] = g;

  // light edge ids: 2 * gate + slot
  std::vector<int> light(G, -1);
  for (GateId g : topo)
    if (c.gates[g].kind == GateKind::And) light[g] = light_slot(t, rr, res.mass, g);

  // interned light sets
  std::vector<std::vector<int>> sets{{}};
  std::map<std::vector<int>, int> set_id{{{}, 0}};
  auto intern = [&](std::vector<int> s) {
    auto it = set_id.find(s);
    if (it != set_id.end()) return it->second;
    int id = static_cast<int>(sets.size());
    set_id.emplace(s, id);
    sets.push_back(std::move(s));
    return id;
  };
  auto with = [&](int s, int e) {
    std::vector<int> v = sets[s];
    v.insert(std::upper_bound(v.begin(), v.end(), e), e);
    return intern(std::move(v));
  };

  // S(u) for every lowered node, parents before children
  std::vector<std::vector<int>> S(total);
  S[c.root].push_back(0);
  auto add_all = [](std::vector<int>& dst, const std::vector<int>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
  };
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    GateId g = *it;
    auto& sg = S[g];
    std::sort(sg.begin(), sg.end());
    sg.erase(std::unique(sg.begin(), sg.end()), sg.end());
    const Gate& gt = c.gates[g];
    if (gt.kind == GateKind::Lit) {
      add_all(S[sink0[g]], sg);
      add_all(S[sink1[g]], sg);
    } else if (gt.kind == GateKind::And) {
      int ls = light[g];
      int e = 2 * g + ls;
      for (int s : sg) S[gt.kids[ls]].push_back(with(s, e));
      add_all(S[gt.kids[1 - ls]], sg);  // heavy side entered via type-3 edges with the same s
    } else if (gt.kind == GateKind::Or) {
      for (GateId k : gt.kids) add_all(S[k], sg);
    }
  }
  for (int u = G; u < total; ++u) {
    std::sort(S[u].begin(), S[u].end());
    S[u].erase(std::unique(S[u].begin(), S[u].end()), S[u].end());
  }
  for (const auto& s : sets) res.l_light = std::max<uint64_t>(res.l_light, s.size());

  // nodes
  Diagram& d = res.raw;
  d.vars = order;
  for (size_t i = 0; i < order.size(); ++i) d.order.push_back(static_cast<VarId>(i));
  d.cls = DiagramClass::VeeObdd;
  std::vector<std::map<int, NodeId>> id(total);
  for (int u = 0; u < total; ++u)
    for (int s : S[u]) {
      Node n;
      if (u >= G) {
        bool one = sink1[sink_owner[u]] == u;
        n.kind = one && s != 0 ? NodeKind::Unlabeled : NodeKind::Sink;
        n.value = one;
      } else {
        switch (c.gates[u].kind) {
          case GateKind::Const: n.kind = NodeKind::Sink, n.value = c.gates[u].value; break;
          case GateKind::Lit: n.kind = NodeKind::Decision, n.var = d.find_var(c.vars[c.gates[u].var]); break;
          case GateKind::And: n.kind = NodeKind::Unlabeled; break;
          case GateKind::Or: n.kind = NodeKind::Nondet; break;
        }
      }
      id[u][s] = static_cast<NodeId>(d.nodes.size());
      d.nodes.push_back(std::move(n));
    }
  res.raw_nodes = d.nodes.size();

  auto has = [&](int u, int s) { return std::binary_search(S[u].begin(), S[u].end(), s); };
  // light edge -> (and-gate, slot) for type-3 edges
  for (int u = 0; u < total; ++u)
    for (int s : S[u]) {
      Node& n = d.nodes[id[u][s]];
      if (u >= G) {
        if (n.kind != NodeKind::Unlabeled) continue;
        for (int e : sets[s]) {
          GateId a = e / 2;
          int ls = e % 2;
          std::vector<int> rest = sets[s];
          rest.erase(std::find(rest.begin(), rest.end(), e));
          auto it = set_id.find(rest);
          if (it == set_id.end() || !has(a, it->second)) continue;
          n.kids.push_back(id[c.gates[a].kids[1 - ls]].at(it->second));
        }
        continue;
      }
      const Gate& gt = c.gates[u];
      switch (gt.kind) {
        case GateKind::Const: break;
        case GateKind::Lit:
          n.lo = id[gt.value ? sink0[u] : sink1[u]].at(s);
          n.hi = id[gt.value ? sink1[u] : sink0[u]].at(s);
          break;
        case GateKind::And: {
          int ls = light[u];
          n.kids.push_back(id[gt.kids[ls]].at(with(s, 2 * u + ls)));
          break;
        }
        case GateKind::Or:
          for (GateId k : gt.kids) n.kids.push_back(id[k].at(s));
          break;
      }
    }
  d.root = id[c.root].at(0);
  res.diagram = contract_unlabeled(d);
  return res;
}

Diagram contract_unlabeled(const Diagram& d) {
  std::vector<NodeId> target(d.size(), -1);
  auto topo = topo_order(d);
  for (NodeId u : topo) {
    const Node& n = d.nodes[u];
    target[u] = u;
    if (n.kind != NodeKind::Unlabeled) continue;
    if (n.kids.empty()) throw Error(ErrorCode::Dangling, "unlabeled node " + std::to_string(u) + " has no successor");
    if (n.kids.size() == 1) target[u] = target[n.kids[0]];
  }
  Diagram out = d;
  for (NodeId u : topo) {
    Node& n = out.nodes[u];
    if (n.is_decision()) {
      n.lo = target[n.lo];
      n.hi = target[n.hi];
    }
    for (auto& k : n.kids) k = target[k];
    if (n.kind == NodeKind::Unlabeled) n.kind = NodeKind::Nondet;
  }
  out.root = target[d.root];
  return gc(out);
}

Report certify_path_certificate_bijection(const Circuit& c, const Diagram& d, int nmax) {
  Report r;
  int n = static_cast<int>(c.vars.size());
  if (n > nmax) {
    r.unchecked.push_back("bijection over " + std::to_string(n) + " variables");
    return r;
  }
  std::vector<VarId> dv(c.vars.size());
  for (size_t i = 0; i < c.vars.size(); ++i) dv[i] = d.find_var(c.vars[i]);
  for (uint64_t row = 0; row < (uint64_t{1} << n); ++row) {
    Assignment ac(c.vars.size()), ad(d.vars.size(), 0);
    for (int j = 0; j < n; ++j) {
      int8_t b = (row >> (n - 1 - j)) & 1;
      ac[j] = b;
      if (dv[j] >= 0) ad[dv[j]] = b;
    }
    uint64_t paths = count_accepting_paths(d, ad);
    uint64_t certs = count_1certificates(c, ac);
    if (paths != certs) {
      r.fail("bijection",
             "row " + std::to_string(row) + ": " + std::to_string(paths) + " paths, " + std::to_string(certs) +
                 " certificates",
             {static_cast<int>(row)});
      break;
    }
  }
  return r;
}

}  // namespace ddk::sdnnf2nobdd
