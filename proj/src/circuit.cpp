#include <algorithm>
#include <limits>
#include <map>

#include "ddk/circuit.hpp"
#include "ddk/oracle.hpp"

namespace ddk {

VarId Circuit::find_var(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  return it == vars.end() ? -1 : static_cast<VarId>(it - vars.begin());
}

VarId Circuit::ensure_var(const std::string& name) {
  VarId v = find_var(name);
  if (v >= 0) return v;
  vars.push_back(name);
  return static_cast<VarId>(vars.size() - 1);
}

GateId Circuit::add_const(bool value) {
  Gate g;
  g.kind = GateKind::Const;
  g.value = value;
  gates.push_back(std::move(g));
  return static_cast<GateId>(gates.size() - 1);
}

GateId Circuit::add_lit(VarId var, bool positive) {
  Gate g;
  g.kind = GateKind::Lit;
  g.var = var;
  g.value = positive;
  gates.push_back(std::move(g));
  return static_cast<GateId>(gates.size() - 1);
}

GateId Circuit::add_and(GateId a, GateId b) {
  Gate g;
  g.kind = GateKind::And;
  g.kids = {a, b};
  gates.push_back(std::move(g));
  return static_cast<GateId>(gates.size() - 1);
}

GateId Circuit::add_or(std::vector<GateId> kids) {
  Gate g;
  g.kind = GateKind::Or;
  g.kids = std::move(kids);
  gates.push_back(std::move(g));
  return static_cast<GateId>(gates.size() - 1);
}

std::vector<GateId> topo_order(const Circuit& c, GateId from) {
  if (from < 0) from = c.root;
  std::vector<GateId> out;
  if (from < 0 || from >= static_cast<GateId>(c.size())) return out;
  std::vector<uint8_t> state(c.size(), 0);
  std::vector<std::pair<GateId, size_t>> stack{{from, 0}};
  state[from] = 1;
  while (!stack.empty()) {
    auto& [g, i] = stack.back();
    const auto& kids = c.gates[g].kids;
    if (i == kids.size()) {
      state[g] = 2;
      out.push_back(g);
      stack.pop_back();
      continue;
    }
    GateId k = kids[i++];
    if (k < 0 || k >= static_cast<GateId>(c.size()))
      throw Error(ErrorCode::Parse, "gate " + std::to_string(g) + " has an invalid input");
    if (state[k] == 1) throw Error(ErrorCode::Cyclic, "cycle through gate " + std::to_string(k));
    if (state[k] == 0) {
      state[k] = 1;
      stack.emplace_back(k, 0);
    }
  }
  return out;
}

Circuit gc(const Circuit& c) {
  Circuit out;
  out.vars = c.vars;
  auto topo = topo_order(c);
  std::vector<GateId> remap(c.size(), -1);
  for (GateId g : topo) remap[g] = static_cast<GateId>(out.gates.size()), out.gates.push_back(c.gates[g]);
  for (auto& g : out.gates)
    for (auto& k : g.kids) k = remap[k];
  out.root = c.root >= 0 ? remap[c.root] : -1;
  return out;
}

std::vector<VarSet> gate_vars(const Circuit& c) {
  int n = static_cast<int>(c.vars.size());
  std::vector<VarSet> vs(c.size(), VarSet(n));
  std::vector<uint8_t> done(c.size(), 0);
  auto run = [&](GateId from) {
    for (GateId g : topo_order(c, from)) {
      if (done[g]) continue;
      done[g] = 1;
      const Gate& gt = c.gates[g];
      if (gt.kind == GateKind::Lit) vs[g].insert(gt.var);
      for (GateId k : gt.kids) vs[g] |= vs[k];
    }
  };
  if (c.root >= 0) run(c.root);
  for (GateId g = 0; g < static_cast<GateId>(c.size()); ++g)
    if (!done[g]) run(g);
  return vs;
}

bool eval_circuit(const Circuit& c, const Assignment& a) {
  std::vector<uint8_t> val(c.size(), 0);
  for (GateId g : topo_order(c)) {
    const Gate& gt = c.gates[g];
    switch (gt.kind) {
      case GateKind::Const: val[g] = gt.value; break;
      case GateKind::Lit: {
        if (gt.var < 0 || gt.var >= static_cast<VarId>(a.size()) || a[gt.var] < 0)
          throw Error(ErrorCode::VarUnbound, "assignment does not bind " +
                                                 (gt.var >= 0 && gt.var < static_cast<VarId>(c.vars.size())
                                                      ? c.vars[gt.var]
                                                      : std::to_string(gt.var)));
        val[g] = (a[gt.var] != 0) == gt.value;
        break;
      }
      case GateKind::And:
        val[g] = 1;
        for (GateId k : gt.kids) val[g] &= val[k];
        break;
      case GateKind::Or:
        val[g] = 0;
        for (GateId k : gt.kids) val[g] |= val[k];
        break;
    }
  }
  return c.root >= 0 && val[c.root];
}

Assignment make_assignment(const Circuit& c, const std::vector<std::pair<std::string, bool>>& values) {
  Assignment a(c.vars.size(), -1);
  for (const auto& [name, v] : values) {
    VarId id = c.find_var(name);
    if (id < 0) throw Error(ErrorCode::VarUnbound, "unknown variable " + name);
    a[id] = v ? 1 : 0;
  }
  return a;
}

Report check_decomposable(const Circuit& c) {
  Report r;
  auto vs = gate_vars(c);
  for (GateId g : topo_order(c)) {
    const Gate& gt = c.gates[g];
    if (gt.kind != GateKind::And) continue;
    if (gt.kids.size() != 2) {
      r.fail("fanin", "and-gate " + std::to_string(g) + " has " + std::to_string(gt.kids.size()) + " inputs", {g});
      continue;
    }
    int v = vs[gt.kids[0]].first_common(vs[gt.kids[1]]);
    if (v >= 0) r.fail("decomposability", "and-gate " + std::to_string(g) + " shares " + c.vars[v], {g, v});
  }
  return r;
}

Report check_deterministic(const Circuit& c) {
  Report r;
  auto vs = gate_vars(c);
  const int limit = exhaustive_limit();
  for (GateId g : topo_order(c)) {
    const Gate& gt = c.gates[g];
    if (gt.kind != GateKind::Or || gt.kids.size() < 2) continue;
    VarSet u(static_cast<int>(c.vars.size()));
    for (GateId k : gt.kids) u |= vs[k];
    if (u.count() > limit) {
      r.unchecked.push_back("determinism at gate " + std::to_string(g));
      continue;
    }
    std::vector<std::string> names;
    for (int v : u.elements()) names.push_back(c.vars[v]);
    auto tabs = gate_tables(c, gt.kids, names);
    TruthTable acc(names);
    for (size_t i = 0; i < tabs.size(); ++i) {
      if (auto w = (acc & tabs[i]).first_one()) {
        size_t j = 0;
        while (!tabs[j].get(*w)) ++j;
        std::vector<int> wit{g, gt.kids[j], gt.kids[i]};
        for (bool b : tabs[i].row_values(*w)) wit.push_back(b);
        r.fail("determinism",
               "or-gate " + std::to_string(g) + ": inputs " + std::to_string(gt.kids[j]) + " and " +
                   std::to_string(gt.kids[i]) + " overlap at " + tabs[i].row_string(*w),
               std::move(wit));
        break;
      }
      acc = acc | tabs[i];
    }
  }
  return r;
}

Circuit normalize(const Circuit& c) {
  Circuit out;
  out.vars = c.vars;
  std::vector<GateId> map(c.size(), -1);
  GateId consts[2] = {-1, -1};
  auto cst = [&](bool v) {
    if (consts[v] < 0) consts[v] = out.add_const(v);
    return consts[v];
  };
  auto is_const = [&](GateId m, bool v) {
    return out.gates[m].kind == GateKind::Const && out.gates[m].value == v;
  };
  for (GateId g : topo_order(c)) {
    const Gate& gt = c.gates[g];
    switch (gt.kind) {
      case GateKind::Const: map[g] = cst(gt.value); break;
      case GateKind::Lit: map[g] = out.add_lit(gt.var, gt.value); break;
      case GateKind::And: {
        std::vector<GateId> keep;
        bool zero = false;
        for (GateId k : gt.kids) {
          GateId m = map[k];
          if (is_const(m, false)) zero = true;
          else if (!is_const(m, true)) keep.push_back(m);
        }
        if (zero) map[g] = cst(false);
        else if (keep.empty()) map[g] = cst(true);
        else if (keep.size() == 1) map[g] = keep[0];
        else map[g] = out.add_and(keep[0], keep[1]);
        break;
      }
      case GateKind::Or: {
        std::vector<GateId> keep;
        bool one = false;
        for (GateId k : gt.kids) {
          GateId m = map[k];
          if (is_const(m, true)) one = true;
          else if (!is_const(m, false)) keep.push_back(m);
        }
        if (one) map[g] = cst(true);
        else if (keep.empty()) map[g] = cst(false);
        else map[g] = out.add_or(std::move(keep));
        break;
      }
    }
  }
  out.root = c.root >= 0 ? map[c.root] : -1;
  return gc(out);
}

bool has_constant_inputs(const Circuit& c) {
  for (GateId g : topo_order(c))
    for (GateId k : c.gates[g].kids)
      if (c.gates[k].kind == GateKind::Const) return true;
  return false;
}

namespace {

uint64_t sat_add(uint64_t x, uint64_t y) {
  uint64_t r = x + y;
  return r < x ? std::numeric_limits<uint64_t>::max() : r;
}

uint64_t sat_mul(uint64_t x, uint64_t y) {
  if (x == 0 || y == 0) return 0;
  if (x > std::numeric_limits<uint64_t>::max() / y) return std::numeric_limits<uint64_t>::max();
  return x * y;
}

bool lit_matches(const Circuit& c, const Gate& gt, const Assignment& a) {
  if (gt.var < 0 || gt.var >= static_cast<VarId>(a.size()) || a[gt.var] < 0)
    throw Error(ErrorCode::VarUnbound, "assignment does not bind " + c.vars[gt.var]);
  return (a[gt.var] != 0) == gt.value;
}

}  // namespace

uint64_t count_1certificates(const Circuit& c, const Assignment& a) {
  if (has_constant_inputs(c)) throw Error(ErrorCode::ConstInput, "normalize the circuit before counting certificates");
  std::vector<uint64_t> cnt(c.size(), 0);
  for (GateId g : topo_order(c)) {
    const Gate& gt = c.gates[g];
    switch (gt.kind) {
      case GateKind::Const: cnt[g] = gt.value; break;
      case GateKind::Lit: cnt[g] = lit_matches(c, gt, a); break;
      case GateKind::And:
        cnt[g] = 1;
        for (GateId k : gt.kids) cnt[g] = sat_mul(cnt[g], cnt[k]);
        break;
      case GateKind::Or:
        for (GateId k : gt.kids) cnt[g] = sat_add(cnt[g], cnt[k]);
        break;
    }
  }
  return c.root >= 0 ? cnt[c.root] : 0;
}

std::vector<std::vector<GateId>> list_1certificates(const Circuit& c, const Assignment& a, size_t limit) {
  if (has_constant_inputs(c)) throw Error(ErrorCode::ConstInput, "normalize the circuit before listing certificates");
  using Cert = std::vector<GateId>;
  std::map<GateId, std::vector<Cert>> memo;
  auto merge = [](const Cert& x, const Cert& y) {
    Cert z;
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(z));
    return z;
  };
  for (GateId g : topo_order(c)) {
    const Gate& gt = c.gates[g];
    std::vector<Cert> out;
    switch (gt.kind) {
      case GateKind::Const:
        if (gt.value) out.push_back({g});
        break;
      case GateKind::Lit:
        if (lit_matches(c, gt, a)) out.push_back({g});
        break;
      case GateKind::And: {
        out.push_back({g});
        for (GateId k : gt.kids) {
          std::vector<Cert> next;
          for (const auto& x : out)
            for (const auto& y : memo[k]) {
              if (next.size() >= limit) break;
              next.push_back(merge(x, y));
            }
          out = std::move(next);
        }
        break;
      }
      case GateKind::Or:
        for (GateId k : gt.kids)
          for (const auto& y : memo[k]) {
            if (out.size() >= limit) break;
            out.push_back(merge({g}, y));
          }
        break;
    }
    memo[g] = std::move(out);
  }
  return c.root >= 0 ? memo[c.root] : std::vector<Cert>{};
}

}  // namespace ddk
