#include "ddk/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "ddk/kernels.hpp"

namespace ddk {

namespace {

// Straight-line bit program: slot i holds the value of op i.
struct Op {
  enum Kind : uint8_t { C0, C1, Lit, NLit, Sel, And, Or } kind = C0;
  int var = -1;  // index into the table variable list
  int lo = -1, hi = -1;
  std::vector<int> kids;
};

struct Program {
  int nvars = 0;
  std::vector<Op> ops;
};

std::unordered_map<std::string, int> index_of(const std::vector<std::string>& vars) {
  std::unordered_map<std::string, int> ix;
  for (size_t i = 0; i < vars.size(); ++i) ix.emplace(vars[i], static_cast<int>(i));
  return ix;
}

int bind_var(const std::unordered_map<std::string, int>& ix, const std::string& name) {
  auto it = ix.find(name);
  if (it == ix.end()) throw Error(ErrorCode::VarUnbound, "variable " + name + " missing from the table variables");
  return it->second;
}

// Program over the nodes reachable from `roots`; slot[u] gives the op index.
Program compile(const Diagram& d, const std::vector<NodeId>& roots, const std::vector<std::string>& vars,
                std::vector<int>& slot) {
  Program p;
  p.nvars = static_cast<int>(vars.size());
  auto ix = index_of(vars);
  slot.assign(d.size(), -1);
  for (NodeId r : roots) {
    for (NodeId u : topo_order(d, r)) {
      if (slot[u] >= 0) continue;
      const Node& n = d.nodes[u];
      Op op;
      if (n.is_sink()) {
        op.kind = n.value ? Op::C1 : Op::C0;
      } else if (n.is_decision()) {
        op.kind = Op::Sel;
        op.var = bind_var(ix, d.vars[n.var]);
        op.lo = slot[n.lo];
        op.hi = slot[n.hi];
      } else {
        op.kind = Op::Or;
        for (NodeId c : n.kids) op.kids.push_back(slot[c]);
      }
      slot[u] = static_cast<int>(p.ops.size());
      p.ops.push_back(std::move(op));
    }
  }
  return p;
}

Program compile(const Circuit& c, const std::vector<GateId>& roots, const std::vector<std::string>& vars,
                std::vector<int>& slot) {
  Program p;
  p.nvars = static_cast<int>(vars.size());
  auto ix = index_of(vars);
  slot.assign(c.size(), -1);
  for (GateId r : roots) {
    for (GateId g : topo_order(c, r)) {
      if (slot[g] >= 0) continue;
      const Gate& gt = c.gates[g];
      Op op;
      switch (gt.kind) {
        case GateKind::Const: op.kind = gt.value ? Op::C1 : Op::C0; break;
        case GateKind::Lit:
          op.kind = gt.value ? Op::Lit : Op::NLit;
          op.var = bind_var(ix, c.vars[gt.var]);
          break;
        case GateKind::And:
        case GateKind::Or:
          op.kind = gt.kind == GateKind::And ? Op::And : Op::Or;
          for (GateId k : gt.kids) op.kids.push_back(slot[k]);
          break;
      }
      slot[g] = static_cast<int>(p.ops.size());
      p.ops.push_back(std::move(op));
    }
  }
  return p;
}

constexpr uint64_t kPattern[6] = {0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
                                  0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};

// Fills `out` with the bits of variable `j` for words [w0, w0 + B).
void var_words(int nvars, int j, uint64_t w0, size_t B, uint64_t* out) {
  int t = nvars - 1 - j;
  if (t < 6) {
    std::fill(out, out + B, kPattern[t]);
    return;
  }
  for (size_t i = 0; i < B; ++i) out[i] = ((w0 + i) >> (t - 6)) & 1 ? ~uint64_t{0} : 0;
}

constexpr size_t kWordBudget = size_t{1} << 23;

size_t block_words(size_t total_words, size_t slots) {
  size_t b = total_words;
  while (b > 1 && b * slots > kWordBudget) b >>= 1;
  return b;
}

size_t total_words(int nvars) { return nvars >= 6 ? size_t{1} << (nvars - 6) : 1; }

// Evaluates the program and copies the requested slots into tables.
std::vector<TruthTable> run_tables(const Program& p, const std::vector<int>& want, const std::vector<std::string>& vars) {
  std::vector<TruthTable> out;
  for (size_t i = 0; i < want.size(); ++i) out.emplace_back(vars);
  const auto& k = kern::kernels();
  size_t W = total_words(p.nvars);
  size_t B = block_words(W, p.ops.size() + p.nvars);
  std::vector<uint64_t> mem((p.ops.size() + p.nvars) * B);
  auto slot = [&](int i) { return mem.data() + static_cast<size_t>(i) * B; };
  auto var = [&](int j) { return mem.data() + (p.ops.size() + j) * B; };
  for (size_t w0 = 0; w0 < W; w0 += B) {
    for (int j = 0; j < p.nvars; ++j) var_words(p.nvars, j, w0, B, var(j));
    for (size_t i = 0; i < p.ops.size(); ++i) {
      const Op& op = p.ops[i];
      uint64_t* dst = slot(static_cast<int>(i));
      switch (op.kind) {
        case Op::C0: std::fill(dst, dst + B, 0); break;
        case Op::C1: std::fill(dst, dst + B, ~uint64_t{0}); break;
        case Op::Lit: std::copy(var(op.var), var(op.var) + B, dst); break;
        case Op::NLit: k.not_words(dst, var(op.var), B); break;
        case Op::Sel: k.select_words(dst, var(op.var), slot(op.lo), slot(op.hi), B); break;
        case Op::And:
          std::fill(dst, dst + B, ~uint64_t{0});
          for (int c : op.kids) k.and_words(dst, dst, slot(c), B);
          break;
        case Op::Or:
          std::fill(dst, dst + B, 0);
          for (int c : op.kids) k.or_words(dst, dst, slot(c), B);
          break;
      }
    }
    for (size_t i = 0; i < want.size(); ++i) std::copy(slot(want[i]), slot(want[i]) + B, out[i].words().data() + w0);
  }
  for (auto& t : out) t.clear_tail();
  return out;
}

void check_size(size_t n) {
  if (static_cast<int>(n) > exhaustive_limit())
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " variables exceed the exhaustive limit");
}

}  // namespace

std::vector<std::string> table_vars(const Diagram& d) {
  std::vector<std::string> out;
  std::vector<uint8_t> used(d.vars.size(), 0);
  for (VarId v : d.order) {
    out.push_back(d.vars[v]);
    used[v] = 1;
  }
  for (size_t v = 0; v < d.vars.size(); ++v)
    if (!used[v]) out.push_back(d.vars[v]);
  return out;
}

std::vector<TruthTable> node_tables(const Diagram& d, const std::vector<NodeId>& nodes,
                                    const std::vector<std::string>& vars) {
  check_size(vars.size());
  std::vector<int> slot;
  auto p = compile(d, nodes, vars, slot);
  std::vector<int> want;
  for (NodeId u : nodes) want.push_back(slot[u]);
  return run_tables(p, want, vars);
}

std::vector<TruthTable> gate_tables(const Circuit& c, const std::vector<GateId>& gates,
                                    const std::vector<std::string>& vars) {
  check_size(vars.size());
  std::vector<int> slot;
  auto p = compile(c, gates, vars, slot);
  std::vector<int> want;
  for (GateId g : gates) want.push_back(slot[g]);
  return run_tables(p, want, vars);
}

TruthTable table_of(const Diagram& d, const std::vector<std::string>& vars) {
  if (d.root < 0) return TruthTable(vars);
  return node_tables(d, {d.root}, vars)[0];
}

TruthTable table_of(const Diagram& d) { return table_of(d, table_vars(d)); }

TruthTable table_of(const Circuit& c, const std::vector<std::string>& vars) {
  if (c.root < 0) return TruthTable(vars);
  return gate_tables(c, {c.root}, vars)[0];
}

TruthTable table_of(const Circuit& c) { return table_of(c, c.vars); }

AmbiguityResult check_unambiguous(const Diagram& d) {
  AmbiguityResult res;
  if (d.root < 0) return res;
  check_size(d.vars.size());
  std::vector<int> slot;
  auto p = compile(d, {d.root}, d.vars, slot);
  const auto& k = kern::kernels();
  size_t W = total_words(p.nvars);
  size_t S = 2 * p.ops.size() + p.nvars + 1;
  size_t B = block_words(W, S);
  std::vector<uint64_t> mem(S * B);
  // slot 2i = at least one accepting path, 2i+1 = at least two
  auto one = [&](int i) { return mem.data() + static_cast<size_t>(2 * i) * B; };
  auto two = [&](int i) { return mem.data() + static_cast<size_t>(2 * i + 1) * B; };
  auto var = [&](int j) { return mem.data() + (2 * p.ops.size() + j) * B; };
  uint64_t* tmp = mem.data() + (2 * p.ops.size() + p.nvars) * B;
  uint64_t valid = W == 1 && p.nvars < 6 ? (uint64_t{1} << (uint64_t{1} << p.nvars)) - 1 : ~uint64_t{0};
  int root = slot[d.root];
  for (size_t w0 = 0; w0 < W; w0 += B) {
    for (int j = 0; j < p.nvars; ++j) var_words(p.nvars, j, w0, B, var(j));
    for (size_t i = 0; i < p.ops.size(); ++i) {
      const Op& op = p.ops[i];
      int ii = static_cast<int>(i);
      switch (op.kind) {
        case Op::C0:
        case Op::C1:
          std::fill(one(ii), one(ii) + B, op.kind == Op::C1 ? ~uint64_t{0} : 0);
          std::fill(two(ii), two(ii) + B, 0);
          break;
        case Op::Sel:
          k.select_words(one(ii), var(op.var), one(op.lo), one(op.hi), B);
          k.select_words(two(ii), var(op.var), two(op.lo), two(op.hi), B);
          break;
        default:
          std::fill(one(ii), one(ii) + B, 0);
          std::fill(two(ii), two(ii) + B, 0);
          for (int c : op.kids) {
            k.or_words(two(ii), two(ii), two(c), B);
            k.and_words(tmp, one(ii), one(c), B);
            k.or_words(two(ii), two(ii), tmp, B);
            k.or_words(one(ii), one(ii), one(c), B);
          }
      }
    }
    two(root)[0] &= w0 == 0 ? valid : ~uint64_t{0};
    int64_t hit = k.first_set_words(two(root), B);
    if (hit >= 0) {
      res.unambiguous = false;
      res.witness = w0 * 64 + static_cast<uint64_t>(hit);
      return res;
    }
  }
  return res;
}

EquivResult equiv(const TruthTable& a, const TruthTable& b, bool complement) {
  if (a.vars() != b.vars()) throw Error(ErrorCode::Param, "tables over different variable lists");
  if (!complement) return compare_tables(a, b);
  auto nb = ~b;
  nb.clear_tail();
  return compare_tables(a, nb);
}

}  // namespace ddk
