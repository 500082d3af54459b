#include "ddk/funcgen.hpp"

#include <functional>
#include <map>

#include "ddk/builder.hpp"

namespace ddk::funcgen {

namespace {

bool pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2i(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

std::vector<std::string> xs(int from, int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back("x" + std::to_string(from + i));
  return v;
}

std::vector<VarId> identity(size_t n) {
  std::vector<VarId> o(n);
  for (size_t i = 0; i < n; ++i) o[i] = static_cast<VarId>(i);
  return o;
}

int address_bits(const FamilyParams& fp) {
  return fp.family == Family::Mux ? fp.k : fp.family == Family::Isa ? fp.k - fp.l : 0;
}

// Counting grid over the variables `vs` (in test order): accept weight j.
NodeId exact_count(DiagramBuilder& b, const std::vector<VarId>& vs, int j) {
  int n = static_cast<int>(vs.size());
  std::map<std::pair<int, int>, NodeId> memo;
  std::function<NodeId(int, int)> rec = [&](int i, int c) -> NodeId {
    if (c > j || c + (n - i) < j) return 0;
    if (i == n) return 1;
    auto key = std::make_pair(i, c);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    NodeId r = b.decision(vs[i], rec(i + 1, c), rec(i + 1, c + 1));
    memo.emplace(key, r);
    return r;
  };
  return rec(0, 0);
}

// Residue of sum (index * bit) mod p over x1..xn in order; accept(residue).
NodeId residue_counter(DiagramBuilder& b, int n, int p, const std::vector<uint8_t>& accept) {
  std::map<std::pair<int, int>, NodeId> memo;
  std::function<NodeId(int, int)> rec = [&](int i, int r) -> NodeId {
    if (i == n) return accept[r] ? 1 : 0;
    auto key = std::make_pair(i, r);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    NodeId res = b.decision(i, rec(i + 1, r), rec(i + 1, (r + i + 1) % p));
    memo.emplace(key, res);
    return res;
  };
  return rec(0, 0);
}

int ws_index(int n, int s) { return s >= 1 && s <= n ? s : 1; }

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Mux: return "mux";
    case Family::Hwb: return "hwb";
    case Family::Isa: return "isa";
    case Family::Ws: return "ws";
  }
  return "?";
}

std::optional<Family> parse_family(const std::string& s) {
  for (Family f : {Family::Mux, Family::Hwb, Family::Isa, Family::Ws})
    if (s == family_name(f)) return f;
  return std::nullopt;
}

int smallest_prime_gt(int n) {
  for (int c = std::max(2, n + 1);; ++c) {
    bool prime = true;
    for (int d = 2; d * d <= c; ++d)
      if (c % d == 0) {
        prime = false;
        break;
      }
    if (prime) return c;
  }
}

FamilyParams make_params(Family f, int n) {
  FamilyParams fp;
  fp.family = f;
  fp.n = n;
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::Param, std::string(family_name(f)) + " n=" + std::to_string(n) + ": " + why);
  };
  if (n < 1) bad("n must be positive");
  switch (f) {
    case Family::Mux:
      if (!pow2(n) || n < 2) bad("n must be a power of two >= 2");
      fp.k = log2i(n);
      break;
    case Family::Isa:
      if (!pow2(n) || n < 4) bad("n must be a power of two >= 4");
      fp.k = log2i(n);
      if (!pow2(fp.k)) bad("log2 n must be a power of two");
      fp.l = log2i(fp.k);
      fp.m = n / fp.k;
      break;
    case Family::Hwb: break;
    case Family::Ws: fp.p = smallest_prime_gt(n); break;
  }
  return fp;
}

std::vector<std::string> family_vars(const FamilyParams& fp) {
  if (fp.family == Family::Hwb || fp.family == Family::Ws) return xs(1, fp.n);
  std::vector<std::string> v;
  for (int b = address_bits(fp) - 1; b >= 0; --b) v.push_back("a" + std::to_string(b));
  auto d = xs(0, fp.n);
  v.insert(v.end(), d.begin(), d.end());
  return v;
}

bool eval_reference(const FamilyParams& fp, const Assignment& a) {
  int n = fp.n;
  if (a.size() != family_vars(fp).size()) throw Error(ErrorCode::Param, "assignment size does not match the family");
  switch (fp.family) {
    case Family::Mux: {
      int addr = 0;
      for (int i = 0; i < fp.k; ++i) addr = 2 * addr + a[i];
      return a[fp.k + addr];
    }
    case Family::Hwb: {
      int w = 0;
      for (int i = 0; i < n; ++i) w += a[i];
      return w > 0 && a[w - 1];
    }
    case Family::Isa: {
      int ab = address_bits(fp);
      int blk = 0;
      for (int i = 0; i < ab; ++i) blk = 2 * blk + a[i];
      int j = 0;
      for (int t = 0; t < fp.k; ++t) j = 2 * j + a[ab + blk * fp.k + t];
      return a[ab + j];
    }
    case Family::Ws: {
      int s = 0;
      for (int i = 0; i < n; ++i)
        if (a[i]) s = (s + i + 1) % fp.p;
      return a[ws_index(n, s) - 1];
    }
  }
  return false;
}

Diagram gen_exact_count(int n, int j, const std::vector<VarId>& order) {
  if (n < 1 || j < 0) throw Error(ErrorCode::Param, "exact count needs n >= 1 and j >= 0");
  auto ord = order.empty() ? identity(n) : order;
  if (static_cast<int>(ord.size()) != n) throw Error(ErrorCode::Param, "order must list every variable");
  DiagramBuilder b(xs(1, n), ord);
  return b.finish(exact_count(b, ord, j), DiagramClass::Obdd);
}

Diagram gen_family(const FamilyParams& fp, bool negated) {
  auto vars = family_vars(fp);
  auto ord = identity(vars.size());
  DiagramBuilder b(vars, ord);
  std::vector<NodeId> branches;
  int n = fp.n;
  bool want = !negated;
  auto with_bit = [&](NodeId g, VarId x) { return b.apply(BoolOp::And, g, b.literal(x, want)); };
  switch (fp.family) {
    case Family::Mux:
      for (int i = 0; i < n; ++i) {
        std::vector<std::pair<VarId, bool>> lits;
        for (int t = 0; t < fp.k; ++t) lits.emplace_back(t, (i >> (fp.k - 1 - t)) & 1);
        lits.emplace_back(fp.k + i, want);
        branches.push_back(b.cube(lits));
      }
      break;
    case Family::Hwb:
      if (negated) branches.push_back(exact_count(b, ord, 0));
      for (int k = 1; k <= n; ++k) branches.push_back(with_bit(exact_count(b, ord, k), k - 1));
      break;
    case Family::Isa: {
      int ab = address_bits(fp);
      for (int i = 0; i < fp.m; ++i)
        for (int j = 0; j < n; ++j) {
          std::map<VarId, bool> lits;
          bool ok = true;
          auto put = [&](VarId v, bool s) {
            auto [it, fresh] = lits.emplace(v, s);
            if (!fresh && it->second != s) ok = false;
          };
          for (int t = 0; t < ab; ++t) put(t, (i >> (ab - 1 - t)) & 1);
          for (int t = 0; t < fp.k; ++t) put(ab + i * fp.k + t, (j >> (fp.k - 1 - t)) & 1);
          put(ab + j, want);
          if (!ok) continue;
          branches.push_back(b.cube({lits.begin(), lits.end()}));
        }
      break;
    }
    case Family::Ws: {
      int p = fp.p;
      auto guard = [&](auto pred) {
        std::vector<uint8_t> acc(p);
        for (int r = 0; r < p; ++r) acc[r] = pred(r);
        return residue_counter(b, n, p, acc);
      };
      for (int i = 1; i <= n; ++i) branches.push_back(with_bit(guard([&](int r) { return r == i; }), i - 1));
      branches.push_back(with_bit(guard([](int r) { return r == 0; }), 0));
      if (p - 1 > n) branches.push_back(with_bit(guard([&](int r) { return r > n; }), 0));
      break;
    }
  }
  // a unary source is not simple: hand back the lone branch
  std::erase(branches, b.sink(false));
  if (branches.size() < 2) return b.finish(branches.empty() ? b.sink(false) : branches[0], DiagramClass::Vee1Obdd);
  return finish_with_source(b, branches, DiagramClass::Vee1Obdd);
}

Diagram gen_two_obdd(const FamilyParams& fp) {
  if (fp.family != Family::Hwb && fp.family != Family::Ws)
    throw Error(ErrorCode::Param, "two-layer generator covers hwb and ws only");
  int n = fp.n;
  Diagram d;
  d.vars = family_vars(fp);
  d.order = identity(n);
  d.cls = DiagramClass::KObdd;
  d.add_sink(false);
  d.add_sink(true);
  d.layer = {0, 0};
  std::map<int, NodeId> tester;
  auto test = [&](int idx) {
    auto it = tester.find(idx);
    if (it != tester.end()) return it->second;
    NodeId u = d.add_decision(idx - 1, 0, 1);
    d.layer.push_back(2);
    tester.emplace(idx, u);
    return u;
  };
  bool hwb = fp.family == Family::Hwb;
  int mod = hwb ? n + 1 : fp.p;
  std::map<std::pair<int, int>, NodeId> memo;
  // state: weight for hwb, residue for ws
  std::function<NodeId(int, int)> rec = [&](int i, int c) -> NodeId {
    if (i == n) {
      if (hwb) return c == 0 ? 0 : test(c);
      return test(ws_index(n, c));
    }
    auto key = std::make_pair(i, c);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    NodeId lo = rec(i + 1, c);
    NodeId hi = rec(i + 1, hwb ? c + 1 : (c + i + 1) % mod);
    NodeId u = d.add_decision(i, lo, hi);
    d.layer.push_back(1);
    memo.emplace(key, u);
    return u;
  };
  d.root = rec(0, 0);
  return gc(d);
}

}  // namespace ddk::funcgen
