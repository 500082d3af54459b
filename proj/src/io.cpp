#include "ddk/io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ddk::io {

namespace {

struct Line {
  int no = 0;
  std::vector<std::string> tok;
};

std::vector<Line> lex(std::istream& in) {
  std::vector<Line> out;
  std::string s;
  int no = 0;
  while (std::getline(in, s)) {
    ++no;
    if (auto h = s.find('#'); h != std::string::npos) s.resize(h);
    std::istringstream ls(s);
    Line l;
    l.no = no;
    std::string t;
    while (ls >> t) l.tok.push_back(t);
    if (!l.tok.empty()) out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(l.no) + ": " + msg);
}

long to_long(const Line& l, const std::string& s) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) fail(l, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(l, "bad integer '" + s + "'");
  }
}

void need(const Line& l, size_t lo, size_t hi = 0) {
  if (l.tok.size() < lo || (hi && l.tok.size() > hi)) fail(l, "wrong number of fields for '" + l.tok[0] + "'");
}

void header(const std::vector<Line>& ls, const char* magic) {
  if (ls.empty()) throw Error(ErrorCode::Parse, std::string("empty input, expected '") + magic + " 1'");
  const Line& h = ls[0];
  if (h.tok.size() != 2 || h.tok[0] != magic || h.tok[1] != "1") fail(h, std::string("expected '") + magic + " 1'");
}

template <class Id>
Id resolve(const std::map<long, Id>& ids, const Line& l, long k) {
  auto it = ids.find(k);
  if (it == ids.end()) fail(l, "unknown id " + std::to_string(k));
  return it->second;
}

std::vector<std::string> derived_ddf_vars(const Diagram& d) {
  std::vector<std::string> v;
  auto add = [&](const std::string& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
  };
  for (VarId x : d.order) add(d.vars[x]);
  for (const auto& n : d.nodes)
    if (n.is_decision()) add(d.vars[n.var]);
  return v;
}

std::vector<std::string> derived_nnf_vars(const Circuit& c) {
  std::vector<std::string> v;
  for (const auto& g : c.gates)
    if (g.kind == GateKind::Lit && std::find(v.begin(), v.end(), c.vars[g.var]) == v.end())
      v.push_back(c.vars[g.var]);
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

Diagram read_ddf(std::istream& in, std::map<long, NodeId>* ids_out) {
  auto ls = lex(in);
  header(ls, "ddf");
  Diagram d;
  bool have_vars = false, have_class = false, have_order = false;
  std::optional<long> root;
  std::map<long, NodeId> ids;
  struct Pending {
    const Line* line;
    std::vector<long> refs;
  };
  std::vector<Pending> pend;
  std::vector<std::pair<const Line*, std::pair<long, int>>> layers;
  std::vector<std::string> order_names;

  for (size_t i = 1; i < ls.size(); ++i) {
    const Line& l = ls[i];
    const std::string& k = l.tok[0];
    if (k == "class") {
      need(l, 2, 2);
      if (have_class) fail(l, "duplicate class");
      auto c = parse_class(l.tok[1]);
      if (!c) fail(l, "unknown class '" + l.tok[1] + "'");
      d.cls = *c;
      have_class = true;
    } else if (k == "vars") {
      if (have_vars || !d.nodes.empty() || have_order) fail(l, "vars must precede order and nodes");
      for (size_t j = 1; j < l.tok.size(); ++j) {
        if (d.find_var(l.tok[j]) >= 0) fail(l, "duplicate variable " + l.tok[j]);
        d.vars.push_back(l.tok[j]);
      }
      have_vars = true;
    } else if (k == "order") {
      if (have_order || !d.nodes.empty()) fail(l, "order must precede nodes");
      have_order = true;
      for (size_t j = 1; j < l.tok.size(); ++j) {
        VarId v = d.find_var(l.tok[j]);
        if (v < 0) {
          if (have_vars) fail(l, "order names undeclared variable " + l.tok[j]);
          v = d.ensure_var(l.tok[j]);
        }
        if (std::find(d.order.begin(), d.order.end(), v) != d.order.end()) fail(l, "variable repeated in order");
        d.order.push_back(v);
      }
    } else if (k == "node") {
      need(l, 3);
      long id = to_long(l, l.tok[1]);
      if (ids.count(id)) fail(l, "duplicate node id " + l.tok[1]);
      ids[id] = static_cast<NodeId>(d.nodes.size());
      Node n;
      Pending p{&l, {}};
      const std::string& kind = l.tok[2];
      if (kind == "sink") {
        need(l, 4, 4);
        if (l.tok[3] != "0" && l.tok[3] != "1") fail(l, "sink value must be 0 or 1");
        n.kind = NodeKind::Sink;
        n.value = l.tok[3] == "1";
      } else if (kind == "decision") {
        need(l, 6, 6);
        VarId v = d.find_var(l.tok[3]);
        if (v < 0) {
          if (have_vars) fail(l, "undeclared variable " + l.tok[3]);
          v = d.ensure_var(l.tok[3]);
        }
        n.kind = NodeKind::Decision;
        n.var = v;
        p.refs = {to_long(l, l.tok[4]), to_long(l, l.tok[5])};
      } else if (kind == "or") {
        n.kind = NodeKind::Nondet;
        for (size_t j = 3; j < l.tok.size(); ++j) p.refs.push_back(to_long(l, l.tok[j]));
      } else {
        fail(l, "unknown node kind '" + kind + "'");
      }
      d.nodes.push_back(std::move(n));
      pend.push_back(std::move(p));
    } else if (k == "root") {
      need(l, 2, 2);
      if (root) fail(l, "duplicate root");
      root = to_long(l, l.tok[1]);
    } else if (k == "layer") {
      need(l, 3, 3);
      long layer = to_long(l, l.tok[2]);
      if (layer < 0) fail(l, "negative layer");
      layers.push_back({&l, {to_long(l, l.tok[1]), static_cast<int>(layer)}});
    } else {
      fail(l, "unknown directive '" + k + "'");
    }
  }
  if (!root) throw Error(ErrorCode::Parse, "missing root");
  for (size_t u = 0; u < d.nodes.size(); ++u) {
    Node& n = d.nodes[u];
    const Pending& p = pend[u];
    if (n.is_decision()) {
      n.lo = resolve(ids, *p.line, p.refs[0]);
      n.hi = resolve(ids, *p.line, p.refs[1]);
    } else {
      for (long r : p.refs) n.kids.push_back(resolve(ids, *p.line, r));
    }
  }
  d.root = resolve(ids, ls[0], *root);
  if (!layers.empty()) {
    d.layer.assign(d.nodes.size(), 0);
    for (auto& [l, nl] : layers) d.layer[resolve(ids, *l, nl.first)] = nl.second;
  }
  topo_order(d);  // rejects cycles
  if (ids_out) *ids_out = std::move(ids);
  return d;
}

void write_ddf(std::ostream& out, const Diagram& d) {
  out << "ddf 1\n";
  out << "class " << class_name(d.cls) << "\n";
  if (derived_ddf_vars(d) != d.vars) {
    out << "vars";
    for (const auto& v : d.vars) out << ' ' << v;
    out << "\n";
  }
  if (!d.order.empty()) {
    out << "order";
    for (VarId v : d.order) out << ' ' << d.vars[v];
    out << "\n";
  }
  for (size_t u = 0; u < d.nodes.size(); ++u) {
    const Node& n = d.nodes[u];
    out << "node " << u << ' ';
    if (n.is_sink()) {
      out << "sink " << (n.value ? 1 : 0);
    } else if (n.is_decision()) {
      out << "decision " << d.vars[n.var] << ' ' << n.lo << ' ' << n.hi;
    } else {
      out << "or";
      for (NodeId c : n.kids) out << ' ' << c;
    }
    out << "\n";
  }
  out << "root " << d.root << "\n";
  for (size_t u = 0; u < d.layer.size(); ++u)
    if (d.layer[u] > 0) out << "layer " << u << ' ' << d.layer[u] << "\n";
}

Circuit read_nnf(std::istream& in, std::map<long, GateId>* ids_out) {
  auto ls = lex(in);
  header(ls, "nnf");
  Circuit c;
  bool have_vars = false;
  std::optional<long> root;
  std::map<long, GateId> ids;
  std::vector<std::pair<const Line*, std::vector<long>>> pend;
  for (size_t i = 1; i < ls.size(); ++i) {
    const Line& l = ls[i];
    const std::string& k = l.tok[0];
    if (k == "vars") {
      if (have_vars || !c.gates.empty()) fail(l, "vars must precede gates");
      for (size_t j = 1; j < l.tok.size(); ++j) {
        if (c.find_var(l.tok[j]) >= 0) fail(l, "duplicate variable " + l.tok[j]);
        c.vars.push_back(l.tok[j]);
      }
      have_vars = true;
    } else if (k == "gate") {
      need(l, 3);
      long id = to_long(l, l.tok[1]);
      if (ids.count(id)) fail(l, "duplicate gate id " + l.tok[1]);
      ids[id] = static_cast<GateId>(c.gates.size());
      Gate g;
      std::vector<long> refs;
      const std::string& kind = l.tok[2];
      if (kind == "const") {
        need(l, 4, 4);
        if (l.tok[3] != "0" && l.tok[3] != "1") fail(l, "constant must be 0 or 1");
        g.kind = GateKind::Const;
        g.value = l.tok[3] == "1";
      } else if (kind == "lit") {
        need(l, 5, 5);
        if (l.tok[4] != "+" && l.tok[4] != "-") fail(l, "literal sign must be + or -");
        VarId v = c.find_var(l.tok[3]);
        if (v < 0) {
          if (have_vars) fail(l, "undeclared variable " + l.tok[3]);
          v = c.ensure_var(l.tok[3]);
        }
        g.kind = GateKind::Lit;
        g.var = v;
        g.value = l.tok[4] == "+";
      } else if (kind == "and") {
        need(l, 5, 5);
        g.kind = GateKind::And;
        refs = {to_long(l, l.tok[3]), to_long(l, l.tok[4])};
      } else if (kind == "or") {
        g.kind = GateKind::Or;
        for (size_t j = 3; j < l.tok.size(); ++j) refs.push_back(to_long(l, l.tok[j]));
      } else {
        fail(l, "unknown gate kind '" + kind + "'");
      }
      c.gates.push_back(std::move(g));
      pend.emplace_back(&l, std::move(refs));
    } else if (k == "root") {
      need(l, 2, 2);
      if (root) fail(l, "duplicate root");
      root = to_long(l, l.tok[1]);
    } else {
      fail(l, "unknown directive '" + k + "'");
    }
  }
  if (!root) throw Error(ErrorCode::Parse, "missing root");
  for (size_t g = 0; g < c.gates.size(); ++g)
    for (long r : pend[g].second) c.gates[g].kids.push_back(resolve(ids, *pend[g].first, r));
  c.root = resolve(ids, ls[0], *root);
  topo_order(c);
  if (ids_out) *ids_out = std::move(ids);
  return c;
}

void write_nnf(std::ostream& out, const Circuit& c) {
  out << "nnf 1\n";
  if (derived_nnf_vars(c) != c.vars) {
    out << "vars";
    for (const auto& v : c.vars) out << ' ' << v;
    out << "\n";
  }
  for (size_t g = 0; g < c.gates.size(); ++g) {
    const Gate& gt = c.gates[g];
    out << "gate " << g << ' ';
    switch (gt.kind) {
      case GateKind::Const: out << "const " << (gt.value ? 1 : 0); break;
      case GateKind::Lit: out << "lit " << c.vars[gt.var] << ' ' << (gt.value ? '+' : '-'); break;
      case GateKind::And:
      case GateKind::Or:
        out << (gt.kind == GateKind::And ? "and" : "or");
        for (GateId k : gt.kids) out << ' ' << k;
        break;
    }
    out << "\n";
  }
  out << "root " << c.root << "\n";
}

Vtree read_vtree(std::istream& in) {
  auto ls = lex(in);
  header(ls, "vtree");
  Vtree t;
  std::optional<long> root;
  std::map<long, int> ids;
  std::vector<std::pair<const Line*, std::pair<long, long>>> pend;
  for (size_t i = 1; i < ls.size(); ++i) {
    const Line& l = ls[i];
    if (l.tok[0] == "node") {
      need(l, 4);
      long id = to_long(l, l.tok[1]);
      if (ids.count(id)) fail(l, "duplicate node id " + l.tok[1]);
      ids[id] = static_cast<int>(t.nodes.size());
      Vtree::VNode n;
      std::pair<long, long> kids{-1, -1};
      if (l.tok[2] == "leaf") {
        need(l, 4, 4);
        n.var = l.tok[3];
      } else if (l.tok[2] == "inner") {
        need(l, 5, 5);
        kids = {to_long(l, l.tok[3]), to_long(l, l.tok[4])};
      } else {
        fail(l, "unknown vtree node kind '" + l.tok[2] + "'");
      }
      t.nodes.push_back(std::move(n));
      pend.emplace_back(&l, kids);
    } else if (l.tok[0] == "root") {
      need(l, 2, 2);
      if (root) fail(l, "duplicate root");
      root = to_long(l, l.tok[1]);
    } else {
      fail(l, "unknown directive '" + l.tok[0] + "'");
    }
  }
  if (!root) throw Error(ErrorCode::Parse, "missing root");
  for (size_t v = 0; v < t.nodes.size(); ++v) {
    auto [a, b] = pend[v].second;
    if (a < 0 && b < 0) continue;
    t.nodes[v].left = resolve(ids, *pend[v].first, a);
    t.nodes[v].right = resolve(ids, *pend[v].first, b);
  }
  t.root = resolve(ids, ls[0], *root);
  return t;
}

void write_vtree(std::ostream& out, const Vtree& t) {
  out << "vtree 1\n";
  for (size_t v = 0; v < t.nodes.size(); ++v) {
    const auto& n = t.nodes[v];
    out << "node " << v << ' ';
    if (n.is_leaf())
      out << "leaf " << n.var;
    else
      out << "inner " << n.left << ' ' << n.right;
    out << "\n";
  }
  out << "root " << t.root << "\n";
}

std::string to_ddf(const Diagram& d) {
  std::ostringstream s;
  write_ddf(s, d);
  return s.str();
}
std::string to_nnf(const Circuit& c) {
  std::ostringstream s;
  write_nnf(s, c);
  return s.str();
}
std::string to_vtree(const Vtree& t) {
  std::ostringstream s;
  write_vtree(s, t);
  return s.str();
}

Diagram parse_ddf(const std::string& text) {
  std::istringstream s(text);
  return read_ddf(s);
}
Circuit parse_nnf(const std::string& text) {
  std::istringstream s(text);
  return read_nnf(s);
}
Vtree parse_vtree(const std::string& text) {
  std::istringstream s(text);
  return read_vtree(s);
}

Diagram load_ddf(const std::string& path) { return parse_ddf(slurp(path)); }
Circuit load_nnf(const std::string& path) { return parse_nnf(slurp(path)); }
Vtree load_vtree(const std::string& path) { return parse_vtree(slurp(path)); }

void save(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Parse, "cannot write " + path);
  f << text;
}

}  // namespace ddk::io
