#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "ddk/bench.hpp"
#include "ddk/builder.hpp"
#include "ddk/dot.hpp"
#include "ddk/funcgen.hpp"
#include "ddk/io.hpp"
#include "ddk/kobdd2uobdd.hpp"
#include "ddk/obdd2sdd.hpp"
#include "ddk/oracle.hpp"
#include "ddk/sdnnf2nobdd.hpp"

using namespace ddk;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

enum class Kind { Ddf, Nnf, Vtree };

Kind kind_of(const std::string& path) {
  if (ends_with(path, ".ddf")) return Kind::Ddf;
  if (ends_with(path, ".nnf")) return Kind::Nnf;
  if (ends_with(path, ".vt")) return Kind::Vtree;
  throw UsageError("cannot tell the format of " + path + " (expected .ddf, .nnf or .vt)");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    io::save(path, text);
}

json report_json(const Report& r) {
  json j;
  j["ok"] = r.ok();
  j["violations"] = json::array();
  for (const auto& v : r.violations) j["violations"].push_back({{"clause", v.clause}, {"detail", v.detail}, {"witness", v.witness}});
  j["unchecked"] = r.unchecked;
  return j;
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::stringstream ss(r);
    std::string t;
    while (std::getline(ss, t, ',')) {
      if (!t.empty()) out.push_back(t);
    }
  }
  return out;
}

// --- gen ---------------------------------------------------------------

struct GenOpts {
  std::string family, out = "-";
  int n = 0;
  bool neg = false, two = false, obdd = false;
};

int cmd_gen(const GenOpts& o) {
  auto f = funcgen::parse_family(o.family);
  if (!f) throw UsageError("unknown family " + o.family);
  auto fp = funcgen::make_params(*f, o.n);
  Diagram d;
  if (o.two) {
    d = funcgen::gen_two_obdd(fp);
    if (o.neg) d = negate(d);
  } else {
    d = funcgen::gen_family(fp, o.neg);
    if (o.obdd) d = determinize(d);
  }
  emit(o.out, io::to_ddf(d));
  return 0;
}

// --- transform ---------------------------------------------------------

struct O2SOpts {
  std::string f, negf, out = "-", vtree_out;
  bool skip = false;
};

int cmd_obdd2sdd(const O2SOpts& o) {
  auto f = io::load_ddf(o.f), fbar = io::load_ddf(o.negf);
  obdd2sdd::Options opt;
  opt.check_complement = !o.skip;
  auto r = obdd2sdd::simulate(f, fbar, opt);
  if (!o.skip && !r.complement_checked)
    std::cerr << "warning: complement precondition not checked beyond the exhaustive limit\n";
  emit(o.out, io::to_nnf(r.circuit));
  if (!o.vtree_out.empty()) io::save(o.vtree_out, io::to_vtree(r.vtree));
  return 0;
}

struct S2NOpts {
  std::string in, vtree, out = "-", emit_order;
  bool keep = false;
};

int cmd_sdnnf2nobdd(const S2NOpts& o) {
  auto c = normalize(io::load_nnf(o.in));
  auto t = io::load_vtree(o.vtree);
  auto r = sdnnf2nobdd::simulate(c, t);
  emit(o.out, io::to_ddf(o.keep ? r.raw : r.diagram));
  if (!o.emit_order.empty()) {
    std::string s;
    for (size_t i = 0; i < r.order.size(); ++i) s += (i ? " " : "") + r.order[i];
    io::save(o.emit_order, s + "\n");
  }
  return 0;
}

struct K2UOpts {
  std::string in, out = "-";
  int max_k = 4;
};

int cmd_kobdd2uobdd(const K2UOpts& o) {
  auto g = io::load_ddf(o.in);
  auto r = kobdd2uobdd::simulate(g, o.max_k);
  emit(o.out, io::to_ddf(r.diagram));
  return 0;
}

// --- convert -----------------------------------------------------------

struct ConvOpts {
  std::string in, out = "-", vtree, vtree_out, op;
};

int cmd_convert(const ConvOpts& o) {
  Kind ki = kind_of(o.in);
  Kind ko = o.out == "-" ? ki : kind_of(o.out);
  if (ki == Kind::Ddf && ko == Kind::Ddf) {
    Diagram d = io::load_ddf(o.in);
    if (o.op == "simple")
      d = make_simple(d);
    else if (o.op == "reduce")
      d = reduce(d);
    else if (o.op == "determinize")
      d = determinize(d);
    else if (o.op == "negate")
      d = negate(d);
    else if (!o.op.empty())
      throw UsageError("unknown --op " + o.op);
    emit(o.out, io::to_ddf(d));
    return 0;
  }
  if (!o.op.empty()) throw UsageError("--op applies to .ddf -> .ddf only");
  if (ki == Kind::Ddf && ko == Kind::Nnf) {
    auto r = obdd_to_sdd_rightlinear(io::load_ddf(o.in));
    emit(o.out, io::to_nnf(r.circuit));
    if (!o.vtree_out.empty()) io::save(o.vtree_out, io::to_vtree(r.vtree));
    return 0;
  }
  if (ki == Kind::Nnf && ko == Kind::Ddf) {
    if (o.vtree.empty()) throw UsageError("--vtree is required for .nnf -> .ddf");
    emit(o.out, io::to_ddf(sdd_linear_to_uobdd(io::load_nnf(o.in), io::load_vtree(o.vtree))));
    return 0;
  }
  if (ki == Kind::Nnf && ko == Kind::Nnf) {
    emit(o.out, io::to_nnf(io::load_nnf(o.in)));
    return 0;
  }
  if (ki == Kind::Vtree && ko == Kind::Vtree) {
    emit(o.out, io::to_vtree(io::load_vtree(o.in)));
    return 0;
  }
  throw UsageError("unsupported conversion");
}

// --- validate ----------------------------------------------------------

struct ValOpts {
  std::string in, as, vtree;
  bool simple = false, sdd = false;
};

int cmd_validate(const ValOpts& o) {
  json j;
  j["file"] = o.in;
  Report all;
  switch (kind_of(o.in)) {
    case Kind::Ddf: {
      auto d = io::load_ddf(o.in);
      DiagramClass cls = d.cls;
      if (!o.as.empty()) {
        auto c = parse_class(o.as);
        if (!c) throw UsageError("unknown class " + o.as);
        cls = *c;
      }
      j["class"] = class_name(cls);
      auto r = check_class_as(d, cls);
      j["class_check"] = report_json(r);
      all.merge(r);
      if (o.simple) {
        auto s = check_simple(d);
        j["simple"] = report_json(s);
        all.merge(s);
      }
      break;
    }
    case Kind::Nnf: {
      auto c = io::load_nnf(o.in);
      auto dec = check_decomposable(c);
      j["decomposable"] = report_json(dec);
      all.merge(dec);
      auto det = check_deterministic(c);
      j["deterministic"] = report_json(det);
      all.merge(det);
      if (!o.vtree.empty()) {
        auto t = io::load_vtree(o.vtree);
        auto vt = check_vtree(t);
        j["vtree"] = report_json(vt);
        all.merge(vt);
        if (vt.ok()) {
          auto rr = check_respects_vtree(c, t);
          j["respects_vtree"] = report_json(rr.report);
          all.merge(rr.report);
          if (o.sdd) {
            auto s = check_sdd(c, t);
            j["sdd"] = report_json(s.report);
            all.merge(s.report);
          }
        }
      } else if (o.sdd) {
        throw UsageError("--sdd needs --vtree");
      }
      break;
    }
    case Kind::Vtree: {
      auto r = check_vtree(io::load_vtree(o.in));
      j["vtree"] = report_json(r);
      all.merge(r);
      break;
    }
  }
  j["ok"] = all.ok();
  std::cout << j.dump(2) << "\n";
  return all.ok() ? 0 : 1;
}

// --- equiv -------------------------------------------------------------

struct EqOpts {
  std::string a, b;
  bool complement = false;
  std::vector<std::string> vars;
};

struct Loaded {
  std::optional<Diagram> d;
  std::optional<Circuit> c;
  std::vector<std::string> vars() const { return d ? table_vars(*d) : c->vars; }
  TruthTable table(const std::vector<std::string>& v) const { return d ? table_of(*d, v) : table_of(*c, v); }
};

Loaded load_any(const std::string& path) {
  Loaded l;
  switch (kind_of(path)) {
    case Kind::Ddf: l.d = io::load_ddf(path); break;
    case Kind::Nnf: l.c = io::load_nnf(path); break;
    case Kind::Vtree: throw UsageError(path + " is a vtree, not a function");
  }
  return l;
}

int cmd_equiv(const EqOpts& o) {
  auto a = load_any(o.a), b = load_any(o.b);
  auto vars = split_list(o.vars);
  if (vars.empty()) {
    vars = a.vars();
    for (const auto& v : b.vars())
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  auto r = equiv(a.table(vars), b.table(vars), o.complement);
  json j;
  j["equal"] = r.equal;
  j["complement"] = o.complement;
  j["vars"] = vars;
  if (r.witness) {
    json w = json::object();
    size_t n = vars.size();
    for (size_t i = 0; i < n; ++i) w[vars[i]] = static_cast<int>((*r.witness >> (n - 1 - i)) & 1);
    j["witness"] = w;
  }
  std::cout << j.dump(2) << "\n";
  return r.equal ? 0 : 1;
}

// --- stats -------------------------------------------------------------

struct StatsOpts {
  std::string in, vtree;
};

int cmd_stats(const StatsOpts& o) {
  json j;
  j["file"] = o.in;
  switch (kind_of(o.in)) {
    case Kind::Ddf: {
      auto d = io::load_ddf(o.in);
      size_t sinks = 0, dec = 0, ors = 0;
      for (const auto& n : d.nodes) (n.is_sink() ? sinks : n.is_decision() ? dec : ors)++;
      j["nodes"] = d.size();
      j["decision"] = dec;
      j["or"] = ors;
      j["sinks"] = sinks;
      j["vars"] = d.vars.size();
      j["layers"] = d.num_layers();
      j["class"] = class_name(d.cls);
      j["class_ok"] = check_class(d).ok();
      j["simple"] = check_simple(d).ok();
      break;
    }
    case Kind::Nnf: {
      auto c = io::load_nnf(o.in);
      size_t cnt[4] = {0, 0, 0, 0};
      for (const auto& g : c.gates) ++cnt[static_cast<int>(g.kind)];
      j["gates"] = c.size();
      j["const"] = cnt[0];
      j["lit"] = cnt[1];
      j["and"] = cnt[2];
      j["or"] = cnt[3];
      j["vars"] = c.vars.size();
      j["decomposable"] = check_decomposable(c).ok();
      j["deterministic"] = check_deterministic(c).ok();
      if (!o.vtree.empty()) {
        auto t = io::load_vtree(o.vtree);
        Circuit nc = normalize(c);
        bool ok = check_respects_vtree(nc, t).report.ok();
        j["respects_vtree"] = ok;
        j["sdd"] = check_sdd(c, t).report.ok();
        if (ok) {
          auto q = sdnnf2nobdd::measure(nc, t);
          j["N"] = q.n_lowered;
          j["M"] = q.m_and;
          j["L"] = q.l_light;
        }
      }
      break;
    }
    case Kind::Vtree: {
      auto t = io::load_vtree(o.in);
      VtreeIndex ix(t);
      j["nodes"] = t.nodes.size();
      j["leaves"] = ix.leaf_order().size();
      j["linear"] = ix.is_linear();
      j["right_linear"] = ix.is_right_linear();
      break;
    }
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

// --- export-dot --------------------------------------------------------

int cmd_dot(const std::string& in, const std::string& out) {
  switch (kind_of(in)) {
    case Kind::Ddf: emit(out, dot::diagram(io::load_ddf(in))); break;
    case Kind::Nnf: emit(out, dot::circuit(io::load_nnf(in))); break;
    case Kind::Vtree: emit(out, dot::vtree(io::load_vtree(in))); break;
  }
  return 0;
}

// --- bench -------------------------------------------------------------

struct BenchOpts {
  std::string family, pipeline = "obdd2sdd", report = "-";
  std::vector<std::string> ns;
  unsigned threads = 0;
};

int cmd_bench(const BenchOpts& o) {
  auto f = funcgen::parse_family(o.family);
  if (!f) throw UsageError("unknown family " + o.family);
  auto p = bench::parse_pipeline(o.pipeline);
  if (!p) throw UsageError("unknown pipeline " + o.pipeline);
  std::vector<int> ns;
  for (const auto& s : split_list(o.ns)) {
    try {
      ns.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw UsageError("bad --ns entry " + s);
    }
  }
  if (ns.empty()) throw UsageError("--ns is empty");
  unsigned th = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  auto rows = bench::run(*f, ns, *p, th);
  std::ostringstream csv;
  bench::write_csv(csv, rows);
  emit(o.report, csv.str());
  bool ok = true;
  for (const auto& r : rows)
    if (!r.within_bound()) {
      ok = false;
      std::cerr << "bound exceeded: " << r.family << " n=" << r.n << "\n";
    }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ddk: decision diagram and circuit transformations"};
  app.require_subcommand(1);
  uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for randomised steps (none of the commands currently draw)");

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "generate a storage-access family");
  g->add_option("--family", gen.family, "mux | hwb | isa | ws")->required();
  g->add_option("--n", gen.n, "input size")->required();
  g->add_flag("--neg", gen.neg, "complement");
  g->add_flag("--two-obdd", gen.two, "two-layer k-OBDD (hwb, ws)");
  g->add_flag("--obdd", gen.obdd, "determinize into a reduced OBDD");
  g->add_option("--out", gen.out, "output .ddf (default stdout)");

  auto* tr = app.add_subcommand("transform", "run a simulation");
  tr->require_subcommand(1);
  O2SOpts o2s;
  auto* t1 = tr->add_subcommand("obdd2sdd", "complementary vee1-OBDD pair -> SDD");
  t1->add_option("--f", o2s.f)->required();
  t1->add_option("--negf", o2s.negf)->required();
  t1->add_option("--out", o2s.out);
  t1->add_option("--vtree-out", o2s.vtree_out);
  t1->add_flag("--skip-complement-check", o2s.skip);
  S2NOpts s2n;
  auto* t2 = tr->add_subcommand("sdnnf2nobdd", "structured DNNF -> vee-OBDD");
  t2->add_option("--in", s2n.in)->required();
  t2->add_option("--vtree", s2n.vtree)->required();
  t2->add_option("--out", s2n.out);
  t2->add_flag("--keep-unlabeled", s2n.keep);
  t2->add_option("--emit-order", s2n.emit_order);
  K2UOpts k2u;
  auto* t3 = tr->add_subcommand("kobdd2uobdd", "k-OBDD -> vee1-OBDD");
  t3->add_option("--in", k2u.in)->required();
  t3->add_option("--out", k2u.out);
  t3->add_option("--max-k", k2u.max_k);

  ConvOpts conv;
  auto* cv = app.add_subcommand("convert", "re-serialise or convert between formats");
  cv->add_option("--in", conv.in)->required();
  cv->add_option("--out", conv.out);
  cv->add_option("--vtree", conv.vtree, "vtree of a linear SDD input");
  cv->add_option("--vtree-out", conv.vtree_out, "vtree of the right-linear SDD output");
  cv->add_option("--op", conv.op, "simple | reduce | determinize | negate (.ddf only)");

  ValOpts val;
  auto* va = app.add_subcommand("validate", "check structural invariants");
  va->add_option("--in", val.in)->required();
  va->add_option("--as", val.as, "class to check a .ddf against");
  va->add_option("--vtree", val.vtree);
  va->add_flag("--simple", val.simple);
  va->add_flag("--sdd", val.sdd);

  EqOpts eq;
  auto* e = app.add_subcommand("equiv", "exhaustive equivalence");
  e->add_option("--a", eq.a)->required();
  e->add_option("--b", eq.b)->required();
  e->add_flag("--complement", eq.complement);
  e->add_option("--vars", eq.vars)->delimiter(',');

  StatsOpts st;
  auto* s = app.add_subcommand("stats", "sizes and class verdicts");
  s->add_option("--in", st.in)->required();
  s->add_option("--vtree", st.vtree);

  std::string dot_in, dot_out = "-";
  auto* dt = app.add_subcommand("export-dot", "Graphviz export");
  dt->add_option("--in", dot_in)->required();
  dt->add_option("--out", dot_out);

  BenchOpts bo;
  auto* b = app.add_subcommand("bench", "size/bound table for a family");
  b->add_option("--family", bo.family)->required();
  b->add_option("--ns", bo.ns)->required()->delimiter(',');
  b->add_option("--pipeline", bo.pipeline);
  b->add_option("--report", bo.report);
  b->add_option("--threads", bo.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*t1) return cmd_obdd2sdd(o2s);
    if (*t2) return cmd_sdnnf2nobdd(s2n);
    if (*t3) return cmd_kobdd2uobdd(k2u);
    if (*cv) return cmd_convert(conv);
    if (*va) return cmd_validate(val);
    if (*e) return cmd_equiv(eq);
    if (*s) return cmd_stats(st);
    if (*dt) return cmd_dot(dot_in, dot_out);
    if (*b) return cmd_bench(bo);
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return 2;
  } catch (const Error& err) {
    std::cerr << err.what() << "\n";
    return err.code() == ErrorCode::Parse || err.code() == ErrorCode::Param ? 2 : 1;
  }
  return 2;
}
