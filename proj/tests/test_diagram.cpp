#include <doctest.h>

#include <bit>
#include <fstream>

#include "ddk/builder.hpp"
#include "ddk/funcgen.hpp"
#include "ddk/io.hpp"
#include "support/support.hpp"

using namespace ddk;
using support::brute_table;

namespace {

Diagram fixture(const char* name) { return io::load_ddf(std::string(DDK_FIXTURES) + "/" + name); }

Diagram single_sink(bool v) {
  Diagram d;
  d.root = d.add_sink(v);
  d.cls = DiagramClass::Obdd;
  return d;
}

Diagram literal(const std::vector<std::string>& vars, VarId v) {
  Diagram d;
  d.vars = vars;
  for (size_t i = 0; i < vars.size(); ++i) d.order.push_back(static_cast<VarId>(i));
  NodeId z = d.add_sink(false), o = d.add_sink(true);
  d.root = d.add_decision(v, z, o);
  d.cls = DiagramClass::Obdd;
  return d;
}

bool has_clause(const Report& r, const std::string& c) {
  for (const auto& v : r.violations)
    if (v.clause == c) return true;
  return false;
}

}  // namespace

TEST_CASE("eval on the figure fixtures") {
  auto mux = fixture("fig2_mux4.ddf");
  auto a = make_assignment(mux, {{"a1", true}, {"a0", false}, {"x2", true}, {"x0", false}, {"x1", false}, {"x3", false}});
  CHECK(eval(mux, a));
  a[mux.find_var("x2")] = 0;
  CHECK_FALSE(eval(mux, a));
  CHECK_FALSE(eval(single_sink(false), {}));

  auto hwb = funcgen::gen_family(funcgen::make_params(funcgen::Family::Hwb, 4));
  CHECK_FALSE(eval(hwb, make_assignment(hwb, {{"x1", 1}, {"x2", 1}, {"x3", 0}, {"x4", 1}})));

  Assignment partial(mux.vars.size(), -1);
  CHECK_THROWS_AS(eval(mux, partial), Error);
}

TEST_CASE("accepting path counts") {
  auto f = fixture("fig7_f.ddf");
  CHECK(count_accepting_paths(f, make_assignment(f, {{"a", 1}, {"b", 0}, {"c", 0}})) == 1);
  // two identical chains under one or-node
  Diagram d;
  d.vars = {"x"};
  d.order = {0};
  NodeId z = d.add_sink(false), o = d.add_sink(true);
  NodeId c1 = d.add_decision(0, z, o), c2 = d.add_decision(0, z, o);
  d.root = d.add_nondet({c1, c2});
  d.cls = DiagramClass::VeeObdd;
  CHECK(count_accepting_paths(d, {1}) == 2);
  CHECK(count_accepting_paths(d, {0}) == 0);
  CHECK(has_clause(check_class_as(d, DiagramClass::Vee1Obdd), "unambiguous"));
}

TEST_CASE("deterministic diagrams have at most one accepting path") {
  auto rng = support::rng_for(11);
  for (int it = 0; it < 20; ++it) {
    int n = 2 + it % 5;
    auto vars = support::names(n);
    auto d = support::obdd_of(support::random_function(n, rng), vars, support::random_order(n, rng));
    for (uint64_t r = 0; r < (uint64_t{1} << n); ++r) CHECK(count_accepting_paths(d, support::bind_row(vars, r, d.vars)) <= 1);
  }
}

TEST_CASE("class checks on the fixtures") {
  CHECK(check_class(fixture("fig2_mux4.ddf")).ok());
  CHECK(check_class(fixture("fig5_hwb4_2obdd.ddf")).ok());
  CHECK(check_class(fixture("fig5_hwb4_fbdd.ddf")).ok());
  CHECK(check_class(fixture("fig7_f.ddf")).ok());
  CHECK(check_class(fixture("fig7_fbar.ddf")).ok());
  CHECK(check_simple(fixture("fig7_f.ddf")).ok());
  CHECK(check_simple(fixture("fig7_fbar.ddf")).ok());
  // the fbdd is not ordered under any single order
  auto fb = fixture("fig5_hwb4_fbdd.ddf");
  fb.order = {0, 1, 2, 3};
  CHECK_FALSE(check_class_as(fb, DiagramClass::Obdd).ok());
}

TEST_CASE("ordering violation is reported with a witness") {
  Diagram d;
  d.vars = {"x1", "x2"};
  d.order = {0, 1};
  NodeId z = d.add_sink(false), o = d.add_sink(true);
  NodeId x1 = d.add_decision(0, z, o);
  d.root = d.add_decision(1, z, x1);
  d.cls = DiagramClass::Obdd;
  auto r = check_class(d);
  REQUIRE_FALSE(r.ok());
  CHECK(has_clause(r, "ordering"));
  CHECK(r.violations[0].witness.size() >= 2);
}

TEST_CASE("read-once violation for fbdd") {
  Diagram d;
  d.vars = {"x"};
  NodeId z = d.add_sink(false), o = d.add_sink(true);
  NodeId in = d.add_decision(0, z, o);
  d.root = d.add_decision(0, z, in);
  d.cls = DiagramClass::Fbdd;
  CHECK(has_clause(check_class(d), "read-once"));
}

TEST_CASE("k-OBDD layering") {
  auto g = fixture("fig5_hwb4_2obdd.ddf");
  CHECK(g.num_layers() == 2);
  auto bad = g;
  bad.layer[g.root] = 2;  // source in the last layer, edges go backwards
  CHECK(has_clause(check_class(bad), "layers"));
}

TEST_CASE("vars_below") {
  auto mux = fixture("fig2_mux4.ddf");
  CHECK(vars_below(mux, mux.root).count() == 6);
  std::map<long, NodeId> ids;
  std::ifstream in(std::string(DDK_FIXTURES) + "/fig7_f.ddf");
  auto f = io::read_ddf(in, &ids);
  auto v5 = vars_below(f, ids.at(5));
  CHECK(v5.count() == 2);
  CHECK(v5.contains(f.find_var("b")));
  CHECK(v5.contains(f.find_var("c")));
  CHECK(vars_below(f, ids.at(4)).empty());
}

TEST_CASE("make_simple") {
  auto f = fixture("fig7_f.ddf");
  auto s = make_simple(f);
  CHECK(s.size() <= f.size());
  CHECK(brute_table(s, {"a", "b", "c"}) == brute_table(f, {"a", "b", "c"}));

  // single-child or-node and an or-node with a bottom child
  Diagram d;
  d.vars = {"x", "y"};
  d.order = {0, 1};
  NodeId z = d.add_sink(false), o = d.add_sink(true);
  NodeId y = d.add_decision(1, z, o);
  NodeId dead = d.add_decision(1, z, z);
  NodeId one = d.add_nondet({y});
  NodeId two = d.add_nondet({one, dead, z});
  d.root = d.add_decision(0, z, two);
  d.cls = DiagramClass::Vee1Obdd;
  auto ds = make_simple(d);
  CHECK(check_simple(ds).ok());
  CHECK(brute_table(ds, {"x", "y"}) == brute_table(d, {"x", "y"}));
  CHECK_FALSE(ds.has_nondet());

  auto rng = support::rng_for(12);
  for (int it = 0; it < 30; ++it) {
    int n = 2 + it % 6;
    auto vars = support::names(n);
    auto base = support::obdd_of(support::random_function(n, rng), vars, support::random_order(n, rng));
    auto nd = support::nondeterminize(base, rng);
    auto simple = make_simple(nd);
    CHECK(check_simple(simple).ok());
    CHECK(brute_table(simple, vars) == brute_table(base, vars));
  }
}

TEST_CASE("make_simple rejects ambiguity") {
  Diagram d;
  d.vars = {"x"};
  d.order = {0};
  NodeId z = d.add_sink(false), o = d.add_sink(true);
  NodeId c1 = d.add_decision(0, z, o), c2 = d.add_decision(0, z, o);
  d.root = d.add_nondet({c1, c2});
  d.cls = DiagramClass::Vee1Obdd;
  try {
    make_simple(d);
    FAIL("expected E_NOT_UNAMBIGUOUS");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnambiguous);
  }
}

TEST_CASE("apply_and") {
  std::vector<std::string> v = {"x1", "x2"};
  auto r = apply_and(literal(v, 0), literal(v, 1), {0, 1});
  CHECK(r.size() == 4);
  CHECK(brute_table(r, v) == std::vector<uint8_t>{0, 0, 0, 1});

  auto e3 = funcgen::gen_exact_count(8, 3), e4 = funcgen::gen_exact_count(8, 4);
  CHECK_FALSE(satisfiable(apply_and(e3, e4, e3.order)));

  Diagram top = single_sink(true);
  top.vars = v;
  top.order = {0, 1};
  auto same = apply_and(literal(v, 1), top, {0, 1});
  CHECK(brute_table(same, v) == brute_table(literal(v, 1), v));

  auto rng = support::rng_for(13);
  for (int it = 0; it < 30; ++it) {
    int n = 1 + it % 7;
    auto vars = support::names(n);
    auto ord = support::random_order(n, rng);
    auto t1 = support::random_function(n, rng), t2 = support::random_function(n, rng);
    auto d1 = support::obdd_of(t1, vars, ord), d2 = support::obdd_of(t2, vars, ord);
    auto a = apply_and(d1, d2, ord);
    auto o = apply_or(d1, d2, ord);
    CHECK(a.size() <= d1.size() * d2.size());
    CHECK(check_class_as(a, DiagramClass::Obdd).ok());
    auto ta = brute_table(a, vars), to = brute_table(o, vars);
    for (size_t r = 0; r < t1.size(); ++r) {
      CHECK(ta[r] == (t1[r] & t2[r]));
      CHECK(to[r] == (t1[r] | t2[r]));
    }
  }

  auto bad = literal(v, 0);
  bad.root = bad.add_decision(1, 0, bad.root);  // x2 above x1
  try {
    apply_and(bad, literal(v, 1), {0, 1});
    FAIL("expected E_ORDER_MISMATCH");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OrderMismatch);
  }
}

TEST_CASE("conjoin_literal") {
  auto e = funcgen::gen_exact_count(4, 2);
  auto c = conjoin_literal(e, e.find_var("x2"), true);
  auto t = brute_table(c, e.vars);
  for (uint64_t r = 0; r < 16; ++r) CHECK(t[r] == (std::popcount(r) == 2 && ((r >> 2) & 1)));

  std::vector<std::string> v = {"x1"};
  Diagram top = single_sink(true), bot = single_sink(false);
  top.vars = bot.vars = v;
  top.order = bot.order = {0};
  CHECK(brute_table(conjoin_literal(top, 0, true), v) == std::vector<uint8_t>{0, 1});
  CHECK(brute_table(conjoin_literal(bot, 0, false), v) == std::vector<uint8_t>{0, 0});

  auto rng = support::rng_for(14);
  for (int it = 0; it < 20; ++it) {
    int n = 1 + it % 6;
    auto vars = support::names(n);
    auto tab = support::random_function(n, rng);
    auto d = support::obdd_of(tab, vars, support::random_order(n, rng));
    VarId x = static_cast<VarId>(rng() % n);
    bool pos = rng() & 1;
    auto out = brute_table(conjoin_literal(d, x, pos), vars);
    for (uint64_t r = 0; r < tab.size(); ++r) {
      bool bit = (r >> (n - 1 - x)) & 1;
      CHECK(out[r] == (tab[r] && bit == pos));
    }
  }
}

TEST_CASE("negate") {
  auto g = fixture("fig5_hwb4_2obdd.ddf");
  auto ng = negate(g);
  CHECK(check_class(ng).ok());
  CHECK(brute_table(ng, g.vars) == support::complement(brute_table(g, g.vars)));
  CHECK(brute_table(negate(ng), g.vars) == brute_table(g, g.vars));
  auto bot = single_sink(false);
  CHECK(eval(negate(bot), {}));
  try {
    negate(fixture("fig7_f.ddf"));
    FAIL("expected E_NOT_DETERMINISTIC");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDeterministic);
  }
}

TEST_CASE("satisfiable") {
  CHECK_FALSE(satisfiable(single_sink(false)));
  CHECK(satisfiable(fixture("fig2_mux4.ddf")));
  CHECK_FALSE(satisfiable(funcgen::gen_exact_count(4, 5)));
  CHECK(satisfiable(fixture("fig5_hwb4_fbdd.ddf")));
}

TEST_CASE("constant nodes") {
  Diagram d;
  d.vars = {"x"};
  d.order = {0};
  NodeId z = d.add_sink(false), o = d.add_sink(true);
  NodeId top = d.add_decision(0, o, o), bot = d.add_decision(0, z, z), lit = d.add_decision(0, z, o);
  d.root = d.add_nondet({top, bot, lit});
  auto c = constant_nodes(d);
  CHECK(c[top] == 1);
  CHECK(c[bot] == -1);
  CHECK(c[lit] == 0);
}

TEST_CASE("reduce and determinize") {
  auto mux = funcgen::gen_family(funcgen::make_params(funcgen::Family::Mux, 4));
  auto det = determinize(mux);
  CHECK_FALSE(det.has_nondet());
  CHECK(det.size() == 9);
  CHECK(brute_table(det, mux.vars) == brute_table(mux, mux.vars));
  auto fig2 = fixture("fig2_mux4.ddf");
  CHECK(reduce(fig2).size() == fig2.size());
}

TEST_CASE("garbage collection keeps only reachable nodes") {
  auto mux = fixture("fig2_mux4.ddf");
  mux.add_decision(0, 0, 1);
  auto g = gc(mux);
  CHECK(g.size() == 9);
  CHECK(g.nodes[0].is_sink());
}
