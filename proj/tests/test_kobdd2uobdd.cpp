#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>

#include "ddk/funcgen.hpp"
#include "ddk/io.hpp"
#include "ddk/kobdd2uobdd.hpp"
#include "support/support.hpp"

using namespace ddk;
using support::brute_table;

namespace {

std::string fx(const char* name) { return std::string(DDK_FIXTURES) + "/" + name; }

/// k layers over one random order; each layer may exit into any later layer.
Diagram random_k_obdd(int n, int k, std::mt19937_64& rng, int width = 2) {
  Diagram d;
  d.vars = support::names(n, "x");
  d.order = support::random_order(n, rng);
  d.cls = DiagramClass::KObdd;
  d.add_sink(false);
  d.add_sink(true);
  d.layer = {0, 0};
  std::uniform_int_distribution<int> wd(1, width);
  std::vector<NodeId> later;
  NodeId top = -1;
  for (int layer = k; layer >= 1; --layer) {
    std::vector<NodeId> below = {0, 1};
    std::vector<NodeId> made;
    for (int lvl = n - 1; lvl >= 0; --lvl) {
      std::vector<NodeId> pool = below;
      pool.insert(pool.end(), later.begin(), later.end());
      std::uniform_int_distribution<size_t> ch(0, pool.size() - 1);
      int w = lvl == 0 ? 1 : wd(rng);
      for (int i = 0; i < w; ++i) {
        NodeId lo = pool[ch(rng)], hi = pool[ch(rng)];
        if (lo == hi) hi = lo == 0 ? 1 : 0;
        NodeId u = d.add_decision(d.order[lvl], lo, hi);
        d.layer.push_back(layer);
        below.push_back(u);
        made.push_back(u);
      }
    }
    later.insert(later.end(), made.begin(), made.end());
    top = made.back();
  }
  d.root = top;
  return gc(d);
}

Diagram flip_sinks(Diagram d) {
  for (auto& n : d.nodes)
    if (n.is_sink()) n.value = !n.value;
  return d;
}

void check_output(const Diagram& g, const kobdd2uobdd::Result& r) {
  const Diagram& out = r.diagram;
  CHECK(out.cls == DiagramClass::Vee1Obdd);
  CHECK(check_class(out).ok());
  REQUIRE(out[out.root].kind == NodeKind::Nondet);
  int ors = 0;
  for (const auto& nd : out.nodes) ors += nd.is_or();
  CHECK(ors == 1);
  CHECK(static_cast<long double>(out.size()) <= r.bound());
  auto vars = g.vars;
  auto tg = brute_table(g, vars);
  CHECK(brute_table(out, vars) == tg);
  // exactly one branch accepts each 1-input
  for (uint64_t row = 0; row < tg.size(); ++row) {
    auto a = support::bind_row(vars, row, out.vars);
    int hits = 0;
    for (NodeId k : out[out.root].kids) hits += support::paths(out, a, k) > 0;
    REQUIRE(hits == tg[row]);
    REQUIRE(support::paths(out, a) == tg[row]);
  }
}

}  // namespace

TEST_CASE("k = 1 has one choice and keeps the function") {
  auto rng = support::rng_for(51);
  auto vars = support::names(4, "x");
  auto d = support::obdd_of(support::random_function(4, rng), vars, {0, 1, 2, 3});
  if (d[d.root].is_sink()) return;
  d.cls = DiagramClass::KObdd;
  d.layer.assign(d.size(), 1);
  for (NodeId u = 0; u < static_cast<NodeId>(d.size()); ++u)
    if (d[u].is_sink()) d.layer[u] = 0;
  auto cs = kobdd2uobdd::enumerate_switch_choices(d);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].r() == 1);
  CHECK(cs[0].nodes[0] == d.root);
  auto slices = kobdd2uobdd::layer_slice(d, cs[0]);
  REQUIRE(slices.size() == 1);
  CHECK(brute_table(slices[0], vars) == brute_table(d, vars));
  auto r = kobdd2uobdd::simulate(d);
  CHECK(r.k == 1);
  check_output(d, r);
  CHECK(brute_table(make_simple(r.diagram), vars) == brute_table(d, vars));
}

TEST_CASE("fig5 choices and slices") {
  std::map<long, NodeId> ids;
  std::ifstream in(fx("fig5_hwb4_2obdd.ddf"));
  auto g = io::read_ddf(in, &ids);
  auto cs = kobdd2uobdd::enumerate_switch_choices(g);
  // r = 1 plus one choice per targeted layer-2 node (2, 3, 4)
  REQUIRE(cs.size() == 4);
  CHECK(cs[0].r() == 1);
  std::set<NodeId> entries;
  for (size_t i = 1; i < cs.size(); ++i) {
    CHECK(cs[i].r() == 2);
    CHECK(cs[i].layers == std::vector<int>{1, 2});
    entries.insert(cs[i].nodes[1]);
  }
  CHECK(entries == std::set<NodeId>{ids.at(2), ids.at(3), ids.at(4)});

  // entry at node 3 (tests x2): first slice accepts weight 2, second accepts x2
  for (const auto& c : cs) {
    if (c.r() != 2 || c.nodes[1] != ids.at(3)) continue;
    auto sl = kobdd2uobdd::layer_slice(g, c);
    REQUIRE(sl.size() == 2);
    std::vector<std::string> v = {"x1", "x2", "x3", "x4"};
    auto t0 = brute_table(sl[0], v), t1 = brute_table(sl[1], v);
    for (uint64_t row = 0; row < 16; ++row) {
      CHECK(t0[row] == (std::popcount(row) == 2));
      CHECK(t1[row] == static_cast<bool>(row & 4));
    }
    for (const auto& s : sl) CHECK(s.layer.empty());
  }
}

TEST_CASE("fig5 end to end") {
  auto g = io::load_ddf(fx("fig5_hwb4_2obdd.ddf"));
  auto r = kobdd2uobdd::simulate(g);
  CHECK(r.k == 2);
  CHECK(r.input_size == g.size());
  check_output(g, r);
  CHECK(static_cast<long double>(r.diagram.size()) <= 4.0L * std::pow(static_cast<long double>(g.size()), 3));
  auto fp = funcgen::make_params(funcgen::Family::Hwb, 4);
  auto v = funcgen::family_vars(fp);
  auto t = brute_table(r.diagram, v);
  for (uint64_t row = 0; row < 16; ++row) CHECK(t[row] == funcgen::eval_reference(fp, support::bind_row(v, row, v)));
  auto fbdd = io::load_ddf(fx("fig5_hwb4_fbdd.ddf"));
  CHECK(brute_table(fbdd, v) == t);
}

TEST_CASE("negating the input complements the output") {
  auto g = io::load_ddf(fx("fig5_hwb4_2obdd.ddf"));
  auto r = kobdd2uobdd::simulate(flip_sinks(g));
  check_output(flip_sinks(g), r);
  auto v = g.vars;
  CHECK(brute_table(r.diagram, v) == support::complement(brute_table(g, v)));
}

TEST_CASE("random 2-OBDDs") {
  auto rng = support::rng_for(52);
  for (int it = 0; it < 50; ++it) {
    int n = 2 + it % 9;
    auto g = support::random_two_obdd(n, rng);
    if (g[g.root].is_sink()) continue;
    CAPTURE(it);
    REQUIRE(check_class(g).ok());
    auto cs = kobdd2uobdd::enumerate_switch_choices(g);
    CHECK(cs.size() <= g.size());
    auto r = kobdd2uobdd::simulate(g);
    check_output(g, r);
  }
}

TEST_CASE("random 3-OBDDs respect the choice count") {
  auto rng = support::rng_for(53);
  for (int it = 0; it < 25; ++it) {
    int n = 2 + it % 6;
    auto g = random_k_obdd(n, 3, rng);
    REQUIRE(check_class(g).ok());
    auto cs = kobdd2uobdd::enumerate_switch_choices(g);
    int k = std::max(1, g.num_layers());
    CHECK(static_cast<long double>(cs.size()) <= std::pow(static_cast<long double>(g.size()), k - 1));
    for (const auto& c : cs) {
      CHECK(c.layers[0] == 1);
      for (size_t i = 1; i < c.layers.size(); ++i) CHECK(c.layers[i] > c.layers[i - 1]);
      for (size_t i = 0; i < c.nodes.size(); ++i) CHECK(g.layer[c.nodes[i]] == c.layers[i]);
    }
    auto r = kobdd2uobdd::simulate(g);
    check_output(g, r);
  }
}

TEST_CASE("k above the cap is rejected") {
  auto rng = support::rng_for(54);
  auto g = random_k_obdd(6, 3, rng);
  if (g.num_layers() < 3) return;
  try {
    kobdd2uobdd::simulate(g, 2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KTooLarge);
  }
}
