#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "ddk/dot.hpp"
#include "ddk/funcgen.hpp"
#include "ddk/io.hpp"
#include "support/support.hpp"

using namespace ddk;
using support::brute_table;

namespace {

std::string fx(const char* name) { return std::string(DDK_FIXTURES) + "/" + name; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Param;
}

}  // namespace

TEST_CASE("ddf fixtures round trip to a fixed point") {
  for (const char* name : {"fig2_mux4.ddf", "fig5_hwb4_2obdd.ddf", "fig5_hwb4_fbdd.ddf", "fig7_f.ddf", "fig7_fbar.ddf"}) {
    CAPTURE(name);
    auto d = io::load_ddf(fx(name));
    auto text = io::to_ddf(d);
    auto d2 = io::parse_ddf(text);
    CHECK(io::to_ddf(d2) == text);
    CHECK(d2.cls == d.cls);
    CHECK(d2.size() == d.size());
    CHECK(d2.layer == d.layer);
    auto vars = d.vars;
    CHECK(brute_table(d2, vars) == brute_table(d, vars));
  }
}

TEST_CASE("sparse ids and forward references are remapped") {
  std::map<long, NodeId> ids;
  std::ifstream in(fx("fig7_f.ddf"));
  auto d = io::read_ddf(in, &ids);
  CHECK(ids.size() == 19);
  CHECK(ids.at(1) == d.root);
  CHECK(d[ids.at(2)].is_decision());
  CHECK(d.vars[d[ids.at(2)].var] == "a");
  CHECK(d[ids.at(5)].is_or());
}

TEST_CASE("nnf and vtree round trip") {
  for (const char* name : {"fig4_mux4.nnf", "fig6_dnnf.nnf"}) {
    auto c = io::load_nnf(fx(name));
    auto text = io::to_nnf(c);
    auto c2 = io::parse_nnf(text);
    CHECK(io::to_nnf(c2) == text);
    CHECK(brute_table(c2, c.vars) == brute_table(c, c.vars));
  }
  for (const char* name : {"fig4_mux4.vt", "fig6.vt"}) {
    auto t = io::load_vtree(fx(name));
    auto text = io::to_vtree(t);
    CHECK(io::to_vtree(io::parse_vtree(text)) == text);
    CHECK(VtreeIndex(io::parse_vtree(text)).leaf_order() == VtreeIndex(t).leaf_order());
  }
}

TEST_CASE("generated diagrams survive serialisation") {
  using namespace funcgen;
  for (auto f : {Family::Mux, Family::Hwb, Family::Isa, Family::Ws}) {
    int n = f == Family::Isa ? 4 : f == Family::Mux ? 4 : 5;
    auto d = gen_family(make_params(f, n));
    auto d2 = io::parse_ddf(io::to_ddf(d));
    CHECK(io::to_ddf(d2) == io::to_ddf(d));
    CHECK(d2.order == d.order);
  }
}

TEST_CASE("malformed input raises a parse error") {
  CHECK(code_of([] { io::parse_ddf("ddf 2\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::parse_ddf("ddf 1\nnode 0 sink 0\nnode 1 decision x 0 7\nroot 1\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::parse_ddf("ddf 1\nnode 0 sink 0\nnode 0 sink 1\nroot 0\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::parse_ddf("ddf 1\nnode 0 banana\nroot 0\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::parse_ddf("ddf 1\nnode 0 sink 0\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::parse_nnf("nnf 1\ngate 0 lit x ?\nroot 0\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { io::parse_vtree("vtree 1\nnode 0 inner 1 2\nroot 0\n"); }) == ErrorCode::Parse);
  try {
    io::parse_ddf("ddf 1\n# c\nnode 0 sink 0\nnode 1 decision x 0 9\nroot 1\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }
}

TEST_CASE("dot export is deterministic and styles edges") {
  auto d = io::load_ddf(fx("fig7_f.ddf"));
  auto a = dot::diagram(d), b = dot::diagram(d);
  CHECK(a == b);
  CHECK(a.rfind("digraph", 0) == 0);
  CHECK(a.find("dashed") != std::string::npos);
  CHECK(a.find("box") != std::string::npos);
  auto c = io::load_nnf(fx("fig6_dnnf.nnf"));
  CHECK(dot::circuit(c) == dot::circuit(c));
  CHECK(dot::vtree(io::load_vtree(fx("fig6.vt"))).rfind("graph vtree", 0) == 0);
}
