#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ddk/bench.hpp"
#include "ddk/obdd2sdd.hpp"

using namespace ddk;
using namespace ddk::bench;

TEST_CASE("pipeline names") {
  for (auto p : {Pipeline::Obdd2Sdd, Pipeline::Sdnnf2Nobdd, Pipeline::Kobdd2Uobdd}) CHECK(parse_pipeline(pipeline_name(p)) == p);
  CHECK_FALSE(parse_pipeline("fast"));
}

TEST_CASE("cells respect their bounds") {
  for (auto p : {Pipeline::Obdd2Sdd, Pipeline::Sdnnf2Nobdd, Pipeline::Kobdd2Uobdd}) {
    auto r = run_cell(funcgen::Family::Hwb, 8, p);
    CAPTURE(pipeline_name(p));
    CHECK(r.family == "hwb");
    CHECK(r.n == 8);
    CHECK(r.pipeline == pipeline_name(p));
    CHECK(r.input_size > 0);
    CHECK(r.output_size > 0);
    CHECK(r.within_bound());
    CHECK(r.elapsed_ms >= 0);
  }
  auto o = run_cell(funcgen::Family::Ws, 6, Pipeline::Obdd2Sdd);
  CHECK(o.bound == static_cast<long double>(obdd2sdd::size_bound(o.input_size)));
  auto k = run_cell(funcgen::Family::Ws, 6, Pipeline::Kobdd2Uobdd);
  CHECK(k.bound == 4.0L * std::pow(static_cast<long double>(k.input_size), 3));
}

TEST_CASE("parallel run keeps input order and matches serial cells") {
  std::vector<int> ns = {8, 4, 6, 5};
  auto rows = run(funcgen::Family::Hwb, ns, Pipeline::Obdd2Sdd, 3);
  REQUIRE(rows.size() == ns.size());
  for (size_t i = 0; i < ns.size(); ++i) {
    CHECK(rows[i].n == ns[i]);
    auto s = run_cell(funcgen::Family::Hwb, ns[i], Pipeline::Obdd2Sdd);
    CHECK(rows[i].output_size == s.output_size);
    CHECK(rows[i].input_size == s.input_size);
  }
}

TEST_CASE("csv layout") {
  Row r;
  r.family = "ws";
  r.n = 5;
  r.pipeline = "obdd2sdd";
  r.input_size = 10;
  r.output_size = 20;
  r.bound = 230;
  r.elapsed_ms = 1.5;
  std::ostringstream out;
  write_csv(out, {r});
  std::string s = out.str();
  CHECK(s.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(s.find("\nws,5,obdd2sdd,10,20,230,") != std::string::npos);
  CHECK(format_bound(1e30L).find('e') != std::string::npos);
  CHECK(format_bound(42.0L) == "42");
}
