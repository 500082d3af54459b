#include <doctest.h>

#include <cmath>

#include "ddk/error.hpp"
#include "ddk/truth_table.hpp"

using namespace ddk;

TEST_CASE("row layout puts the first variable on the most significant bit") {
  auto t = TruthTable::literal({"a", "b", "c"}, 0);
  for (uint64_t r = 0; r < 8; ++r) CHECK(t.get(r) == ((r >> 2) & 1));
  auto c = TruthTable::literal({"a", "b", "c"}, 2, false);
  for (uint64_t r = 0; r < 8; ++r) CHECK(c.get(r) == !(r & 1));
  CHECK(t.row_values(5) == std::vector<bool>{true, false, true});
}

TEST_CASE("boolean operators and tails") {
  std::vector<std::string> v = {"a", "b"};
  auto a = TruthTable::literal(v, 0), b = TruthTable::literal(v, 1);
  CHECK((a & b).count_ones() == 1);
  CHECK((a | b).count_ones() == 3);
  CHECK((a ^ b).count_ones() == 2);
  auto na = ~a;
  na.clear_tail();
  CHECK(na.count_ones() == 2);
  CHECK((a | na).is_ones());
  CHECK(TruthTable(v).is_zero());
  CHECK(TruthTable::ones(v).count_ones() == 4);
}

TEST_CASE("larger tables span several words") {
  std::vector<std::string> v;
  for (int i = 0; i < 10; ++i) v.push_back("x" + std::to_string(i));
  auto t = TruthTable::from_function(v, [](uint64_t r) { return r % 3 == 0; });
  CHECK(t.count_ones() == 342);
  CHECK(t.first_one() == uint64_t{0});
  auto u = t;
  u.set(0, false);
  auto eq = compare_tables(t, u);
  CHECK_FALSE(eq.equal);
  CHECK(eq.witness == uint64_t{0});
}

TEST_CASE("partition clauses") {
  std::vector<std::string> v = {"x1"};
  auto x = TruthTable::literal(v, 0), nx = TruthTable::literal(v, 0, false);
  CHECK(partition_check({x, nx}).ok);
  auto only = partition_check({x});
  CHECK_FALSE(only.ok);
  CHECK(only.clause == "cover");
  CHECK(only.witness == uint64_t{0});
  auto dup = partition_check({x, x, nx});
  CHECK(dup.clause == "disjointness");
  auto empty = partition_check({x, nx, TruthTable(v)});
  CHECK(empty.clause == "satisfiability");
}

TEST_CASE("growth fit recovers exponents of synthetic data") {
  std::vector<std::pair<double, double>> sq, cu;
  for (double n : {8.0, 16.0, 32.0, 64.0}) {
    sq.emplace_back(n, 3 * n * n);
    cu.emplace_back(n, 0.5 * n * n * n);
  }
  CHECK(std::abs(growth_fit(sq).slope - 2.0) < 0.01);
  CHECK(std::abs(growth_fit(cu).slope - 3.0) < 0.01);
  CHECK(std::abs(growth_fit(sq).max_doubling_ratio - 4.0) < 1e-9);
  CHECK_THROWS_AS(growth_fit({{4, 1}, {8, 2}}), Error);
}

TEST_CASE("table size limit") {
  std::vector<std::string> v;
  for (int i = 0; i <= exhaustive_limit(); ++i) v.push_back("x" + std::to_string(i));
  try {
    TruthTable t(v);
    FAIL("expected E_TOO_LARGE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}
