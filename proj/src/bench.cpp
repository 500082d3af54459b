#include "ddk/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "ddk/obdd2sdd.hpp"
#include "ddk/kobdd2uobdd.hpp"
#include "ddk/sdnnf2nobdd.hpp"

namespace ddk::bench {

const char* pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::Obdd2Sdd: return "obdd2sdd";
    case Pipeline::Sdnnf2Nobdd: return "sdnnf2nobdd";
    case Pipeline::Kobdd2Uobdd: return "kobdd2uobdd";
  }
  return "?";
}

std::optional<Pipeline> parse_pipeline(const std::string& s) {
  for (Pipeline p : {Pipeline::Obdd2Sdd, Pipeline::Sdnnf2Nobdd, Pipeline::Kobdd2Uobdd})
    if (s == pipeline_name(p)) return p;
  return std::nullopt;
}

Row run_cell(funcgen::Family f, int n, Pipeline p) {
  auto fp = funcgen::make_params(f, n);
  Row row;
  row.family = funcgen::family_name(f);
  row.n = n;
  row.pipeline = pipeline_name(p);
  auto t0 = std::chrono::steady_clock::now();
  switch (p) {
    case Pipeline::Obdd2Sdd: {
      auto pos = funcgen::gen_family(fp, false), neg = funcgen::gen_family(fp, true);
      auto r = obdd2sdd::simulate(pos, neg);
      row.input_size = r.n_input;
      row.output_size = r.circuit.size();
      row.bound = static_cast<long double>(obdd2sdd::size_bound(r.n_input));
      break;
    }
    case Pipeline::Sdnnf2Nobdd: {
      auto pos = funcgen::gen_family(fp, false), neg = funcgen::gen_family(fp, true);
      auto s = obdd2sdd::simulate(pos, neg);
      Circuit c = normalize(s.circuit);
      auto r = sdnnf2nobdd::simulate(c, s.vtree);
      row.input_size = r.n_lowered;
      row.output_size = r.diagram.size();
      row.bound = r.bound();
      break;
    }
    case Pipeline::Kobdd2Uobdd: {
      auto g = funcgen::gen_two_obdd(fp);
      auto r = kobdd2uobdd::simulate(g);
      row.input_size = g.size();
      row.output_size = r.diagram.size();
      row.bound = r.bound();
      break;
    }
  }
  row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::vector<Row> run(funcgen::Family f, const std::vector<int>& ns, Pipeline p, unsigned threads) {
  std::vector<Row> rows(ns.size());
  std::vector<std::exception_ptr> errs(ns.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < ns.size();) {
      try {
        rows[i] = run_cell(f, ns[i], p);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ns.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string format_bound(long double b) {
  char buf[64];
  if (b < 9.0e18L)
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(std::llround(static_cast<double>(b))));
  else
    std::snprintf(buf, sizeof buf, "%.6Le", b);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  out << kCsvHeader << "\n";
  char ms[32];
  for (const auto& r : rows) {
    std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
    out << r.family << ',' << r.n << ',' << r.pipeline << ',' << r.input_size << ',' << r.output_size << ','
        << format_bound(r.bound) << ',' << ms << "\n";
  }
}

}  // namespace ddk::bench
