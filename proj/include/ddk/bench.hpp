#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ddk/funcgen.hpp"

namespace ddk::bench {

enum class Pipeline : uint8_t { Obdd2Sdd, Sdnnf2Nobdd, Kobdd2Uobdd };

const char* pipeline_name(Pipeline p);
std::optional<Pipeline> parse_pipeline(const std::string& s);

struct Row {
  std::string family;
  int n = 0;
  std::string pipeline;
  uint64_t input_size = 0;
  uint64_t output_size = 0;
  long double bound = 0;
  double elapsed_ms = 0;
  bool within_bound() const { return static_cast<long double>(output_size) <= bound; }
};

/// One cell: generate the family input and run the pipeline.
///  obdd2sdd    input |f| + |fbar|, bound 2N^2 + 3N
///  sdnnf2nobdd input = normalised obdd2sdd output, bound N (M+1)^L
///  kobdd2uobdd input = two-layer diagram, bound 4 |G|^(2k-1)
Row run_cell(funcgen::Family f, int n, Pipeline p);

/// Cells in parallel on `threads` workers; rows come back in input order.
std::vector<Row> run(funcgen::Family f, const std::vector<int>& ns, Pipeline p, unsigned threads);

constexpr const char* kCsvHeader = "family,n,pipeline,input_size,output_size,bound,elapsed_ms";
void write_csv(std::ostream& out, const std::vector<Row>& rows);
std::string format_bound(long double b);

}  // namespace ddk::bench
