#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ddk {

/// Largest variable count handled exhaustively. Default 22, overridden by the
/// DD_EXHAUSTIVE_LIMIT environment variable.
int exhaustive_limit();

/// 2^n bit vector. Row r assigns variable j the bit (r >> (n-1-j)) & 1, so the
/// first listed variable is the most significant one.
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(std::vector<std::string> vars);

  static TruthTable from_function(std::vector<std::string> vars,
                                  const std::function<bool(uint64_t)>& f);
  static TruthTable ones(std::vector<std::string> vars);
  /// Table of a single variable (or its negation).
  static TruthTable literal(std::vector<std::string> vars, int index, bool positive = true);

  int num_vars() const { return static_cast<int>(vars_.size()); }
  uint64_t num_rows() const { return uint64_t{1} << vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }

  bool get(uint64_t row) const { return (words_[row >> 6] >> (row & 63)) & 1; }
  void set(uint64_t row, bool value);

  std::vector<uint64_t>& words() { return words_; }
  const std::vector<uint64_t>& words() const { return words_; }
  /// Zeroes bits past the last row (only matters for n < 6).
  void clear_tail();

  uint64_t count_ones() const;
  bool is_zero() const;
  bool is_ones() const;
  std::optional<uint64_t> first_one() const;

  TruthTable operator&(const TruthTable& o) const;
  TruthTable operator|(const TruthTable& o) const;
  TruthTable operator^(const TruthTable& o) const;
  TruthTable operator~() const;
  bool operator==(const TruthTable& o) const;

  /// Variable values of a row, in list order.
  std::vector<bool> row_values(uint64_t row) const;
  std::string row_string(uint64_t row) const;

 private:
  std::vector<std::string> vars_;
  std::vector<uint64_t> words_;
};

struct EquivResult {
  bool equal = true;
  std::optional<uint64_t> witness;  // first differing row
};

EquivResult compare_tables(const TruthTable& a, const TruthTable& b);

struct PartitionResult {
  bool ok = true;
  std::string clause;  // "satisfiability" | "disjointness" | "cover"
  std::vector<int> members;
  std::optional<uint64_t> witness;
};

/// Satisfiability of each member, pairwise disjointness, cover.
PartitionResult partition_check(const std::vector<TruthTable>& tables);

struct GrowthFit {
  double slope = 0;
  double max_doubling_ratio = 0;
};

/// Least-squares slope of log(size) over log(n), plus the largest
/// size ratio between consecutive points normalised to a doubling of n.
GrowthFit growth_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace ddk
