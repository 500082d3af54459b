#include "ddk/truth_table.hpp"

#include <cmath>
#include <cstdlib>

#include "ddk/error.hpp"
#include "ddk/kernels.hpp"

namespace ddk {

int exhaustive_limit() {
  static const int limit = [] {
    if (const char* env = std::getenv("DD_EXHAUSTIVE_LIMIT")) {
      int v = std::atoi(env);
      if (v > 0 && v <= 34) return v;
    }
    return 22;
  }();
  return limit;
}

TruthTable::TruthTable(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (num_vars() > exhaustive_limit())
    throw Error(ErrorCode::TooLarge, std::to_string(num_vars()) + " variables exceed the exhaustive limit");
  size_t rows = size_t{1} << vars_.size();
  words_.assign((rows + 63) / 64, 0);
}

TruthTable TruthTable::from_function(std::vector<std::string> vars,
                                     const std::function<bool(uint64_t)>& f) {
  TruthTable t(std::move(vars));
  for (uint64_t r = 0; r < t.num_rows(); ++r)
    if (f(r)) t.words_[r >> 6] |= uint64_t{1} << (r & 63);
  return t;
}

TruthTable TruthTable::ones(std::vector<std::string> vars) {
  TruthTable t(std::move(vars));
  for (auto& w : t.words_) w = ~uint64_t{0};
  t.clear_tail();
  return t;
}

TruthTable TruthTable::literal(std::vector<std::string> vars, int index, bool positive) {
  int n = static_cast<int>(vars.size());
  int shift = n - 1 - index;
  return from_function(std::move(vars),
                       [&](uint64_t r) { return (((r >> shift) & 1) != 0) == positive; });
}

void TruthTable::set(uint64_t row, bool value) {
  uint64_t bit = uint64_t{1} << (row & 63);
  if (value)
    words_[row >> 6] |= bit;
  else
    words_[row >> 6] &= ~bit;
}

void TruthTable::clear_tail() {
  if (num_rows() < 64) words_[0] &= (uint64_t{1} << num_rows()) - 1;
}

uint64_t TruthTable::count_ones() const {
  return kern::kernels().popcount_words(words_.data(), words_.size());
}

bool TruthTable::is_zero() const { return kern::kernels().is_zero_words(words_.data(), words_.size()); }

bool TruthTable::is_ones() const { return count_ones() == num_rows(); }

std::optional<uint64_t> TruthTable::first_one() const {
  int64_t i = kern::kernels().first_set_words(words_.data(), words_.size());
  if (i < 0) return std::nullopt;
  return static_cast<uint64_t>(i);
}

namespace {
void require_same(const TruthTable& a, const TruthTable& b) {
  if (a.vars() != b.vars()) throw Error(ErrorCode::Param, "truth tables over different variable lists");
}
}  // namespace

TruthTable TruthTable::operator&(const TruthTable& o) const {
  require_same(*this, o);
  TruthTable t = *this;
  kern::kernels().and_words(t.words_.data(), words_.data(), o.words_.data(), words_.size());
  return t;
}

TruthTable TruthTable::operator|(const TruthTable& o) const {
  require_same(*this, o);
  TruthTable t = *this;
  kern::kernels().or_words(t.words_.data(), words_.data(), o.words_.data(), words_.size());
  return t;
}

TruthTable TruthTable::operator^(const TruthTable& o) const {
  require_same(*this, o);
  TruthTable t = *this;
  kern::kernels().xor_words(t.words_.data(), words_.data(), o.words_.data(), words_.size());
  return t;
}

TruthTable TruthTable::operator~() const {
  TruthTable t = *this;
  kern::kernels().not_words(t.words_.data(), words_.data(), words_.size());
  t.clear_tail();
  return t;
}

bool TruthTable::operator==(const TruthTable& o) const { return vars_ == o.vars_ && words_ == o.words_; }

std::vector<bool> TruthTable::row_values(uint64_t row) const {
  int n = num_vars();
  std::vector<bool> out(n);
  for (int j = 0; j < n; ++j) out[j] = (row >> (n - 1 - j)) & 1;
  return out;
}

std::string TruthTable::row_string(uint64_t row) const {
  std::string s;
  auto vals = row_values(row);
  for (int j = 0; j < num_vars(); ++j) {
    if (!s.empty()) s += ' ';
    s += vars_[j] + "=" + (vals[j] ? "1" : "0");
  }
  return s;
}

EquivResult compare_tables(const TruthTable& a, const TruthTable& b) {
  require_same(a, b);
  TruthTable d = a ^ b;
  EquivResult r;
  if (auto w = d.first_one()) {
    r.equal = false;
    r.witness = w;
  }
  return r;
}

PartitionResult partition_check(const std::vector<TruthTable>& tables) {
  PartitionResult r;
  if (tables.empty()) {
    r.ok = false;
    r.clause = "cover";
    r.witness = 0;
    return r;
  }
  for (size_t i = 0; i < tables.size(); ++i) {
    require_same(tables[0], tables[i]);
    if (tables[i].is_zero()) {
      r.ok = false;
      r.clause = "satisfiability";
      r.members = {static_cast<int>(i)};
      return r;
    }
  }
  const auto& k = kern::kernels();
  TruthTable acc(tables[0].vars());
  std::vector<uint64_t> tmp(acc.words().size());
  for (size_t i = 0; i < tables.size(); ++i) {
    const auto& w = tables[i].words();
    k.and_words(tmp.data(), acc.words().data(), w.data(), tmp.size());
    int64_t hit = k.first_set_words(tmp.data(), tmp.size());
    if (hit >= 0) {
      for (size_t j = 0; j < i; ++j) {
        if (tables[j].get(static_cast<uint64_t>(hit))) {
          r.ok = false;
          r.clause = "disjointness";
          r.members = {static_cast<int>(j), static_cast<int>(i)};
          r.witness = static_cast<uint64_t>(hit);
          return r;
        }
      }
    }
    k.or_words(acc.words().data(), acc.words().data(), w.data(), tmp.size());
  }
  TruthTable missing = ~acc;
  if (auto w = missing.first_one()) {
    r.ok = false;
    r.clause = "cover";
    r.witness = w;
  }
  return r;
}

GrowthFit growth_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw Error(ErrorCode::InsufficientPoints, "growth_fit needs at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [n, size] : points) {
    if (n <= 0 || size <= 0) throw Error(ErrorCode::Param, "growth_fit needs positive values");
    double x = std::log(n), y = std::log(size);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = static_cast<double>(points.size());
  GrowthFit g;
  g.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  for (size_t i = 1; i < points.size(); ++i) {
    double steps = std::log2(points[i].first / points[i - 1].first);
    if (steps <= 0) continue;
    double ratio = std::pow(points[i].second / points[i - 1].second, 1.0 / steps);
    g.max_doubling_ratio = std::max(g.max_doubling_ratio, ratio);
  }
  return g;
}

}  // namespace ddk
