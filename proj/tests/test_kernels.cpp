#include <doctest.h>

#include <random>
#include <vector>

#include "ddk/kernels.hpp"

using namespace ddk::kern;

namespace {

std::vector<uint64_t> words(size_t n, std::mt19937_64& rng) {
  std::vector<uint64_t> w(n);
  for (auto& x : w) x = rng();
  return w;
}

void compare_sets(const KernelSet& a, const KernelSet& b) {
  std::mt19937_64 rng(7);
  // odd lengths hit the scalar tails of the vector loops
  for (size_t n : {0, 1, 3, 4, 5, 7, 8, 17, 64, 129, 1000}) {
    auto x = words(n, rng), y = words(n, rng), z = words(n, rng);
    std::vector<uint64_t> ra(n), rb(n);
    a.and_words(ra.data(), x.data(), y.data(), n);
    b.and_words(rb.data(), x.data(), y.data(), n);
    CHECK(ra == rb);
    a.or_words(ra.data(), x.data(), y.data(), n);
    b.or_words(rb.data(), x.data(), y.data(), n);
    CHECK(ra == rb);
    a.andnot_words(ra.data(), x.data(), y.data(), n);
    b.andnot_words(rb.data(), x.data(), y.data(), n);
    CHECK(ra == rb);
    a.xor_words(ra.data(), x.data(), y.data(), n);
    b.xor_words(rb.data(), x.data(), y.data(), n);
    CHECK(ra == rb);
    a.not_words(ra.data(), x.data(), n);
    b.not_words(rb.data(), x.data(), n);
    CHECK(ra == rb);
    a.select_words(ra.data(), x.data(), y.data(), z.data(), n);
    b.select_words(rb.data(), x.data(), y.data(), z.data(), n);
    CHECK(ra == rb);
    CHECK(a.popcount_words(x.data(), n) == b.popcount_words(x.data(), n));
    CHECK(a.is_zero_words(x.data(), n) == b.is_zero_words(x.data(), n));
    std::vector<uint64_t> zeros(n, 0);
    CHECK(a.is_zero_words(zeros.data(), n) == b.is_zero_words(zeros.data(), n));
    CHECK(a.first_set_words(zeros.data(), n) == b.first_set_words(zeros.data(), n));
    if (n) {
      zeros[n - 1] = uint64_t{1} << 13;
      CHECK(a.first_set_words(zeros.data(), n) == b.first_set_words(zeros.data(), n));
      CHECK(a.first_set_words(zeros.data(), n) == static_cast<int64_t>((n - 1) * 64 + 13));
    }
    // aliasing destination
    auto xa = x, xb = x;
    a.and_words(xa.data(), xa.data(), y.data(), n);
    b.and_words(xb.data(), xb.data(), y.data(), n);
    CHECK(xa == xb);
  }
}

}  // namespace

TEST_CASE("scalar kernels follow the plain definitions") {
  const auto& s = scalar_kernels();
  uint64_t x = 0xF0F0, y = 0xFF00, z = 0x0FF0, r = 0;
  s.select_words(&r, &x, &y, &z, 1);
  CHECK(r == ((~x & y) | (x & z)));
  s.andnot_words(&r, &y, &x, 1);
  CHECK(r == (y & ~x));
  CHECK(s.popcount_words(&x, 1) == 8);
  CHECK(s.first_set_words(&x, 1) == 4);
}

TEST_CASE("vector kernels agree with the scalar reference") {
  const KernelSet* v = avx2_kernels();
  if (!v) {
    MESSAGE("CPU without AVX2; comparing the scalar set with itself");
    v = &scalar_kernels();
  }
  compare_sets(scalar_kernels(), *v);
  compare_sets(scalar_kernels(), kernels());
}
