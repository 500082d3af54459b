#include "ddk/kernels.hpp"

#include <bit>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define DDK_AVX2 __attribute__((target("avx2")))
#endif

namespace ddk::kern::detail {

#if defined(__x86_64__) || defined(__i386__)

namespace {

DDK_AVX2 inline __m256i load(const uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

DDK_AVX2 inline void store(uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

DDK_AVX2 void and_avx2(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_and_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

DDK_AVX2 void or_avx2(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_or_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

DDK_AVX2 void andnot_avx2(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  size_t i = 0;
  // _mm256_andnot_si256(x, y) computes ~x & y
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_andnot_si256(load(b + i), load(a + i)));
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

DDK_AVX2 void xor_avx2(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_xor_si256(load(a + i), load(b + i)));
  for (; i < n; ++i) dst[i] = a[i] ^ b[i];
}

DDK_AVX2 void not_avx2(uint64_t* dst, const uint64_t* a, size_t n) {
  const __m256i ones = _mm256_set1_epi64x(-1);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, _mm256_xor_si256(load(a + i), ones));
  for (; i < n; ++i) dst[i] = ~a[i];
}

DDK_AVX2 void select_avx2(uint64_t* dst, const uint64_t* x, const uint64_t* lo, const uint64_t* hi,
                          size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i xv = load(x + i);
    store(dst + i, _mm256_or_si256(_mm256_andnot_si256(xv, load(lo + i)),
                                   _mm256_and_si256(xv, load(hi + i))));
  }
  for (; i < n; ++i) dst[i] = (~x[i] & lo[i]) | (x[i] & hi[i]);
}

// nibble lookup popcount, summed per 64-bit lane with sad
DDK_AVX2 uint64_t popcount_avx2(const uint64_t* a, size_t n) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2,
                                       1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = load(a + i);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  uint64_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) c += std::popcount(a[i]);
  return c;
}

DDK_AVX2 bool is_zero_avx2(const uint64_t* a, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = load(a + i);
    if (!_mm256_testz_si256(v, v)) return false;
  }
  for (; i < n; ++i)
    if (a[i]) return false;
  return true;
}

DDK_AVX2 int64_t first_set_avx2(const uint64_t* a, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i v = load(a + i);
    if (!_mm256_testz_si256(v, v)) break;
  }
  for (; i < n; ++i)
    if (a[i]) return static_cast<int64_t>(i * 64 + std::countr_zero(a[i]));
  return -1;
}

const KernelSet kAvx2{
    "avx2",      and_avx2,      or_avx2,      andnot_avx2, xor_avx2,
    not_avx2,    select_avx2,   popcount_avx2, is_zero_avx2, first_set_avx2,
};

}  // namespace

const KernelSet* avx2_table() { return &kAvx2; }

#else

const KernelSet* avx2_table() { return nullptr; }

#endif

}  // namespace ddk::kern::detail
