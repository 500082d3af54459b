#include "ddk/kernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>

namespace ddk::kern {

namespace detail {
const KernelSet* avx2_table();
}

namespace {

void and_scalar(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_scalar(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void andnot_scalar(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

void xor_scalar(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = a[i] ^ b[i];
}

void not_scalar(uint64_t* dst, const uint64_t* a, size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = ~a[i];
}

void select_scalar(uint64_t* dst, const uint64_t* x, const uint64_t* lo, const uint64_t* hi,
                   size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = (~x[i] & lo[i]) | (x[i] & hi[i]);
}

uint64_t popcount_scalar(const uint64_t* a, size_t n) {
  uint64_t c = 0;
  for (size_t i = 0; i < n; ++i) c += std::popcount(a[i]);
  return c;
}

bool is_zero_scalar(const uint64_t* a, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (a[i]) return false;
  return true;
}

int64_t first_set_scalar(const uint64_t* a, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (a[i]) return static_cast<int64_t>(i * 64 + std::countr_zero(a[i]));
  return -1;
}

const KernelSet kScalar{
    "scalar",      and_scalar,      or_scalar,      andnot_scalar, xor_scalar,
    not_scalar,    select_scalar,   popcount_scalar, is_zero_scalar, first_set_scalar,
};

const KernelSet& pick() {
  const char* force = std::getenv("DD_FORCE_SCALAR");
  if (force && std::strcmp(force, "0") != 0) return kScalar;
  if (const KernelSet* k = avx2_kernels()) return *k;
  return kScalar;
}

}  // namespace

const KernelSet& scalar_kernels() { return kScalar; }

const KernelSet* avx2_kernels() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& kernels() {
  static const KernelSet& active = pick();
  return active;
}

}  // namespace ddk::kern
