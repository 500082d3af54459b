#pragma once

#include <cstddef>
#include <cstdint>

namespace ddk::kern {

/// Word-array kernels used by the truth-table oracle. Every operation works on
/// `n` 64-bit words; destinations may alias sources.
struct KernelSet {
  const char* name;
  void (*and_words)(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n);
  void (*or_words)(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n);
  /// dst = a & ~b
  void (*andnot_words)(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n);
  void (*xor_words)(uint64_t* dst, const uint64_t* a, const uint64_t* b, size_t n);
  void (*not_words)(uint64_t* dst, const uint64_t* a, size_t n);
  /// dst = (~x & lo) | (x & hi)
  void (*select_words)(uint64_t* dst, const uint64_t* x, const uint64_t* lo, const uint64_t* hi,
                       size_t n);
  uint64_t (*popcount_words)(const uint64_t* a, size_t n);
  bool (*is_zero_words)(const uint64_t* a, size_t n);
  /// Index of the lowest set bit, or -1.
  int64_t (*first_set_words)(const uint64_t* a, size_t n);
};

const KernelSet& scalar_kernels();

/// AVX2 variants; nullptr when the CPU lacks AVX2.
const KernelSet* avx2_kernels();

/// Dispatched at first use. DD_FORCE_SCALAR=1 pins the scalar set.
const KernelSet& kernels();

}  // namespace ddk::kern
