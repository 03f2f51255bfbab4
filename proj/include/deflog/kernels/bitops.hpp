#pragma once

// Word-parallel boolean kernels over model bitsets. Bit i of a bitset is the
// truth value of a formula under assignment i. Every kernel has a scalar
// reference and, where the target supports it, an AVX2 variant; the active
// table is picked once at startup from the CPU feature bits.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace deflog::kernels {

using Word = std::uint64_t;

struct BitKernels {
  std::string_view isa;
  // dst may alias either input. All spans have equal length.
  void (*and_words)(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b);
  void (*or_words)(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b);
  void (*not_words)(std::span<Word> dst, std::span<const Word> a);
  // dst = ~a | b
  void (*implies_words)(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b);
  // dst = ~(a ^ b)
  void (*iff_words)(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b);
  // (a & b) != 0
  bool (*intersects)(std::span<const Word> a, std::span<const Word> b);
  // (a & ~b) == 0
  bool (*subset_of)(std::span<const Word> a, std::span<const Word> b);
  std::size_t (*popcount)(std::span<const Word> a);
};

const BitKernels& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const BitKernels* avx2_kernels();

/// Table used by the library. Setting DEFLOG_KERNELS=scalar in the
/// environment forces the reference kernels.
const BitKernels& active_kernels();

/// Fills `dst` with the column of variable `var` in a truth table whose row
/// index enumerates assignments (bit `var` of the row index is the value).
void fill_variable_column(std::span<Word> dst, unsigned var);

}  // namespace deflog::kernels
