#include <bit>

#include "deflog/kernels/bitops.hpp"

namespace deflog::kernels {

namespace {

void and_words(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] & b[i];
}

void or_words(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = a[i] | b[i];
}

void not_words(std::span<Word> dst, std::span<const Word> a) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ~a[i];
}

void implies_words(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ~a[i] | b[i];
}

void iff_words(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ~(a[i] ^ b[i]);
}

bool intersects(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool subset_of(std::span<const Word> a, std::span<const Word> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t popcount(std::span<const Word> a) {
  std::size_t n = 0;
  for (Word w : a) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

}  // namespace

const BitKernels& scalar_kernels() {
  static const BitKernels k{"scalar",   and_words,  or_words, not_words, implies_words,
                            iff_words,  intersects, subset_of, popcount};
  return k;
}

void fill_variable_column(std::span<Word> dst, unsigned var) {
  static constexpr Word kLow[6] = {
      0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
      0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
  };
  if (var < 6) {
    for (Word& w : dst) w = kLow[var];
    return;
  }
  const std::size_t run = std::size_t{1} << (var - 6);
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ((i / run) & 1) ? ~Word{0} : Word{0};
}

}  // namespace deflog::kernels
