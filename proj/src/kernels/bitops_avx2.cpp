// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "deflog/kernels/bitops.hpp"

namespace deflog::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256i load(const Word* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(Word* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void and_words(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) store(&dst[i], _mm256_and_si256(load(&a[i]), load(&b[i])));
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void or_words(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = dst.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) store(&dst[i], _mm256_or_si256(load(&a[i]), load(&b[i])));
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void not_words(std::span<Word> dst, std::span<const Word> a) {
  const std::size_t n = dst.size();
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) store(&dst[i], _mm256_xor_si256(load(&a[i]), ones));
  for (; i < n; ++i) dst[i] = ~a[i];
}

void implies_words(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = dst.size();
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    store(&dst[i], _mm256_or_si256(_mm256_xor_si256(load(&a[i]), ones), load(&b[i])));
  for (; i < n; ++i) dst[i] = ~a[i] | b[i];
}

void iff_words(std::span<Word> dst, std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = dst.size();
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    store(&dst[i], _mm256_xor_si256(_mm256_xor_si256(load(&a[i]), load(&b[i])), ones));
  for (; i < n; ++i) dst[i] = ~(a[i] ^ b[i]);
}

bool intersects(std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i x = _mm256_and_si256(load(&a[i]), load(&b[i]));
    if (!_mm256_testz_si256(x, x)) return true;
  }
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool subset_of(std::span<const Word> a, std::span<const Word> b) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    // testc(b, a) == 1 iff (~b & a) == 0
    if (!_mm256_testc_si256(load(&b[i]), load(&a[i]))) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t popcount(std::span<const Word> a) {
  std::size_t n = 0;
  for (Word w : a) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

}  // namespace

const BitKernels& table() {
  static const BitKernels k{"avx2",    and_words,  or_words, not_words, implies_words,
                            iff_words, intersects, subset_of, popcount};
  return k;
}

}  // namespace deflog::kernels::avx2
