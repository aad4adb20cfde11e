#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace zuklab {

/// Signed-letter word: i is generator i (1-based), -i its inverse.
using Word = std::vector<int>;

/// No adjacent pair x, x^-1.
bool is_reduced(const Word& w);

/// Reduced, and the first and last letters are not mutually inverse.
/// Empty words are not cyclically reduced.
bool is_cyclically_reduced(const Word& w);

/// Letters a, b, c, ... for generators, capitals for inverses when k <= 26;
/// otherwise a bracketed integer list.
std::string format_word(const Word& w, int alphabet_size);

/// Number of cyclically reduced words of length l over k generators:
/// (2k-1)^l + 1 + (k-1)(1 + (-1)^l). Throws DeskScaleExceeded past 2^63.
std::uint64_t count_cyclically_reduced(int k, int l);

/// Prefix-count table for W'_t, the reduced words of length t whose first
/// and last letters are positive.
///
/// tail(r, s) is the number of ways to append r letters to a word whose last
/// letter has sign s so that the result stays reduced and ends positive.
/// Letters are ordered 1..k, then -1..-k.
class WPrimeTable {
 public:
  /// Builds the table for lengths up to t_max. Throws DeskScaleExceeded when
  /// a count would pass 2^63.
  WPrimeTable(int k, int t_max);

  /// Uses $ZUKLAB_CACHE/wprime_k<k>.txt when the variable is set: reads it
  /// if it covers t_max, otherwise builds and rewrites it.
  static WPrimeTable cached(int k, int t_max);

  int k() const { return k_; }
  int t_max() const { return t_max_; }

  std::uint64_t count(int t) const;
  Word unrank(int t, std::uint64_t index) const;
  std::uint64_t rank(const Word& w) const;

 private:
  WPrimeTable() = default;
  std::uint64_t tail(int r, bool positive) const;

  int k_ = 0;
  int t_max_ = 0;
  std::vector<std::uint64_t> tail_pos_;
  std::vector<std::uint64_t> tail_neg_;
};

/// |W'_t| = k^2 (2k-1)^{t-2} for t >= 2 and k for t = 1.
std::uint64_t count_wprime(int k, int t);

/// Bijection {0..count-1} -> W'_t in lexicographic order of letter codes.
Word unrank_wprime(int k, int t, std::uint64_t index);

/// Inverse of unrank_wprime; throws when `w` is not in W'_t.
std::uint64_t rank_wprime(int k, const Word& w);

}  // namespace zuklab
