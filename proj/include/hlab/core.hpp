#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hlab {

/// Error raised on violated preconditions and malformed inputs across the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic random stream identified by (master_seed, stream_index).
///
/// Two streams with the same identifiers produce identical draw sequences, so
/// replicate i of an experiment is reproducible independently of the order in
/// which replicates are executed. A stream must be owned by a single task.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::mt19937_64 engine_;
};

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_index);

/// Fixed-length bit string x in {0,1}^n stored in packed 64-bit words.
///
/// Position i (0-based in this API) is position i+1 in the text form, where
/// position 1 is the leftmost character. Bits beyond n in the last word are
/// always zero.
class BitString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  /// All-zero string of length n; n must be at least 1.
  explicit BitString(std::size_t n);

  static BitString ones(std::size_t n);
  /// Parses a '0'/'1' string, position 1 leftmost.
  static BitString parse(std::string_view text);
  /// Bit i of `index` becomes position i. Requires n <= 64.
  static BitString from_index(std::size_t n, std::uint64_t index);
  static BitString uniform(std::size_t n, RngStream& rng);

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  BitString flipped(std::size_t i) const;
  /// In-place XOR with a mask of equal length.
  void xor_with(const BitString& mask);

  std::size_t ones_count() const noexcept;
  std::size_t leading_ones() const noexcept;
  bool all_ones() const noexcept { return ones_count() == n_; }

  /// Inverse of from_index. Requires n <= 64.
  std::uint64_t to_index() const;
  std::string to_string() const;
  std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  void clear_tail() noexcept;

  std::size_t n_;
  boost::container::small_vector<Word, 2> words_;
};

/// Flips each bit of x independently with probability `rate`.
void flip_each_bit(BitString& x, double rate, RngStream& rng);

/// Number of positions in which x and y disagree.
std::size_t hamming_distance(const BitString& x, const BitString& y);

}  // namespace hlab
