#include "hlab/core.hpp"

#include <bit>

namespace hlab {

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(stream_index), static_cast<std::uint32_t>(stream_index >> 32),
                    0x6c61625fU};
  engine_.seed(seq);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw Error("empty range");
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
  return RngStream(master_seed, stream_index);
}

BitString::BitString(std::size_t n) : n_(n), words_((n + kWordBits - 1) / kWordBits, Word{0}) {
  if (n == 0) throw Error("bit string length must be positive");
}

BitString BitString::ones(std::size_t n) {
  BitString x(n);
  for (auto& w : x.words_) w = ~Word{0};
  x.clear_tail();
  return x;
}

BitString BitString::parse(std::string_view text) {
  BitString x(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      x.flip(i);
    } else if (text[i] != '0') {
      throw Error("invalid bit string character '" + std::string(1, text[i]) + "'");
    }
  }
  return x;
}

BitString BitString::from_index(std::size_t n, std::uint64_t index) {
  if (n > kWordBits) throw Error("index form requires n <= 64");
  BitString x(n);
  x.words_[0] = index;
  x.clear_tail();
  return x;
}

BitString BitString::uniform(std::size_t n, RngStream& rng) {
  BitString x(n);
  for (auto& w : x.words_) w = rng();
  x.clear_tail();
  return x;
}

void BitString::set(std::size_t i, bool value) {
  const Word mask = Word{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

BitString BitString::flipped(std::size_t i) const {
  BitString y = *this;
  y.flip(i);
  return y;
}

void BitString::xor_with(const BitString& mask) {
  if (mask.n_ != n_) throw Error("dimension mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= mask.words_[w];
}

std::size_t BitString::ones_count() const noexcept {
  std::size_t count = 0;
  for (Word w : words_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

std::size_t BitString::leading_ones() const noexcept {
  std::size_t count = 0;
  for (Word w : words_) {
    const auto run = static_cast<std::size_t>(std::countr_one(w));
    count += run;
    if (run < kWordBits) break;
  }
  return count < n_ ? count : n_;
}

std::uint64_t BitString::to_index() const {
  if (n_ > kWordBits) throw Error("index form requires n <= 64");
  return words_[0];
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

void BitString::clear_tail() noexcept {
  const std::size_t used = n_ % kWordBits;
  if (used != 0) words_.back() &= (Word{1} << used) - 1;
}

void flip_each_bit(BitString& x, double rate, RngStream& rng) {
  const std::size_t n = x.size();
  if (rate <= 0.0) return;
  if (rate >= 1.0) {
    for (std::size_t i = 0; i < n; ++i) x.flip(i);
  } else if (rate < 0.2) {
    // Gaps between flipped positions are geometric; exact and O(rate * n) draws.
    std::geometric_distribution<std::uint64_t> gap(rate);
    std::uint64_t i = gap(rng);
    while (i < n) {
      x.flip(static_cast<std::size_t>(i));
      i += 1 + gap(rng);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.bernoulli(rate)) x.flip(i);
    }
  }
}

std::size_t hamming_distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw Error("dimension mismatch");
  const auto a = x.words();
  const auto b = y.words();
  std::size_t d = 0;
  for (std::size_t w = 0; w < a.size(); ++w) d += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  return d;
}

}  // namespace hlab
