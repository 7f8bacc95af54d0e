#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fracsum {

namespace bits {

// dst[i + shift] |= src[i] for every set bit i of src, clipped to dst's length.
inline void or_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                       std::int64_t shift) {
  const std::int64_t nd = static_cast<std::int64_t>(dst.size());
  const std::int64_t ns = static_cast<std::int64_t>(src.size());
  if (shift >= 0) {
    const std::int64_t ws = shift >> 6;
    const unsigned bs = static_cast<unsigned>(shift & 63);
    for (std::int64_t i = 0; i < ns && i + ws < nd; ++i) {
      const std::uint64_t w = src[static_cast<std::size_t>(i)];
      if (!w) continue;
      dst[static_cast<std::size_t>(i + ws)] |= w << bs;
      if (bs && i + ws + 1 < nd) dst[static_cast<std::size_t>(i + ws + 1)] |= w >> (64 - bs);
    }
  } else {
    const std::int64_t s = -shift;
    const std::int64_t ws = s >> 6;
    const unsigned bs = static_cast<unsigned>(s & 63);
    for (std::int64_t j = 0; j < nd; ++j) {
      const std::int64_t i = j + ws;
      if (i >= ns) break;
      std::uint64_t w = src[static_cast<std::size_t>(i)] >> bs;
      if (bs && i + 1 < ns) w |= src[static_cast<std::size_t>(i + 1)] << (64 - bs);
      dst[static_cast<std::size_t>(j)] |= w;
    }
  }
}

// Bits of src shifted by `shift` and intersected with dst (dst &= src << shift).
inline void and_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                        std::int64_t shift) {
  std::vector<std::uint64_t> tmp(dst.size(), 0);
  or_shifted(tmp, src, shift);
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= tmp[i];
}

inline std::size_t popcount(const std::vector<std::uint64_t>& words) {
  std::size_t n = 0;
  for (auto w : words) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

inline bool any(const std::vector<std::uint64_t>& words) {
  return std::any_of(words.begin(), words.end(), [](std::uint64_t w) { return w != 0; });
}

// OR of src shifted by 0, 1, ..., width-1 (a run dilation), by doubling.
inline std::vector<std::uint64_t> run_dilate(const std::vector<std::uint64_t>& src, std::int64_t width,
                                             std::size_t out_words) {
  std::vector<std::uint64_t> acc(out_words, 0);
  or_shifted(acc, src, 0);
  std::int64_t len = 1;
  while (len * 2 <= width) {
    auto copy = acc;
    or_shifted(acc, copy, len);
    len *= 2;
  }
  if (width > len) {
    auto copy = acc;
    or_shifted(acc, copy, width - len);
  }
  return acc;
}

template <typename Fn>
void for_each_set(const std::vector<std::uint64_t>& words, Fn&& fn) {
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::uint64_t w = words[i];
    while (w) {
      const int b = std::countr_zero(w);
      fn(static_cast<std::int64_t>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
}

}  // namespace bits

// Dense bit array over the integer range [lo, lo + width).
class BitLine {
 public:
  BitLine() = default;
  BitLine(std::int64_t lo, std::int64_t width)
      : lo_(lo), width_(width), words_(static_cast<std::size_t>((width + 63) / 64), 0) {
    if (width < 0) throw std::invalid_argument("negative BitLine width");
  }

  std::int64_t lo() const { return lo_; }
  std::int64_t width() const { return width_; }
  std::int64_t hi() const { return lo_ + width_ - 1; }

  bool in_range(std::int64_t x) const { return x >= lo_ && x < lo_ + width_; }

  void set(std::int64_t x) {
    const auto i = static_cast<std::uint64_t>(x - lo_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }

  void set_range(std::int64_t a, std::int64_t b) {  // inclusive
    for (std::int64_t x = a; x <= b;) {
      const auto i = static_cast<std::uint64_t>(x - lo_);
      if ((i & 63) == 0 && x + 63 <= b) {
        words_[i >> 6] = ~std::uint64_t{0};
        x += 64;
      } else {
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        ++x;
      }
    }
  }

  bool test(std::int64_t x) const {
    if (!in_range(x)) return false;
    const auto i = static_cast<std::uint64_t>(x - lo_);
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }

  std::size_t count() const { return bits::popcount(words_); }

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    bits::for_each_set(words_, [&](std::int64_t i) { fn(i + lo_); });
  }

  std::vector<std::int64_t> positions() const {
    std::vector<std::int64_t> out;
    out.reserve(count());
    for_each([&](std::int64_t x) { out.push_back(x); });
    return out;
  }

  // Smallest BitLine holding the same set bits (empty range when no bits are set).
  BitLine trimmed() const {
    std::int64_t first = 0, last = 0;
    bool have = false;
    for_each([&](std::int64_t x) {
      if (!have) first = x;
      last = x;
      have = true;
    });
    if (!have) return BitLine(0, 0);
    BitLine out(first, last - first + 1);
    bits::or_shifted(out.words_, words_, lo_ - first);
    return out;
  }

  // Same bits re-based onto a (wider or narrower) range.
  BitLine rebased(std::int64_t lo, std::int64_t width) const {
    BitLine out(lo, width);
    bits::or_shifted(out.words_, words_, lo_ - lo);
    out.mask_tail();
    return out;
  }

  void mask_tail() {
    const auto rem = static_cast<unsigned>(width_ & 63);
    if (rem && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
  }

  friend bool operator==(const BitLine& a, const BitLine& b) {
    return a.trimmed().same_layout(b.trimmed());
  }

 private:
  bool same_layout(const BitLine& o) const {
    return lo_ == o.lo_ && width_ == o.width_ && words_ == o.words_;
  }

  std::int64_t lo_ = 0;
  std::int64_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace fracsum
