#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rfs {

/// Fixed-width bitstring over GF(2). Bit indexing is 1-based with bit 1 the
/// leftmost character of the textual form and the most significant bit of the
/// integer encoding.
class BitString {
 public:
  BitString() = default;

  BitString(std::uint64_t value, int width) : value_(value), width_(width) {
    check_width(width);
    if (width < 64 && (value >> width) != 0) {
      throw std::invalid_argument("BitString: value does not fit in width");
    }
  }

  static BitString zeros(int width) { return BitString(0, width); }

  static BitString ones(int width) {
    check_width(width);
    return BitString(width == 64 ? ~0ULL : ((1ULL << width) - 1), width);
  }

  /// 1_j: the width-n string with only bit j set.
  static BitString one_hot(int j, int n) {
    check_width(n);
    if (j < 1 || j > n) {
      throw std::invalid_argument("one_hot: index out of range");
    }
    return BitString(1ULL << (n - j), n);
  }

  static BitString from_string(std::string_view s) {
    check_width(static_cast<int>(s.size()));
    std::uint64_t v = 0;
    for (char c : s) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("BitString: characters must be 0 or 1");
      }
      v = (v << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return BitString(v, static_cast<int>(s.size()));
  }

  int width() const { return width_; }
  std::uint64_t value() const { return value_; }

  /// (s)_j, 1-based.
  int bit(int j) const {
    if (j < 1 || j > width_) {
      throw std::invalid_argument("BitString::bit: index out of range");
    }
    return static_cast<int>((value_ >> (width_ - j)) & 1ULL);
  }

  std::string str() const {
    std::string s(static_cast<std::size_t>(width_), '0');
    for (int j = 1; j <= width_; ++j) {
      s[static_cast<std::size_t>(j - 1)] = static_cast<char>('0' + bit(j));
    }
    return s;
  }

  int popcount() const;

  friend BitString operator^(const BitString& a, const BitString& b) {
    if (a.width_ != b.width_) {
      throw std::invalid_argument("BitString xor: length mismatch");
    }
    return BitString(a.value_ ^ b.value_, a.width_);
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    return a.value_ <=> b.value_;
  }

 private:
  static void check_width(int width) {
    if (width < 1 || width > 63) {
      throw std::invalid_argument("BitString: width must be in [1, 63]");
    }
  }

  std::uint64_t value_ = 0;
  int width_ = 1;
};

/// Dot product modulo 2.
int dot(const BitString& a, const BitString& b);

inline BitString one_hot(int j, int n) { return BitString::one_hot(j, n); }

/// Walsh-Hadamard spectrum of (-1)^f under the averaging convention
/// g_hat(chi) = 2^-n sum_x (-1)^(chi.x + f(x)).  For linear f(x) = s.x this is
/// the Kronecker delta at s; squared values form a probability distribution.
struct SignSpectrum {
  int n = 0;
  std::vector<double> values;  // indexed by the integer encoding of chi

  double at(const BitString& chi) const { return values.at(chi.value()); }
  double parseval_sum() const;
};

/// Truth table is indexed by the integer encoding of x and must have exactly
/// 2^n entries in {0,1}.
SignSpectrum sign_spectrum(const std::vector<int>& truth_table);

}  // namespace rfs
