#include "rfs/bitmath.hpp"

#include <bit>

namespace rfs {

int BitString::popcount() const { return std::popcount(value_); }

int dot(const BitString& a, const BitString& b) {
  if (a.width() != b.width()) {
    throw std::invalid_argument("dot: length mismatch");
  }
  return std::popcount(a.value() & b.value()) & 1;
}

double SignSpectrum::parseval_sum() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

SignSpectrum sign_spectrum(const std::vector<int>& truth_table) {
  const std::size_t size = truth_table.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("sign_spectrum: table size must be a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;

  // In-place fast Walsh-Hadamard transform of (-1)^f, integer-exact.
  std::vector<long long> a(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (truth_table[i] != 0 && truth_table[i] != 1) {
      throw std::invalid_argument("sign_spectrum: table entries must be 0 or 1");
    }
    a[i] = truth_table[i] ? -1 : 1;
  }
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        long long x = a[j];
        long long y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
    }
  }

  SignSpectrum spec;
  spec.n = n;
  spec.values.resize(size);
  const double scale = 1.0 / static_cast<double>(size);
  for (std::size_t i = 0; i < size; ++i) {
    spec.values[i] = static_cast<double>(a[i]) * scale;
  }
  return spec;
}

}  // namespace rfs
