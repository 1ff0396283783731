#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ifs {

/// Finite word over the alphabet {0, ..., N-1}.
struct Word {
  int alphabet = 2;
  std::vector<std::uint8_t> digits;

  Word() = default;
  Word(int n, std::vector<std::uint8_t> d) : alphabet(n), digits(std::move(d)) {
    if (alphabet < 2) throw std::domain_error("alphabet size must be >= 2");
    for (auto x : digits)
      if (x >= alphabet) throw std::domain_error("word digit out of range");
  }

  int length() const { return static_cast<int>(digits.size()); }

  /// Word of length n from its lexicographic index (first digit most
  /// significant).
  static Word from_index(int alphabet, int n, std::uint64_t index) {
    std::vector<std::uint8_t> d(n);
    for (int k = n - 1; k >= 0; --k) {
      d[k] = static_cast<std::uint8_t>(index % alphabet);
      index /= alphabet;
    }
    return Word(alphabet, std::move(d));
  }

  std::uint64_t index() const {
    std::uint64_t ix = 0;
    for (auto d : digits) ix = ix * alphabet + d;
    return ix;
  }
};

inline std::uint64_t int_pow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace ifs
