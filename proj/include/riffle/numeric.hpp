#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace riffle {

// Arbitrary-precision integers and rationals. Everything on the coherence
// path is exact; doubles appear only when rendering.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Coordinatewise sign with sgn(0) = -1.
inline int sign_of(const Int& x) { return x > 0 ? 1 : -1; }
inline int sign_of(const Rat& x) { return x > 0 ? 1 : -1; }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

double to_double(const Rat& x);

// "8/15"-style normalized fraction; integers render without a denominator.
std::string format_fraction(const Rat& x);

// Fixed-point decimal with the given number of digits.
std::string format_decimal(const Rat& x, int digits);

// Deterministic RNG so synthetic data and restart sampling reproduce
// byte-for-byte across platforms (std::shuffle does not guarantee that).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

template <typename T>
void shuffle_in_place(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace riffle
