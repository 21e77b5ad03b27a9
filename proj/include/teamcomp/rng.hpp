#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace teamcomp {

// Seeded generator with self-contained draw helpers. std::mt19937_64 has a
// standardized output sequence, and the bounded/real mappings below are our
// own, so identical seeds give identical streams on every platform
// (std::uniform_int_distribution would not).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit mantissa.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); rejection sampling keeps it unbiased.
  std::size_t next_below(std::size_t bound) {
    const std::uint64_t b = bound;
    const std::uint64_t rem = (UINT64_MAX % b + 1) % b;
    const std::uint64_t limit = UINT64_MAX - rem;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x > limit);
    return static_cast<std::size_t>(x % b);
  }

  // Fisher-Yates, consuming one bounded draw per step.
  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[next_below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace teamcomp
