#pragma once

#include <cstdint>
#include <random>

namespace bnn {

// splitmix64 finalizer; used to derive independent seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed for sub-stream `index` of `master`.  Documented in the README; run k of
// an experiment uses derive_seed(master, k), and nested streams chain this.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master + 0x9e3779b97f4a7c15ull * (index + 1));
}

// Uniform draws built directly on mt19937_64 output.  The std <random>
// distributions are implementation-defined, so golden outputs would not
// survive a stdlib change; these helpers are exact and portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform integer in [0, n).  Rejection sampling keeps it exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= threshold) return x % n;
    }
  }

  // Uniform double in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  bool coin() { return (gen_() >> 63) != 0; }

  // Uniform over {-1, 0, +1}.
  int ternary() { return static_cast<int>(below(3)) - 1; }

  // Uniform over {-1, 0, +1} \ {current}.
  int ternary_excluding(int current) {
    const int lo = current == -1 ? 0 : -1;
    const int hi = current == 1 ? 0 : 1;
    return below(2) == 0 ? lo : hi;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bnn
