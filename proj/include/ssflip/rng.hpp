#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ssflip {

// splitmix64 step; also the documented master-seed -> trial-seed mixer.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for trial number `ordinal` under a given master seed.
inline uint64_t trial_seed(uint64_t master_seed, uint64_t ordinal) {
  return splitmix64(master_seed ^ (0x9E3779B97F4A7C15ull * (ordinal + 1)));
}

// Deterministic RNG wrapper. mt19937_64's raw output sequence is fixed by
// the standard; bounded draws use rejection sampling so results do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // Uniform in [0, n). n must be nonzero.
  uint64_t below(uint64_t n) {
    const uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), sorted ascending.
  std::vector<uint32_t> sample_sorted(uint32_t n, uint32_t k);

 private:
  std::mt19937_64 gen_;
};

inline std::vector<uint32_t> Rng::sample_sorted(uint32_t n, uint32_t k) {
  std::vector<uint32_t> pool(n);
  for (uint32_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<uint32_t> out;
  out.reserve(k);
  for (uint32_t i = 0; i < k && i < n; ++i) {
    const uint32_t j = i + static_cast<uint32_t>(below(n - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ssflip
