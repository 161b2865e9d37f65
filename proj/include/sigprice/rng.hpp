#pragma once

#include <cstdint>
#include <utility>

namespace sigprice {

// counter-based generator (philox-style 2x64, 10 rounds): a keyed bijection of
// the counter, so draws are pure functions of (key, counter). stateless across
// paths; each path gets its own key via mix_seed, which makes results identical
// under any serial/parallel work partition.
class Philox2x64 {
 public:
  explicit Philox2x64(std::uint64_t key) : key_(key) {}

  std::pair<std::uint64_t, std::uint64_t> block(std::uint64_t counter) const {
    std::uint64_t x0 = counter;
    std::uint64_t x1 = 0;
    std::uint64_t k = key_;
    for (int round = 0; round < 10; ++round) {
      const unsigned __int128 prod =
          static_cast<unsigned __int128>(0xD2B74407B1CE6E93ULL) * x0;
      const std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
      const std::uint64_t lo = static_cast<std::uint64_t>(prod);
      x0 = hi ^ k ^ x1;
      x1 = lo;
      k += 0x9E3779B97F4A7C15ULL;
    }
    return {x0, x1};
  }

 private:
  std::uint64_t key_;
};

// splitmix-style finalizer decorrelates consecutive path indices
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// per-path stream of uniforms and gaussians
class PathRng {
 public:
  PathRng(std::uint64_t base_seed, std::uint64_t path_index)
      : gen_(mix_seed(base_seed, path_index)) {}

  std::uint64_t next_word() {
    if (have_word_) {
      have_word_ = false;
      return spare_word_;
    }
    const auto [w0, w1] = gen_.block(counter_++);
    spare_word_ = w1;
    have_word_ = true;
    return w0;
  }

  // uniform on (0, 1]; never returns 0 so log() below is safe
  double uniform() {
    return (static_cast<double>(next_word() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal via box-muller; the sine mate is cached
  double gaussian();

 private:
  Philox2x64 gen_;
  std::uint64_t counter_ = 0;
  std::uint64_t spare_word_ = 0;
  bool have_word_ = false;
  double cached_gaussian_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace sigprice
