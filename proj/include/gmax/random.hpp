#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace gmax {

// Generator used for every stream in the library: xoshiro256** seeded through
// SplitMix64, with standard normals from the Marsaglia polar method. Streams
// are split by deriving a fresh 64-bit seed per task (see derive_seed).
inline constexpr std::string_view kGeneratorId = "xoshiro256** / splitmix64 / polar";

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed of child stream `index` under `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

// FNV-1a over the bytes of `text`.
constexpr std::uint64_t hash_string(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Task seed = hash64(master_seed, experiment_id, grid_index, replicate_index).
constexpr std::uint64_t hash64(std::uint64_t master_seed, std::string_view experiment_id,
                               std::uint64_t grid_index, std::uint64_t replicate_index) noexcept {
  std::uint64_t h = derive_seed(master_seed, hash_string(experiment_id));
  h = derive_seed(h, grid_index);
  return derive_seed(h, replicate_index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;

  double normal() noexcept;

  void fill_normal(std::span<double> out) noexcept;

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gmax
