#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace legcs {

// Counter-based stream built on the SplitMix64 finalizer.  Output i of a
// stream with seed state0 is mix64(state0 + (i+1)*0x9E3779B97F4A7C15), where
//
//   mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//             z ^= z >> 27; z *= 0x94D049BB133111EB;
//             z ^= z >> 31;
//
// The whole stream is a pure function of the 64-bit seed, so any language
// with 64-bit integer arithmetic reproduces it exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0,1): top 53 bits of next_u64, scaled by 2^-53.
  double uniform01();
  // Uniform on (0,1): (top 53 bits + 0.5) * 2^-53.
  double uniform01_open();
  // Uniform on [-1,1).
  double uniform_sym();
  // Standard normal via Box-Muller on two open-interval uniforms; the
  // second value of each pair is cached.
  double gaussian();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Seed derivation for substreams: fold each word into the running hash with
// h = mix64(h ^ w + 0x9E3779B97F4A7C15).  Used to give every (experiment,
// case, s, m, trial) its own independent stream.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> words);

// FNV-1a 64-bit hash for folding string tags into derive_seed words.
std::uint64_t hash_tag(std::string_view tag);

}  // namespace legcs
