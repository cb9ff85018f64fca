#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace esslab {

// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator so
// it plugs into the <random> distributions.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::array<std::uint64_t, 4> state_{};
};

enum class StreamRole : std::uint64_t { Pool = 1, Bootstrap = 2, Direct = 3 };

std::string_view to_string(StreamRole role);

// A reproducible random stream identified by a 64-bit key. Substreams are
// addressed by index, so work split across threads draws the same numbers
// whatever the schedule.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }
  Xoshiro256 engine() const { return substream(0); }
  Xoshiro256 substream(std::uint64_t index) const;
  RandomStream child(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

std::uint64_t splitmix64(std::uint64_t x);

RandomStream derive_stream(std::uint64_t seed, std::uint64_t replicate_id, StreamRole role);

}  // namespace esslab
