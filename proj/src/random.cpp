#include "esslab/random.hpp"

namespace esslab {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) {
    s += 0x9e3779b97f4a7c15ULL;
    word = splitmix64(s);
  }
}

Xoshiro256::result_type Xoshiro256::operator()() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Xoshiro256::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::string_view to_string(StreamRole role) {
  switch (role) {
    case StreamRole::Pool: return "pool";
    case StreamRole::Bootstrap: return "bootstrap";
    case StreamRole::Direct: return "direct";
  }
  return "unknown";
}

Xoshiro256 RandomStream::substream(std::uint64_t index) const {
  return Xoshiro256(splitmix64(key_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

RandomStream RandomStream::child(std::uint64_t index) const {
  return RandomStream(splitmix64(splitmix64(key_) ^ (index * 0xd1b54a32d192ed03ULL + 1)));
}

RandomStream derive_stream(std::uint64_t seed, std::uint64_t replicate_id, StreamRole role) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ (replicate_id * 0xa0761d6478bd642fULL));
  key = splitmix64(key ^ (static_cast<std::uint64_t>(role) * 0xe7037ed1a0b428dbULL));
  return RandomStream(key);
}

}  // namespace esslab
