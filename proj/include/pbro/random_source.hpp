#pragma once

#include <cstdint>

namespace pbro {

// Counter-based generator. A source is a key (mixed from the seed and any
// stream ids) plus a position; draw k of a stream is a pure function of
// (key, k), so streams are identical on every platform and independent of
// how work is scheduled across threads.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed = 0);

  // Independent child stream, e.g. derive(run).derive(iteration).derive(side).
  RandomSource derive(std::uint64_t stream_id) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double next_unit();
  // Uniform on (0, 1): never returns 0 or 1.
  double next_open_unit();

  // Draw at an absolute position without advancing the source.
  std::uint64_t u64_at(std::uint64_t position) const;
  double unit_at(std::uint64_t position) const;
  double open_unit_at(std::uint64_t position) const;
  void skip(std::uint64_t count) { position_ += count; }

  friend bool operator==(const RandomSource&, const RandomSource&) = default;

 private:
  RandomSource(std::uint64_t key, std::uint64_t position) : key_(key), position_(position) {}

  std::uint64_t key_;
  std::uint64_t position_ = 0;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Well-known stream ids.
enum class Side : std::uint64_t { kRow = 1, kCol = 2 };

}  // namespace pbro
