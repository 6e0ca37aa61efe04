#include "pbro/random_source.hpp"

namespace pbro {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : key_(mix64(seed ^ 0x5851f42d4c957f2dULL)) {}

RandomSource RandomSource::derive(std::uint64_t stream_id) const {
  return RandomSource(mix64(key_ ^ mix64(stream_id + kGolden)), 0);
}

std::uint64_t RandomSource::u64_at(std::uint64_t position) const {
  return mix64(key_ + (position + 1) * kGolden);
}

double RandomSource::unit_at(std::uint64_t position) const {
  return static_cast<double>(u64_at(position) >> 11) * kTwoPowMinus53;
}

double RandomSource::open_unit_at(std::uint64_t position) const {
  return (static_cast<double>(u64_at(position) >> 11) + 0.5) * kTwoPowMinus53;
}

std::uint64_t RandomSource::next_u64() { return u64_at(position_++); }
double RandomSource::next_unit() { return unit_at(position_++); }
double RandomSource::next_open_unit() { return open_unit_at(position_++); }

}  // namespace pbro
