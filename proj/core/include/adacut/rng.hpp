#pragma once

#include <cstdint>
#include <random>

namespace adacut {

using Rng = std::mt19937_64;

//! SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

//! Independent stream for work unit `index` under a master seed. The stream
//! depends only on (seed, index), never on which worker draws it.
inline Rng substream(std::uint64_t seed, std::uint64_t index)
{
  std::seed_seq seq{ static_cast<std::uint32_t>(mix64(seed ^ mix64(index))),
                     static_cast<std::uint32_t>(mix64(seed ^ mix64(index)) >> 32),
                     static_cast<std::uint32_t>(index),
                     static_cast<std::uint32_t>(index >> 32) };
  return Rng(seq);
}

//! Uniform draw on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) noexcept
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

//! Uniform draw on (0, 1].
inline double uniform01_open_low(Rng& rng) noexcept
{
  return 1.0 - uniform01(rng);
}

} // namespace adacut
