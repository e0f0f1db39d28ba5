#pragma once

// Counter-based random streams and a deterministic parallel loop.
//
// Every Monte Carlo draw in the library is keyed by (seed, index): the
// engine for sample `index` is built from that pair alone, so results do
// not depend on how indices are split across worker threads.

#include <cstdint>
#include <functional>
#include <limits>

namespace welfarelab {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent sub-seed, e.g. one per agent or per menu.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

// UniformRandomBitGenerator whose whole state is a function of
// (seed, index). Successive calls walk a SplitMix64 sequence.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t index) noexcept
      : state_(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0, 1); safe for logarithms.
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Number of worker threads used when a caller passes 0.
unsigned default_thread_count();

// Runs body(begin, end) over a static partition of [0, n). Chunks are
// disjoint, so bodies that write only to their own index range produce the
// same result for any thread count.
void parallel_for(std::uint64_t n, unsigned threads,
                  const std::function<void(std::uint64_t, std::uint64_t)>& body);

}  // namespace welfarelab
