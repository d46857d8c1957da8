#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace gw {

/// Identifies one random stream: a master seed shared by an experiment and a
/// per-replica stream id. Distinct pairs give non-overlapping streams.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

using PhiloxBlock = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

/// Philox4x64-10 block function (Salmon et al., Random123).
PhiloxBlock philox4x64(PhiloxBlock counter, PhiloxKey key);

/// SplitMix64 finalizer; used to derive independent master seeds for
/// sub-experiments from a single user seed.
std::uint64_t mix64(std::uint64_t x);

/// Derives a new master seed from `master` and a domain tag.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag);

/// Counter-based generator keyed by (master_seed, stream_id). The output
/// sequence is a pure function of the key; satisfies
/// UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(SeedSpec seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1); never returns an endpoint.
  double uniform_open();
  /// Standard normal variate (Marsaglia polar method).
  double standard_normal();

  const SeedSpec& seed() const { return seed_; }

 private:
  void refill();

  SeedSpec seed_;
  PhiloxKey key_;
  PhiloxBlock counter_{};
  PhiloxBlock block_{};
  unsigned index_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline RandomStream make_stream(SeedSpec seed) { return RandomStream(seed); }

inline double standard_normal(RandomStream& stream) {
  return stream.standard_normal();
}

}  // namespace gw
