#pragma once

#include <array>
#include <cstdint>

namespace ssde {

/// Counter-based random stream (Philox4x32-10). The key is the 64-bit seed,
/// the upper half of the 128-bit counter is the stream id and the lower half
/// counts blocks, so every (seed, stream_id) pair addresses its own
/// non-overlapping sequence and replays it exactly.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Standard exponential.
  double exponential();
  /// Standard normal (Box-Muller, second variate cached).
  double normal();

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }
  /// Number of 64-bit words consumed so far.
  [[nodiscard]] std::uint64_t counter() const { return consumed_; }

  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;
  /// The raw Philox4x32-10 bijection; exposed for known-answer tests.
  static Block philox(Block counter, Key key);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::uint64_t consumed_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned buffered_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace ssde
