#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sectlab {

/// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit
/// counter and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Names an independent random stream. Every output of a CounterRng built
/// from a handle is a pure function of (seed, stream_id, draw index).
struct StreamHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Deterministically derived sub-stream. Used to give each sample index,
  /// frame index or check its own stream so that the partition of work
  /// across threads never changes a result.
  StreamHandle child(std::uint64_t index) const;

  friend bool operator==(const StreamHandle&, const StreamHandle&) = default;
};

// Fixed child tags so that the same sub-stream role gets the same id in
// every estimator. Frames drawn under kFrames are shared by any two
// estimators that start from one handle (common random frames).
namespace streams {
inline constexpr std::uint64_t kFrames = 0x4652414d;      // "FRAM"
inline constexpr std::uint64_t kSections = 0x53454354;    // "SECT"
inline constexpr std::uint64_t kPoints = 0x504f494e;      // "POIN"
inline constexpr std::uint64_t kVolume = 0x564f4c55;      // "VOLU"
inline constexpr std::uint64_t kMeasure = 0x4d454153;     // "MEAS"
inline constexpr std::uint64_t kTransforms = 0x5452414e;  // "TRAN"
inline constexpr std::uint64_t kCovariance = 0x434f5641;  // "COVA"
inline constexpr std::uint64_t kProbe = 0x50524f42;       // "PROB"
}  // namespace streams

/// Counter-based generator over a StreamHandle. Satisfies
/// UniformRandomBitGenerator so it can also drive <random> distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(StreamHandle handle) : handle_(handle) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double normal();

  const StreamHandle& handle() const { return handle_; }
  /// Number of 128-bit blocks consumed so far.
  std::uint64_t blocks() const { return block_; }

 private:
  StreamHandle handle_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int cursor_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sectlab
