#pragma once

#include <array>
#include <cstdint>

namespace l1p {

// Purpose tag baked into the high bits of a stream id so the draws used
// for channels, symbols, noise, and reference samples never collide.
enum class StreamPurpose : std::uint8_t {
  kChannel = 1,
  kSymbols = 2,
  kNoise = 3,
  kReference = 4,
  kInit = 5,
};

// stream = purpose | channel | draw. Channel indices above 2^24 and draw
// indices above 2^32 are out of scope for any run this library supports.
constexpr std::uint64_t stream_id(StreamPurpose purpose, std::uint32_t channel,
                                  std::uint32_t draw) {
  return (static_cast<std::uint64_t>(purpose) << 56) |
         (static_cast<std::uint64_t>(channel & 0xFFFFFFu) << 32) |
         static_cast<std::uint64_t>(draw);
}

// Counter-based generator (Philox 4x32, 10 rounds). The key carries the
// user seed, the counter carries (block index, stream id), so any
// (seed, stream) pair yields an independent, reproducible sequence no
// matter which thread consumes it.
class Philox4x32 {
 public:
  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  double uniform();   // open interval (0, 1)
  double gaussian();  // standard normal via Box-Muller

  // One keyed block, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                            const std::array<std::uint32_t, 2>& key);

 private:
  void refill();

  std::array<std::uint32_t, 4> buffer_{};
  int pos_ = 4;
  std::uint64_t block_index_ = 0;
  std::uint64_t stream_ = 0;
  std::array<std::uint32_t, 2> key_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace l1p
