#pragma once

#include <array>
#include <cstdint>

namespace asprt {

// 10-round Philox-4x32 block function. Counter-based: any (counter, key)
// pair maps to an independent 128-bit block, which makes per-trial streams
// cheap, reproducible, and order-independent.
struct Philox4x32 {
  static std::array<std::uint32_t, 4> block(
      const std::array<std::uint32_t, 4>& counter,
      const std::array<std::uint32_t, 2>& key);
};

// Standard-normal stream for one (master_seed, trial) pair, via Box-Muller
// on 53-bit uniforms.
class NormalStream {
 public:
  NormalStream(std::uint64_t master_seed, std::uint64_t trial);
  double next();

 private:
  std::uint64_t next_u64();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t trial_ = 0;
  std::uint64_t call_ = 0;
  std::array<std::uint32_t, 4> buffer_ = {0, 0, 0, 0};
  int buffered_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace asprt
