#include "asprt/philox.hpp"

#include <cmath>

namespace asprt {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kBump0 = 0x9E3779B9u;
constexpr std::uint32_t kBump1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x,
                       const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * x[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * x[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(
    const std::array<std::uint32_t, 4>& counter,
    const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> x = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      k[0] += kBump0;
      k[1] += kBump1;
    }
    round_once(x, k);
  }
  return x;
}

NormalStream::NormalStream(std::uint64_t master_seed, std::uint64_t trial)
    : key_{static_cast<std::uint32_t>(master_seed),
           static_cast<std::uint32_t>(master_seed >> 32)},
      trial_(trial) {}

std::uint64_t NormalStream::next_u64() {
  if (buffered_ < 2) {
    buffer_ = Philox4x32::block(
        {static_cast<std::uint32_t>(call_),
         static_cast<std::uint32_t>(call_ >> 32),
         static_cast<std::uint32_t>(trial_),
         static_cast<std::uint32_t>(trial_ >> 32)},
        key_);
    ++call_;
    buffered_ = 4;
  }
  const int base = 4 - buffered_;
  buffered_ -= 2;
  return static_cast<std::uint64_t>(buffer_[static_cast<std::size_t>(base)]) |
         (static_cast<std::uint64_t>(buffer_[static_cast<std::size_t>(base + 1)])
          << 32);
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 53-bit uniforms: u1 in (0, 1] keeps the log finite, u2 in [0, 1).
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace asprt
