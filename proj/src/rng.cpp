// SPDX-License-Identifier: Apache-2.0
#include "exmax/rng.hpp"

#include <cmath>
#include <numbers>

namespace exmax::rng {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
constexpr int kRounds = 10;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t product = std::uint64_t(a) * b;
  hi = std::uint32_t(product >> 32);
  lo = std::uint32_t(product);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  for (int round = 0; round < kRounds; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream_id)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_id_(stream_id) {}

void Stream::refill() {
  const Philox4x32::Counter out = Philox4x32::block(
      {std::uint32_t(block_), std::uint32_t(block_ >> 32), std::uint32_t(stream_id_),
       std::uint32_t(stream_id_ >> 32)},
      key_);
  ++block_;
  buffer_[0] = (std::uint64_t(out[1]) << 32) | out[0];
  buffer_[1] = (std::uint64_t(out[3]) << 32) | out[2];
  used_ = 0;
}

std::uint64_t Stream::next_u64() {
  if (used_ == 2) {
    refill();
  }
  return buffer_[used_++];
}

double Stream::next_open01() {
  return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::next_normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(next_open01()));
  const double angle = 2.0 * std::numbers::pi * next_open01();
  spare_normal_ = r * std::sin(angle);
  has_spare_normal_ = true;
  return r * std::cos(angle);
}

}  // namespace exmax::rng
