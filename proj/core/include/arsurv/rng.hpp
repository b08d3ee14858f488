#pragma once

#include <array>
#include <cstdint>

namespace arsurv {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3", SC'11). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Counter-based random stream. The 64-bit seed is the Philox key; the 64-bit
// stream index fills the upper half of the counter and the lower half counts
// blocks, so streams with different indices never overlap.
//
// Output layout (fixed, so results are bit-reproducible):
//   block b of stream s under seed k = philox4x32_10({lo(b), hi(b), lo(s), hi(s)},
//                                                    {lo(k), hi(k)})
//   next_u64() returns words (w0 | w1 << 32) then (w2 | w3 << 32).
//   next_uniform() = ((next_u64() >> 11) + 0.5) * 2^-53, in (0, 1).
//
// Not thread-safe; one logical consumer per stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t next_u64();
  double next_uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // 32-bit words consumed from buffer_
};

}  // namespace arsurv
