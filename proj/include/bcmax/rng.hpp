/*
 * Copyright 2026 The bcmax Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BCMAX_RNG_HPP
#define BCMAX_RNG_HPP

#include <cstdint>

namespace bcmax {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Stafford mix 13, the finalizer used by SplitMix64.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based random stream (SplitMix64 construction): output i is a
/// bijective mix of key + i*golden, so any draw is a pure function of
/// (key, position).  Streams derived from distinct (master seed, index)
/// pairs are decorrelated, which makes per-path / per-replicate streams
/// reproducible with no coordination between workers.
///
/// The construction is pinned; see kRngVersion.
class RngStream {
 public:
  /// Root stream for a master seed.
  explicit RngStream(std::uint64_t master_seed)
      : key_(detail::mix64(master_seed ^ detail::kGolden)) {}

  /// Derived stream, e.g. one per simulated path or per Monte-Carlo
  /// replicate.  Never share a stream between logical work items;
  /// derive one per item instead.
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : key_(detail::mix64(detail::mix64(master_seed ^ detail::kGolden) +
                           detail::mix64(stream_index + detail::kGolden))) {}

  std::uint64_t next_u64() {
    counter_ += detail::kGolden;
    return detail::mix64(key_ + counter_);
  }

  /// Uniform draw strictly inside (0, 1): (k + 0.5) / 2^52 over the top
  /// 52 bits, so 0 and 1 are unreachable and quantile transforms stay in
  /// the open interval.
  double next_u01() {
    const std::uint64_t bits = next_u64() >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace bcmax

#endif  // BCMAX_RNG_HPP
