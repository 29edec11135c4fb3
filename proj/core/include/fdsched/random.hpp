// Copyright 2026 The fdsched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace fdsched {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// The key is the 64-bit run seed and the upper half of the counter is a
/// 64-bit stream id, so (seed, stream) pairs name independent substreams
/// that can be created in any order on any thread.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// The raw 10-round bijection.
  static Counter block(Counter counter, Key key) noexcept;

 private:
  Key key_;
  Counter counter_;
  Counter buffer_{};
  int used_ = 4;
};

/// One substream of uniform and exponential variates.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept : engine_(seed, stream) {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Exp(1) by inversion.
  double exponential() noexcept;

 private:
  Philox4x32 engine_;
};

/// Mixes a parent seed with an index into a child seed (SplitMix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace fdsched
