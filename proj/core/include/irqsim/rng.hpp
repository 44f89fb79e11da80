/*
 * Copyright 2026 The irqsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file rng.hpp
 * @brief Seeded deterministic generator used by the synthetic load scenarios.
 *
 * The generator is xoshiro256** (Blackman & Vigna, 2018) with its state
 * expanded from a single 64-bit seed by SplitMix64, exactly as the reference
 * implementation recommends. Both algorithms have published reference
 * outputs, so a port in any language reproduces the same stream bit for bit.
 * Doubles are formed from the top 53 bits of each output.
 */

#pragma once

#include <array>
#include <cstdint>

namespace irqsim {

/// SplitMix64; used only to expand seeds.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256StarStar(std::uint64_t seed) noexcept;

    /// Starts from an explicit state, which must not be all zero.
    static Xoshiro256StarStar from_state(const std::array<std::uint64_t, 4>& state) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept { return next(); }
    result_type next() noexcept;

    /// Uniform double in [0, 1) with 53 bits of resolution; 0 is reachable.
    double next_unit() noexcept;

    /// Uniform double in the open interval (0, 1); zero draws are resampled.
    double next_open_unit() noexcept;

    const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }

private:
    Xoshiro256StarStar() = default;

    std::array<std::uint64_t, 4> s_{};
};

}  // namespace irqsim
