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
 * @file time.hpp
 * @brief Virtual time base shared by every module.
 *
 * All simulated time is an integer count of nanoseconds. Arithmetic that can
 * grow without bound goes through the checked helpers below; a signed 64-bit
 * count covers roughly 292 years of virtual time.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace irqsim {

using Nanos = std::int64_t;

inline constexpr Nanos kNanosPerSecond = 1'000'000'000;
inline constexpr Nanos kNanosPerMicro = 1'000;

/// Thrown when virtual-time arithmetic leaves the representable range.
class TimeOverflow : public std::overflow_error {
public:
    explicit TimeOverflow(const std::string& what)
        : std::overflow_error("virtual time overflow: " + what) {}
};

/// Thrown when an internal accounting invariant fails; indicates a bug.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error("invariant violated: " + what) {}
};

inline Nanos checked_add(Nanos a, Nanos b, const char* what = "add") {
    Nanos out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw TimeOverflow(what);
    return out;
}

inline Nanos checked_mul(Nanos a, Nanos b, const char* what = "mul") {
    Nanos out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw TimeOverflow(what);
    return out;
}

}  // namespace irqsim
