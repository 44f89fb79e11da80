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
 * @file nic.hpp
 * @brief Interrupt cost model and the NIC moderation strategies.
 *
 * Interrupt service is charged twice: once for the ISR and once for the
 * receiver task that follows it. Each part costs a constant per interrupt
 * plus a per-byte term for every packet in the batch, so a batch of packets
 * with lengths l_i costs  constant + per_byte * sum(l_i).
 *
 * Moderation is an explicit state machine (`Moderator`) fed with arrivals in
 * time order:
 *   - Simple:   one interrupt per packet at its arrival.
 *   - Counter:  fire on the k-th buffered packet.
 *   - Timer:    every arrival (re)arms a timer to arrival + delay; fire on
 *               expiry. Constant arrivals can starve it indefinitely.
 *   - Combined: both rules; whichever fires first resets both.
 *
 * Arrivals at the exact instant a timer would expire are processed first,
 * which re-arms the timer and lets a counter trigger win the tie.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "irqsim/time.hpp"
#include "irqsim/trace.hpp"

namespace irqsim {

struct DelayModel {
    Nanos isr_per_byte = 0;
    Nanos isr_constant = 0;
    Nanos rx_per_byte = 0;
    Nanos rx_constant = 0;

    /// Rejects negative coefficients, and an all-zero model unless allowed.
    void validate(bool allow_zero_cost = false) const;
    bool is_zero() const noexcept {
        return isr_per_byte == 0 && isr_constant == 0 && rx_per_byte == 0 && rx_constant == 0;
    }

    friend bool operator==(const DelayModel&, const DelayModel&) = default;
};

namespace mode {
struct Simple {
    friend bool operator==(const Simple&, const Simple&) = default;
};
struct Counter {
    std::uint64_t threshold = 1;
    friend bool operator==(const Counter&, const Counter&) = default;
};
struct Timer {
    Nanos delay = 1;
    friend bool operator==(const Timer&, const Timer&) = default;
};
struct Combined {
    std::uint64_t threshold = 1;
    Nanos delay = 1;
    friend bool operator==(const Combined&, const Combined&) = default;
};
}  // namespace mode

using ModerationMode = std::variant<mode::Simple, mode::Counter, mode::Timer, mode::Combined>;

void validate(const ModerationMode& m);
std::string_view mode_name(const ModerationMode& m);
std::optional<std::uint64_t> counter_threshold(const ModerationMode& m);
std::optional<Nanos> timer_delay(const ModerationMode& m);

enum class InterruptCause : std::uint8_t { PerPacket, CounterThreshold, TimerExpiry, EndFlush };
inline constexpr std::size_t kCauseCount = 4;
std::string_view cause_name(InterruptCause c);

struct InterruptEvent {
    Nanos fire_time = 0;
    InterruptCause cause = InterruptCause::PerPacket;
    std::vector<Packet> batch;

    friend bool operator==(const InterruptEvent&, const InterruptEvent&) = default;
};

/// What happens to packets still buffered when the trace ends and no timer
/// is armed to deliver them.
enum class EndPolicy { Flush, Drop };

struct NicConfig {
    ModerationMode mode = mode::Simple{};
    DelayModel delays;
    EndPolicy end_policy = EndPolicy::Flush;
    bool allow_zero_cost = false;

    void validate() const;
};

Nanos isr_duration(const DelayModel& delays, std::span<const Packet> batch);
Nanos rx_duration(const DelayModel& delays, std::span<const Packet> batch);

class Moderator {
public:
    explicit Moderator(ModerationMode mode);

    /// Feeds the next arrival. Arrivals must be non-decreasing in time.
    /// Interrupts that became due, including a timer that expired strictly
    /// before this arrival, are appended to `out`.
    void on_arrival(const Packet& p, std::vector<InterruptEvent>& out);

    /// Ends the input. A pending timer fires at its deadline; otherwise a
    /// non-empty buffer is flushed at the last arrival or dropped.
    /// Returns the number of dropped packets.
    std::size_t finish(EndPolicy policy, std::vector<InterruptEvent>& out);

    std::size_t buffered() const noexcept { return buffer_.size(); }
    std::optional<Nanos> timer_deadline() const noexcept { return deadline_; }

private:
    void emit(Nanos when, InterruptCause cause, std::vector<InterruptEvent>& out);

    ModerationMode mode_;
    std::optional<std::uint64_t> threshold_;
    std::optional<Nanos> delay_;
    std::vector<Packet> buffer_;
    std::optional<Nanos> deadline_;
    Nanos last_arrival_ = 0;
    bool seen_any_ = false;
};

struct ModerationOutcome {
    std::vector<InterruptEvent> events;  ///< non-decreasing fire_time
    std::size_t dropped = 0;
};

ModerationOutcome moderate(const ModerationMode& mode, const Trace& trace, EndPolicy end_policy);

}  // namespace irqsim
