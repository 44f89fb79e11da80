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

#include "irqsim/nic.hpp"

#include <stdexcept>

namespace irqsim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Nanos batch_cost(Nanos per_byte, Nanos constant, std::span<const Packet> batch) {
    Nanos bytes = 0;
    for (const auto& p : batch) bytes = checked_add(bytes, p.length, "batch bytes");
    return checked_add(constant, checked_mul(per_byte, bytes, "per-byte cost"), "interrupt cost");
}

}  // namespace

void DelayModel::validate(bool allow_zero_cost) const {
    if (isr_per_byte < 0 || isr_constant < 0 || rx_per_byte < 0 || rx_constant < 0) {
        throw std::invalid_argument("delay model: coefficients must be >= 0");
    }
    if (!allow_zero_cost && is_zero()) {
        throw std::invalid_argument("delay model: all coefficients are zero (set allow_zero_cost to permit)");
    }
}

void validate(const ModerationMode& m) {
    std::visit(Overloaded{
                   [](const mode::Simple&) {},
                   [](const mode::Counter& c) {
                       if (c.threshold < 1) throw std::invalid_argument("counter mode: threshold must be >= 1");
                   },
                   [](const mode::Timer& t) {
                       if (t.delay < 1) throw std::invalid_argument("timer mode: delay must be >= 1 ns");
                   },
                   [](const mode::Combined& c) {
                       if (c.threshold < 1) throw std::invalid_argument("combined mode: threshold must be >= 1");
                       if (c.delay < 1) throw std::invalid_argument("combined mode: delay must be >= 1 ns");
                   },
               },
               m);
}

std::string_view mode_name(const ModerationMode& m) {
    static constexpr std::string_view names[] = {"simple", "counter", "timer", "combined"};
    return names[m.index()];
}

std::optional<std::uint64_t> counter_threshold(const ModerationMode& m) {
    if (const auto* c = std::get_if<mode::Counter>(&m)) return c->threshold;
    if (const auto* c = std::get_if<mode::Combined>(&m)) return c->threshold;
    return std::nullopt;
}

std::optional<Nanos> timer_delay(const ModerationMode& m) {
    if (const auto* t = std::get_if<mode::Timer>(&m)) return t->delay;
    if (const auto* c = std::get_if<mode::Combined>(&m)) return c->delay;
    return std::nullopt;
}

std::string_view cause_name(InterruptCause c) {
    switch (c) {
        case InterruptCause::PerPacket: return "per_packet";
        case InterruptCause::CounterThreshold: return "counter";
        case InterruptCause::TimerExpiry: return "timer";
        case InterruptCause::EndFlush: return "flush";
    }
    return "unknown";
}

void NicConfig::validate() const {
    irqsim::validate(mode);
    delays.validate(allow_zero_cost);
}

Nanos isr_duration(const DelayModel& delays, std::span<const Packet> batch) {
    if (batch.empty()) throw std::invalid_argument("isr_duration: empty batch");
    return batch_cost(delays.isr_per_byte, delays.isr_constant, batch);
}

Nanos rx_duration(const DelayModel& delays, std::span<const Packet> batch) {
    if (batch.empty()) throw std::invalid_argument("rx_duration: empty batch");
    return batch_cost(delays.rx_per_byte, delays.rx_constant, batch);
}

Moderator::Moderator(ModerationMode mode)
    : mode_(mode), threshold_(counter_threshold(mode)), delay_(timer_delay(mode)) {
    irqsim::validate(mode_);
}

void Moderator::emit(Nanos when, InterruptCause cause, std::vector<InterruptEvent>& out) {
    out.push_back(InterruptEvent{when, cause, std::move(buffer_)});
    buffer_.clear();
    deadline_.reset();
}

void Moderator::on_arrival(const Packet& p, std::vector<InterruptEvent>& out) {
    if (seen_any_ && p.arrival_time < last_arrival_) {
        throw std::invalid_argument("moderator: arrivals out of order");
    }
    seen_any_ = true;
    last_arrival_ = p.arrival_time;

    if (std::holds_alternative<mode::Simple>(mode_)) {
        out.push_back(InterruptEvent{p.arrival_time, InterruptCause::PerPacket, {p}});
        return;
    }
    if (deadline_ && *deadline_ < p.arrival_time) emit(*deadline_, InterruptCause::TimerExpiry, out);

    buffer_.push_back(p);
    if (threshold_ && buffer_.size() >= *threshold_) {
        emit(p.arrival_time, InterruptCause::CounterThreshold, out);
        return;
    }
    if (delay_) deadline_ = checked_add(p.arrival_time, *delay_, "timer deadline");
}

std::size_t Moderator::finish(EndPolicy policy, std::vector<InterruptEvent>& out) {
    if (deadline_) {
        emit(*deadline_, InterruptCause::TimerExpiry, out);
        return 0;
    }
    if (buffer_.empty()) return 0;
    if (policy == EndPolicy::Flush) {
        emit(last_arrival_, InterruptCause::EndFlush, out);
        return 0;
    }
    const std::size_t dropped = buffer_.size();
    buffer_.clear();
    return dropped;
}

ModerationOutcome moderate(const ModerationMode& mode, const Trace& trace, EndPolicy end_policy) {
    Moderator nic(mode);
    ModerationOutcome outcome;
    outcome.events.reserve(trace.size());
    for (const auto& p : trace.packets()) nic.on_arrival(p, outcome.events);
    outcome.dropped = nic.finish(end_policy, outcome.events);
    return outcome;
}

}  // namespace irqsim
