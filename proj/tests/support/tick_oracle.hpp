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

// Brute-force reference for the engine: advances virtual time one nanosecond
// at a time and re-derives moderation, service queueing and workload
// progress from first principles. Shares no code with the event engine
// beyond the input types. Only suitable for small instances.

#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "irqsim/nic.hpp"
#include "irqsim/trace.hpp"

namespace irqsim::testing {

struct OracleResult {
    Nanos execution_time = 0;
    std::uint64_t interrupt_count = 0;
    std::array<std::uint64_t, 4> cause_counts{};
    Nanos stolen_isr = 0;
    Nanos stolen_rx = 0;
    std::vector<Nanos> latencies;
    std::uint64_t dropped_packets = 0;
    std::vector<Nanos> fire_times;
};

inline OracleResult tick_oracle(const Trace& trace, const NicConfig& nic, Nanos required_compute) {
    struct Pending {
        Nanos fire;
        int cause;
        std::vector<Packet> batch;
    };

    const auto& m = nic.mode;
    std::optional<std::uint64_t> k;
    std::optional<Nanos> d;
    bool simple = false;
    switch (m.index()) {
        case 0: simple = true; break;
        case 1: k = std::get<1>(m).threshold; break;
        case 2: d = std::get<2>(m).delay; break;
        case 3: k = std::get<3>(m).threshold; d = std::get<3>(m).delay; break;
    }
    const auto& dm = nic.delays;

    OracleResult r;
    const auto pk = trace.packets();
    std::size_t next = 0;
    std::vector<Packet> buffer;
    std::optional<Nanos> deadline;
    std::deque<Pending> queue;
    bool ended = false;  // end-of-trace handling done

    std::optional<Pending> serving;
    Nanos serve_left = 0;

    Nanos progress = 0;
    std::optional<Nanos> done = required_compute == 0 ? std::optional<Nanos>(0) : std::nullopt;

    auto fire = [&](Nanos t, int cause) {
        queue.push_back({t, cause, buffer});
        buffer.clear();
        deadline.reset();
    };
    auto cost = [&](const std::vector<Packet>& b, Nanos per_byte, Nanos constant) {
        Nanos sum = constant;
        for (const auto& p : b) sum += per_byte * p.length;
        return sum;
    };
    auto complete = [&](const Pending& ev, Nanos at) {
        ++r.interrupt_count;
        ++r.cause_counts[static_cast<std::size_t>(ev.cause)];
        r.fire_times.push_back(ev.fire);
        for (const auto& p : ev.batch) r.latencies.push_back(at - p.arrival_time);
    };

    for (Nanos t = 0;; ++t) {
        // Arrivals at t (processed before a timer expiring at t).
        while (next < pk.size() && pk[next].arrival_time == t) {
            const Packet p = pk[next++];
            if (simple) {
                buffer.push_back(p);
                fire(t, 0);
                continue;
            }
            buffer.push_back(p);
            if (k && buffer.size() == *k) {
                fire(t, 1);
            } else if (d) {
                deadline = t + *d;
            }
        }
        if (deadline && *deadline == t) fire(t, 2);
        if (!ended && next == pk.size() && (pk.empty() || pk.back().arrival_time <= t)) {
            ended = true;
            if (!deadline && !buffer.empty()) {
                if (nic.end_policy == EndPolicy::Flush) {
                    fire(t, 3);
                } else {
                    r.dropped_packets += buffer.size();
                    buffer.clear();
                }
            }
        }

        // Start service; zero-length services complete on the spot.
        while (!serving && !queue.empty()) {
            Pending ev = std::move(queue.front());
            queue.pop_front();
            const Nanos isr = cost(ev.batch, dm.isr_per_byte, dm.isr_constant);
            const Nanos rx = cost(ev.batch, dm.rx_per_byte, dm.rx_constant);
            r.stolen_isr += isr;
            r.stolen_rx += rx;
            if (isr + rx == 0) {
                complete(ev, t);
            } else {
                serving = std::move(ev);
                serve_left = isr + rx;
            }
        }

        // Tick [t, t + 1).
        if (serving) {
            if (--serve_left == 0) {
                complete(*serving, t + 1);
                serving.reset();
            }
        } else if (!done) {
            if (++progress == required_compute) done = t + 1;
        }

        if (done && ended && !deadline && queue.empty() && !serving) break;
    }
    r.execution_time = *done;
    return r;
}

}  // namespace irqsim::testing
