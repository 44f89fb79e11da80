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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "irqsim/nic.hpp"
#include "random_instance.hpp"
#include "tick_oracle.hpp"

using namespace irqsim;

namespace {

Trace at(std::initializer_list<Nanos> times, std::uint32_t len = 64) {
    std::vector<Packet> p;
    for (auto t : times) p.push_back({t, len});
    return Trace(std::move(p), {});
}

std::vector<Packet> all_packets(const std::vector<InterruptEvent>& events) {
    std::vector<Packet> out;
    for (const auto& e : events) out.insert(out.end(), e.batch.begin(), e.batch.end());
    return out;
}

std::size_t count(const ModerationMode& m, const Trace& t) { return moderate(m, t, EndPolicy::Flush).events.size(); }

}  // namespace

TEST_CASE("isr and receiver costs") {
    const DelayModel dm{2, 10, 3, 5};
    const std::vector<Packet> one{{0, 5}};
    CHECK(isr_duration(dm, one) == 20);
    CHECK(isr_duration({0, 7, 0, 0}, std::vector<Packet>(4, {0, 99})) == 7);
    CHECK(isr_duration({1, 0, 0, 0}, std::vector<Packet>{{0, 10}, {0, 20}, {0, 30}}) == 60);

    CHECK(rx_duration(dm, std::vector<Packet>{{0, 2}}) == 11);
    CHECK(rx_duration({1, 1, 0, 0}, std::vector<Packet>{{0, 2}}) == 0);
    CHECK(rx_duration({0, 0, 2, 1}, std::vector<Packet>{{0, 1}, {0, 1}}) == 5);

    CHECK_THROWS_AS(isr_duration(dm, std::vector<Packet>{}), std::invalid_argument);
}

TEST_CASE("delay model validation") {
    CHECK_THROWS_AS(DelayModel{}.validate(), std::invalid_argument);
    CHECK_NOTHROW(DelayModel{}.validate(true));
    CHECK_THROWS_AS((DelayModel{-1, 5, 0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModerationMode{mode::Counter{0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModerationMode{mode::Timer{0}}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ModerationMode{mode::Combined{2, 0}}), std::invalid_argument);
}

TEST_CASE("simple mode fires per packet") {
    const auto out = moderate(mode::Simple{}, at({0, 5, 5, 90}), EndPolicy::Flush);
    REQUIRE(out.events.size() == 4);
    for (const auto& e : out.events) {
        CHECK(e.cause == InterruptCause::PerPacket);
        CHECK(e.batch.size() == 1);
        CHECK(e.fire_time == e.batch.front().arrival_time);
    }
}

TEST_CASE("counter mode divides the trace") {
    const auto out = moderate(mode::Counter{3}, generate_uniform({100, 6, 64, 0}), EndPolicy::Flush);
    REQUIRE(out.events.size() == 2);
    for (const auto& e : out.events) {
        CHECK(e.cause == InterruptCause::CounterThreshold);
        CHECK(e.batch.size() == 3);
    }
    CHECK(out.events[0].fire_time == 200);
    CHECK(out.events[1].fire_time == 500);
}

TEST_CASE("counter residual is flushed or dropped") {
    const auto trace = at({0, 10, 20, 30, 40});
    const auto flushed = moderate(mode::Counter{2}, trace, EndPolicy::Flush);
    REQUIRE(flushed.events.size() == 3);
    CHECK(flushed.events.back().cause == InterruptCause::EndFlush);
    CHECK(flushed.events.back().fire_time == 40);
    CHECK(flushed.events.back().batch.size() == 1);

    const auto dropped = moderate(mode::Counter{2}, trace, EndPolicy::Drop);
    CHECK(dropped.events.size() == 2);
    CHECK(dropped.dropped == 1);
}

TEST_CASE("timer mode re-arms on arrivals") {
    const auto trace = at({0, 50, 300});
    const auto out = moderate(mode::Timer{100}, trace, EndPolicy::Flush);
    REQUIRE(out.events.size() == 2);
    CHECK(out.events[0].fire_time == 150);
    CHECK(out.events[0].cause == InterruptCause::TimerExpiry);
    CHECK(out.events[0].batch == std::vector<Packet>{{0, 64}, {50, 64}});
    CHECK(out.events[1].fire_time == 400);
    CHECK(out.events[1].cause == InterruptCause::TimerExpiry);
    CHECK(out.events[1].batch == std::vector<Packet>{{300, 64}});

    // Same trace through the brute-force reference.
    NicConfig nic{mode::Timer{100}, {0, 1, 0, 0}, EndPolicy::Flush};
    const auto oracle = irqsim::testing::tick_oracle(trace, nic, 1000);
    CHECK(oracle.fire_times == std::vector<Nanos>{150, 400});
}

TEST_CASE("arrival at the expiry instant re-arms the timer") {
    const auto out = moderate(mode::Timer{100}, at({0, 100, 250}), EndPolicy::Flush);
    REQUIRE(out.events.size() == 2);
    CHECK(out.events[0].fire_time == 200);
    CHECK(out.events[0].batch.size() == 2);
    CHECK(out.events[1].fire_time == 350);
}

TEST_CASE("timer starvation under continuous arrivals") {
    const auto trace = generate_uniform({90, 1000, 64, 0});
    const auto out = moderate(mode::Timer{100}, trace, EndPolicy::Flush);
    REQUIRE(out.events.size() == 1);
    CHECK(out.events[0].batch.size() == 1000);
    CHECK(out.events[0].fire_time == trace.packets().back().arrival_time + 100);
}

TEST_CASE("combined mode: counter wins and cancels the timer") {
    const auto out = moderate(mode::Combined{2, 1000}, at({0, 10}), EndPolicy::Flush);
    REQUIRE(out.events.size() == 1);
    CHECK(out.events[0].fire_time == 10);
    CHECK(out.events[0].cause == InterruptCause::CounterThreshold);
    CHECK(out.events[0].batch.size() == 2);

    // k-th packet exactly at the expiry instant: counter takes it.
    const auto tie = moderate(mode::Combined{2, 100}, at({0, 100}), EndPolicy::Flush);
    REQUIRE(tie.events.size() == 1);
    CHECK(tie.events[0].cause == InterruptCause::CounterThreshold);

    // The timer breaks up a slow trickle.
    const auto slow = moderate(mode::Combined{3, 100}, at({0, 50, 400, 1000, 1010, 1020}), EndPolicy::Flush);
    REQUIRE(slow.events.size() == 3);
    CHECK(slow.events[0].cause == InterruptCause::TimerExpiry);
    CHECK(slow.events[0].fire_time == 150);
    CHECK(slow.events[1].cause == InterruptCause::TimerExpiry);
    CHECK(slow.events[1].fire_time == 500);
    CHECK(slow.events[2].cause == InterruptCause::CounterThreshold);
    CHECK(slow.events[2].fire_time == 1020);
}

TEST_CASE("timer-armed modes ignore the drop policy") {
    const auto out = moderate(mode::Timer{100}, at({0, 10}), EndPolicy::Drop);
    CHECK(out.dropped == 0);
    REQUIRE(out.events.size() == 1);
    CHECK(out.events[0].cause == InterruptCause::TimerExpiry);
}

TEST_CASE("moderator rejects out-of-order arrivals") {
    Moderator m(mode::Counter{4});
    std::vector<InterruptEvent> out;
    m.on_arrival({100, 1}, out);
    CHECK_THROWS_AS(m.on_arrival({50, 1}, out), std::invalid_argument);
}

TEST_CASE("moderation invariants on random traces") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::uint64_t> kd(1, 12);
    std::uniform_int_distribution<Nanos> dd(1, 5000);
    for (int rep = 0; rep < 500; ++rep) {
        const Trace trace = irqsim::testing::random_trace(rng, 60, 2000, 1500);
        const auto k1 = kd(rng), k2 = kd(rng);
        const auto d1 = dd(rng), d2 = dd(rng);
        const auto klo = std::min(k1, k2), khi = std::max(k1, k2);
        const auto dlo = std::min(d1, d2), dhi = std::max(d1, d2);

        // Counter{1} is Simple with a different cause label.
        const auto simple = moderate(mode::Simple{}, trace, EndPolicy::Flush).events;
        const auto c1 = moderate(mode::Counter{1}, trace, EndPolicy::Flush).events;
        REQUIRE(simple.size() == c1.size());
        CHECK(simple.size() == trace.size());
        for (std::size_t i = 0; i < simple.size(); ++i) {
            CHECK(simple[i].fire_time == c1[i].fire_time);
            CHECK(simple[i].batch == c1[i].batch);
            CHECK(c1[i].cause == InterruptCause::CounterThreshold);
        }

        for (const ModerationMode& m : {ModerationMode{mode::Counter{klo}}, ModerationMode{mode::Timer{dlo}},
                                        ModerationMode{mode::Combined{klo, dlo}}}) {
            const auto out = moderate(m, trace, EndPolicy::Flush);
            // Conservation: batches concatenate back to the trace in order.
            auto flat = all_packets(out.events);
            CHECK(flat == std::vector<Packet>(trace.packets().begin(), trace.packets().end()));
            CHECK(out.events.size() <= trace.size());
            for (std::size_t i = 0; i < out.events.size(); ++i) {
                const auto& e = out.events[i];
                CHECK_FALSE(e.batch.empty());
                CHECK(e.fire_time >= e.batch.back().arrival_time);
                if (i > 0) CHECK(e.fire_time >= out.events[i - 1].fire_time);
                if (std::holds_alternative<mode::Combined>(m)) {
                    if (e.cause == InterruptCause::CounterThreshold) CHECK(e.batch.size() == klo);
                    if (e.cause == InterruptCause::TimerExpiry) CHECK(e.batch.size() < klo);
                }
            }
        }

        CHECK(count(mode::Counter{klo}, trace) >= count(mode::Counter{khi}, trace));
        CHECK(count(mode::Timer{dlo}, trace) >= count(mode::Timer{dhi}, trace));
        CHECK(count(mode::Combined{klo, dlo}, trace) >= count(mode::Timer{dlo}, trace));
        CHECK(count(mode::Combined{klo, dlo}, trace) >= count(mode::Counter{klo}, trace));
        CHECK(count(mode::Combined{klo, dlo}, trace) >= count(mode::Combined{klo, dhi}, trace));

        // Drop keeps everything except the counter residual.
        const auto dropped = moderate(mode::Counter{khi}, trace, EndPolicy::Drop);
        CHECK(all_packets(dropped.events).size() + dropped.dropped == trace.size());
        CHECK(dropped.dropped == trace.size() % khi);
    }
}
