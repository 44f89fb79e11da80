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

#include <random>

#include "doctest.h"
#include "irqsim/engine.hpp"
#include "random_instance.hpp"
#include "tick_oracle.hpp"

using namespace irqsim;

TEST_CASE("single interrupt is additive") {
    const Trace trace({{100, 10}}, {});
    NicConfig nic{mode::Simple{}, {0, 20, 0, 30}, EndPolicy::Flush};
    const auto r = simulate(trace, nic, {1000});
    CHECK(r.execution_time == 1050);
    CHECK(r.interrupt_count == 1);
    CHECK(r.stolen_isr == 20);
    CHECK(r.stolen_rx == 30);
    CHECK(r.latencies == std::vector<Nanos>{50});
}

TEST_CASE("empty trace leaves the workload untouched") {
    NicConfig nic{mode::Timer{10}, {1, 1, 1, 1}, EndPolicy::Flush};
    const auto r = simulate(Trace{}, nic, {12345});
    CHECK(r.execution_time == 12345);
    CHECK(r.interrupt_count == 0);
    CHECK(r.latencies.empty());
}

TEST_CASE("uniform simple load is linear") {
    const std::uint64_t n = 50;
    const auto trace = generate_uniform({1000, n, 100, 0});
    NicConfig nic{mode::Simple{}, {1, 20, 2, 30}, EndPolicy::Flush};
    const Nanos per = 20 + 100 + 30 + 200;
    const auto r = simulate(trace, nic, {1'000'000});
    CHECK(r.execution_time == 1'000'000 + static_cast<Nanos>(n) * per);
    CHECK(r.stolen_before_completion == static_cast<Nanos>(n) * per);
}

TEST_CASE("interrupts after completion are serviced but not charged") {
    const Trace trace({{10, 1}, {5000, 1}}, {});
    NicConfig nic{mode::Simple{}, {0, 100, 0, 0}, EndPolicy::Flush};
    const auto r = simulate(trace, nic, {1000});
    CHECK(r.execution_time == 1100);
    CHECK(r.interrupt_count == 2);
    CHECK(r.stolen_isr == 200);
    CHECK(r.stolen_before_completion == 100);
    CHECK(r.latencies == std::vector<Nanos>{100, 100});

    const auto t = simulate(trace, nic, {1000}, {.record_events = true, .truncate_at_completion = true});
    CHECK(t.execution_time == 1100);
    CHECK(t.interrupt_count == 1);
    CHECK(t.dropped_packets == 1);
    REQUIRE(t.events);
    CHECK(t.events->size() == 1);
}

TEST_CASE("an interrupt at the completion instant does not delay it") {
    const Trace trace({{1000, 1}}, {});
    NicConfig nic{mode::Simple{}, {0, 100, 0, 0}, EndPolicy::Flush};
    CHECK(simulate(trace, nic, {1000}).execution_time == 1000);
    CHECK(simulate(trace, nic, {1001}).execution_time == 1101);
}

TEST_CASE("overlapping interrupts queue without nesting") {
    const Trace trace({{0, 1}, {10, 1}, {20, 1}}, {});
    NicConfig nic{mode::Simple{}, {0, 50, 0, 0}, EndPolicy::Flush};
    const auto r = simulate(trace, nic, {100});
    CHECK(r.execution_time == 250);
    CHECK(r.latencies == std::vector<Nanos>{50, 90, 130});
}

TEST_CASE("zero workload completes at time zero") {
    const Trace trace({{0, 1}}, {});
    NicConfig nic{mode::Simple{}, {0, 100, 0, 0}, EndPolicy::Flush};
    const auto r = simulate(trace, nic, {0});
    CHECK(r.execution_time == 0);
    CHECK(r.interrupt_count == 1);
}

TEST_CASE("invalid configurations are rejected") {
    NicConfig zero{mode::Simple{}, {}, EndPolicy::Flush};
    CHECK_THROWS_AS(simulate(Trace{}, zero, {10}), std::invalid_argument);
    zero.allow_zero_cost = true;
    CHECK_NOTHROW(simulate(Trace{}, zero, {10}));
    NicConfig ok{mode::Simple{}, {0, 1, 0, 0}, EndPolicy::Flush};
    CHECK_THROWS_AS(simulate(Trace{}, ok, {-1}), std::invalid_argument);
}

TEST_CASE("virtual time overflow is detected") {
    const Trace trace({{std::numeric_limits<Nanos>::max() - 5, 1}}, {});
    NicConfig nic{mode::Timer{100}, {0, 1, 0, 0}, EndPolicy::Flush};
    CHECK_THROWS_AS(simulate(trace, nic, {10}), TimeOverflow);
}

TEST_CASE("event engine agrees with the tick oracle") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<Nanos> work(0, 100'000);
    for (int rep = 0; rep < 300; ++rep) {
        const Trace trace = irqsim::testing::random_trace(rng, 20, 10'000, 200);
        const NicConfig nic = irqsim::testing::random_nic(rng, 10'000, 5);
        const Nanos w = work(rng);
        const auto r = simulate(trace, nic, {w});
        const auto o = irqsim::testing::tick_oracle(trace, nic, w);
        CAPTURE(rep);
        CHECK(r.execution_time == o.execution_time);
        CHECK(r.interrupt_count == o.interrupt_count);
        CHECK(r.cause_counts == o.cause_counts);
        CHECK(r.stolen_isr == o.stolen_isr);
        CHECK(r.stolen_rx == o.stolen_rx);
        CHECK(r.latencies == o.latencies);
        CHECK(r.dropped_packets == o.dropped_packets);
    }
}

TEST_CASE("sweep grid enumeration and application") {
    SweepGrid grid{{2, 4}, {100, 200, 400}, {}, {1, 2}};
    CHECK(grid.size() == 12);
    const auto pts = enumerate(grid);
    REQUIRE(pts.size() == 12);
    CHECK(*pts[0].counter_threshold == 2);
    CHECK(*pts[0].timer_delay == 100);
    CHECK(*pts[1].seed == 2);
    CHECK(*pts[2].timer_delay == 200);
    CHECK(*pts[11].counter_threshold == 4);
    CHECK_FALSE(pts[0].lambda);

    NicConfig base{mode::Combined{1, 1}, {0, 1, 0, 0}, EndPolicy::Flush};
    const auto cfg = apply_point(base, pts[5]);
    CHECK(std::get<mode::Combined>(cfg.mode).threshold == 2);
    CHECK(std::get<mode::Combined>(cfg.mode).delay == 400);

    NicConfig timer{mode::Timer{1}, {0, 1, 0, 0}, EndPolicy::Flush};
    CHECK_THROWS_AS(apply_point(timer, pts[0]), std::invalid_argument);
}

TEST_CASE("sweep matches isolated simulation and is order-stable") {
    const PoissonLoadSpec load{20000.0, 3000, 200, 5};
    const TraceProvider provider = [&](const GridPoint& p) {
        auto spec = load;
        if (p.seed) spec.seed = *p.seed;
        if (p.lambda) spec.lambda = *p.lambda;
        return generate_poisson(spec);
    };
    NicConfig base{mode::Combined{4, 1000}, {2, 500, 3, 800}, EndPolicy::Flush};
    const WorkloadSpec work{50'000'000};

    SUBCASE("1x1 grid") {
        const auto one = simulate_sweep(provider, base, SweepGrid{{8}, {}, {}, {}}, work);
        REQUIRE(one.size() == 1);
        auto cfg = base;
        std::get<mode::Combined>(cfg.mode).threshold = 8;
        const auto direct = simulate(generate_poisson(load), cfg, work);
        CHECK(one[0].result.execution_time == direct.execution_time);
        CHECK(one[0].result.latencies == direct.latencies);
    }
    SUBCASE("timer axis is monotone") {
        NicConfig timer{mode::Timer{1}, base.delays, EndPolicy::Flush};
        const auto out = simulate_sweep(provider, timer, SweepGrid{{}, {100, 200, 400}, {}, {}}, work);
        REQUIRE(out.size() == 3);
        CHECK(out[0].result.interrupt_count >= out[1].result.interrupt_count);
        CHECK(out[1].result.interrupt_count >= out[2].result.interrupt_count);
    }
    SUBCASE("3x3 combined grid, serial and parallel") {
        const SweepGrid grid{{2, 4, 8}, {1000, 10000, 100000}, {}, {}};
        const auto serial = simulate_sweep(provider, base, grid, work, 1);
        const auto parallel = simulate_sweep(provider, base, grid, work, 8);
        REQUIRE(serial.size() == 9);
        REQUIRE(parallel.size() == 9);
        for (std::size_t i = 0; i < 9; ++i) {
            CHECK(serial[i].point.index == i);
            CHECK(parallel[i].point.index == i);
            CHECK(serial[i].result.execution_time == parallel[i].result.execution_time);
            CHECK(serial[i].result.latencies == parallel[i].result.latencies);
            const auto isolated = simulate(provider(serial[i].point), apply_point(base, serial[i].point), work);
            CHECK(isolated.execution_time == serial[i].result.execution_time);
        }
    }
    SUBCASE("point errors carry coordinates") {
        try {
            simulate_sweep(provider, base, SweepGrid{{2, 0}, {}, {}, {}}, work, 4);
            FAIL("expected throw");
        } catch (const SweepError& e) {
            CHECK(e.point().index == 1);
            CHECK(std::string(e.what()).find("counter_threshold=0") != std::string::npos);
        }
    }
}

TEST_CASE("timer delay trades interrupts for latency") {
    const auto trace = generate_poisson({50000.0, 5000, 300, 17});
    NicConfig nic{mode::Timer{1}, {1, 800, 2, 1200}, EndPolicy::Flush};
    double prev_latency = -1.0;
    std::uint64_t prev_count = std::numeric_limits<std::uint64_t>::max();
    for (Nanos d : {1'000, 3'000, 10'000, 30'000, 100'000}) {
        std::get<mode::Timer>(nic.mode).delay = d;
        const auto r = simulate(trace, nic, {1'000'000'000});
        double mean = 0;
        for (auto l : r.latencies) mean += static_cast<double>(l);
        mean /= static_cast<double>(r.latencies.size());
        CHECK(mean >= prev_latency);
        CHECK(r.interrupt_count <= prev_count);
        prev_latency = mean;
        prev_count = r.interrupt_count;
    }
}
