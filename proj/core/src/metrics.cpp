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

#include "irqsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace irqsim {

std::optional<CauseRatio> cause_ratio(const SimulationResult& result) {
    if (result.interrupt_count == 0) return std::nullopt;
    const auto n = static_cast<double>(result.interrupt_count);
    const auto frac = [&](InterruptCause c) { return static_cast<double>(result.cause_count(c)) / n; };
    return CauseRatio{
        frac(InterruptCause::CounterThreshold),
        frac(InterruptCause::TimerExpiry),
        frac(InterruptCause::PerPacket),
        frac(InterruptCause::EndFlush),
    };
}

Nanos nearest_rank(std::span<const Nanos> sorted, unsigned percent) {
    if (sorted.empty()) throw std::invalid_argument("nearest_rank: empty sequence");
    if (percent > 100) throw std::invalid_argument("nearest_rank: percent must be <= 100");
    const std::size_t n = sorted.size();
    std::size_t rank = (static_cast<std::size_t>(percent) * n + 99) / 100;
    rank = std::clamp<std::size_t>(rank, 1, n);
    return sorted[rank - 1];
}

std::optional<LatencySummary> latency_summary(std::span<const Nanos> latencies) {
    if (latencies.empty()) return std::nullopt;
    std::vector<Nanos> sorted(latencies.begin(), latencies.end());
    std::sort(sorted.begin(), sorted.end());
    // Integer sum first so the mean does not depend on summation order.
    Nanos total = 0;
    for (auto v : sorted) total = checked_add(total, v, "latency sum");
    LatencySummary s;
    s.mean = static_cast<double>(total) / static_cast<double>(sorted.size());
    s.p50 = nearest_rank(sorted, 50);
    s.p95 = nearest_rank(sorted, 95);
    s.max = sorted.back();
    return s;
}

std::optional<LatencySummary> latency_summary(const SimulationResult& result) {
    return latency_summary(result.latencies);
}

ScalarMetrics scalars(const SimulationResult& result) {
    ScalarMetrics m;
    m.execution_time = result.execution_time;
    m.interrupt_count = result.interrupt_count;
    m.cause_counts = result.cause_counts;
    m.stolen_isr = result.stolen_isr;
    m.stolen_rx = result.stolen_rx;
    m.dropped_packets = result.dropped_packets;
    m.causes = cause_ratio(result);
    m.latency = latency_summary(result);
    return m;
}

std::optional<Stat> summarize(std::span<const double> values) {
    if (values.empty()) return std::nullopt;
    Stat s;
    s.samples = values.size();
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

namespace {

std::optional<Stat> collect(const std::vector<ScalarMetrics>& samples,
                            const std::function<std::optional<double>(const ScalarMetrics&)>& get) {
    std::vector<double> values;
    values.reserve(samples.size());
    for (const auto& s : samples) {
        if (auto v = get(s)) values.push_back(*v);
    }
    return summarize(values);
}

}  // namespace

Stat SweepCell::execution_time() const {
    return collect(samples, [](const ScalarMetrics& m) { return static_cast<double>(m.execution_time); })
        .value_or(Stat{});
}

Stat SweepCell::interrupt_count() const {
    return collect(samples, [](const ScalarMetrics& m) { return static_cast<double>(m.interrupt_count); })
        .value_or(Stat{});
}

std::optional<Stat> SweepCell::counter_fraction() const {
    return collect(samples, [](const ScalarMetrics& m) -> std::optional<double> {
        if (!m.causes) return std::nullopt;
        return m.causes->counter_fraction;
    });
}

std::optional<Stat> SweepCell::mean_latency() const {
    return collect(samples, [](const ScalarMetrics& m) -> std::optional<double> {
        if (!m.latency) return std::nullopt;
        return m.latency->mean;
    });
}

const SweepCell& SweepTable::at(std::span<const std::size_t> index) const {
    if (index.size() != axes.size()) throw std::out_of_range("sweep table: wrong number of indices");
    std::size_t flat = 0;
    for (std::size_t a = 0; a < axes.size(); ++a) {
        if (index[a] >= axes[a].values.size()) throw std::out_of_range("sweep table: index out of range");
        flat = flat * axes[a].values.size() + index[a];
    }
    return cells.at(flat);
}

namespace {

// Coordinates of a grid point along each present axis, in enumeration order.
struct Presence {
    bool threshold, delay, lambda, seed;
    bool operator==(const Presence&) const = default;
};

Presence presence_of(const GridPoint& p) {
    return {p.counter_threshold.has_value(), p.timer_delay.has_value(), p.lambda.has_value(), p.seed.has_value()};
}

std::vector<double> coords_of(const GridPoint& p, bool include_seed) {
    std::vector<double> c;
    if (p.counter_threshold) c.push_back(static_cast<double>(*p.counter_threshold));
    if (p.timer_delay) c.push_back(static_cast<double>(*p.timer_delay));
    if (p.lambda) c.push_back(*p.lambda);
    if (include_seed && p.seed) c.push_back(static_cast<double>(*p.seed));
    return c;
}

}  // namespace

SweepTable tabulate(std::span<const SweepEntry> entries, SeedHandling seeds) {
    SweepTable table;
    if (entries.empty()) return table;

    const Presence shape = presence_of(entries.front().point);
    std::vector<std::string> names;
    if (shape.threshold) names.emplace_back("counter_threshold");
    if (shape.delay) names.emplace_back("timer_delay_ns");
    if (shape.lambda) names.emplace_back("lambda_pps");
    const bool seed_axis = shape.seed && seeds == SeedHandling::PerSeed;
    if (seed_axis) names.emplace_back("seed");

    // Distinct values per axis in first-seen order.
    table.axes.resize(names.size());
    for (std::size_t a = 0; a < names.size(); ++a) table.axes[a].name = names[a];
    std::vector<double> seed_values;
    for (const auto& e : entries) {
        if (!(presence_of(e.point) == shape)) throw std::invalid_argument("tabulate: dimension mismatch");
        const auto c = coords_of(e.point, seed_axis);
        for (std::size_t a = 0; a < c.size(); ++a) {
            auto& vals = table.axes[a].values;
            if (std::find(vals.begin(), vals.end(), c[a]) == vals.end()) vals.push_back(c[a]);
        }
        if (shape.seed && !seed_axis) {
            const auto s = static_cast<double>(*e.point.seed);
            if (std::find(seed_values.begin(), seed_values.end(), s) == seed_values.end()) seed_values.push_back(s);
        }
    }

    std::size_t cell_count = 1;
    for (const auto& ax : table.axes) cell_count *= ax.values.size();
    const std::size_t per_cell = shape.seed && !seed_axis ? seed_values.size() : 1;
    if (cell_count * per_cell != entries.size()) throw std::invalid_argument("tabulate: dimension mismatch");

    table.cells.resize(cell_count);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        auto& cell = table.cells[i / per_cell];
        const auto c = coords_of(e.point, seed_axis);
        // Entries must arrive in row-major order; verify against the axes.
        std::size_t expect = i / per_cell;
        std::vector<double> expected(table.axes.size());
        for (std::size_t a = table.axes.size(); a-- > 0;) {
            expected[a] = table.axes[a].values[expect % table.axes[a].values.size()];
            expect /= table.axes[a].values.size();
        }
        if (c != expected) throw std::invalid_argument("tabulate: dimension mismatch");
        cell.coords = c;
        if (shape.seed) cell.seeds.push_back(*e.point.seed);
        cell.samples.push_back(scalars(e.result));
    }
    return table;
}

}  // namespace irqsim
