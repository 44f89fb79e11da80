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

#include "report.hpp"

#include <charconv>

#include "json.hpp"

namespace irqsim::cli {

std::vector<std::string> result_columns(const SweepAxes& axes) {
    std::vector<std::string> cols;
    if (axes.counter_threshold) cols.emplace_back("counter_threshold_count");
    if (axes.timer_delay) cols.emplace_back("timer_delay_ns");
    if (axes.lambda) cols.emplace_back("lambda_pps");
    for (const char* c : {"seed_id", "execution_time_ns", "interrupt_count", "cause_per_packet_count",
                          "cause_counter_count", "cause_timer_count", "cause_flush_count", "per_packet_frac",
                          "counter_frac", "timer_frac", "flush_frac", "stolen_isr_ns", "stolen_rx_ns",
                          "dropped_packets_count", "latency_mean_ns", "latency_p50_ns", "latency_p95_ns",
                          "latency_max_ns"}) {
        cols.emplace_back(c);
    }
    return cols;
}

std::vector<Field> result_row(const SweepAxes& axes, const GridPoint& point, std::uint64_t seed,
                              const SimulationResult& result) {
    std::vector<Field> row;
    if (axes.counter_threshold) row.emplace_back(*point.counter_threshold);
    if (axes.timer_delay) row.emplace_back(static_cast<std::int64_t>(*point.timer_delay));
    if (axes.lambda) row.emplace_back(*point.lambda);
    row.emplace_back(seed);
    row.emplace_back(static_cast<std::int64_t>(result.execution_time));
    row.emplace_back(result.interrupt_count);
    for (auto c : {InterruptCause::PerPacket, InterruptCause::CounterThreshold, InterruptCause::TimerExpiry,
                   InterruptCause::EndFlush}) {
        row.emplace_back(result.cause_count(c));
    }
    if (const auto r = cause_ratio(result)) {
        row.emplace_back(r->per_packet_fraction);
        row.emplace_back(r->counter_fraction);
        row.emplace_back(r->timer_fraction);
        row.emplace_back(r->flush_fraction);
    } else {
        row.insert(row.end(), 4, std::monostate{});
    }
    row.emplace_back(static_cast<std::int64_t>(result.stolen_isr));
    row.emplace_back(static_cast<std::int64_t>(result.stolen_rx));
    row.emplace_back(result.dropped_packets);
    if (const auto l = latency_summary(result)) {
        row.emplace_back(l->mean);
        row.emplace_back(static_cast<std::int64_t>(l->p50));
        row.emplace_back(static_cast<std::int64_t>(l->p95));
        row.emplace_back(static_cast<std::int64_t>(l->max));
    } else {
        row.insert(row.end(), 4, std::monostate{});
    }
    return row;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

namespace {

struct CsvField {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
};

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << std::visit(CsvField{}, row[i]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::monostate>) {
                        obj[table.columns[i]] = nullptr;
                    } else {
                        obj[table.columns[i]] = v;
                    }
                },
                row[i]);
        }
        rows.push_back(std::move(obj));
    }
    out << rows.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
    if (format == OutputFormat::Json) {
        write_json(out, table);
    } else {
        write_csv(out, table);
    }
}

std::string summary_line(const SimulationResult& r) {
    std::string s = "execution_time_ns=" + std::to_string(r.execution_time) +
                    " interrupts=" + std::to_string(r.interrupt_count) + " causes:";
    for (auto c : {InterruptCause::PerPacket, InterruptCause::CounterThreshold, InterruptCause::TimerExpiry,
                   InterruptCause::EndFlush}) {
        s += " " + std::string(cause_name(c)) + "=" + std::to_string(r.cause_count(c));
    }
    return s;
}

}  // namespace irqsim::cli
