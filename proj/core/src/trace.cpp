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

#include "irqsim/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "irqsim/rng.hpp"

namespace irqsim {

void UniformLoadSpec::validate() const {
    if (period < 1) throw std::invalid_argument("uniform load: period must be >= 1 ns");
    if (length < 1) throw std::invalid_argument("uniform load: length must be >= 1 byte");
    if (start_offset < 0) throw std::invalid_argument("uniform load: start_offset must be >= 0");
}

void PoissonLoadSpec::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("poisson load: lambda must be a positive finite rate");
    }
    if (length < 1) throw std::invalid_argument("poisson load: length must be >= 1 byte");
}

Trace::Trace(std::vector<Packet> packets, TraceSource source)
    : packets_(std::move(packets)), source_(std::move(source)) {
    for (std::size_t i = 0; i < packets_.size(); ++i) {
        const auto& p = packets_[i];
        if (p.arrival_time < 0) throw std::invalid_argument("trace: negative arrival time");
        if (p.length < 1) throw std::invalid_argument("trace: zero-length packet");
        if (i > 0 && p.arrival_time < packets_[i - 1].arrival_time) {
            throw std::invalid_argument("trace: packets not sorted by arrival time");
        }
    }
}

Trace generate_uniform(const UniformLoadSpec& spec) {
    spec.validate();
    std::vector<Packet> packets;
    packets.reserve(spec.count);
    for (std::uint64_t i = 0; i < spec.count; ++i) {
        const Nanos offset = checked_mul(static_cast<Nanos>(i), spec.period, "uniform arrival");
        packets.push_back({checked_add(spec.start_offset, offset, "uniform arrival"), spec.length});
    }
    return Trace(std::move(packets), spec);
}

Nanos poisson_gap(double u, double lambda) {
    if (!(u > 0.0) || u > 1.0) throw std::invalid_argument("poisson gap: u must lie in (0, 1]");
    const double ns = -std::log(u) / lambda * static_cast<double>(kNanosPerSecond);
    const double rounded = std::floor(ns + 0.5);
    if (rounded >= static_cast<double>(std::numeric_limits<Nanos>::max())) {
        throw TimeOverflow("poisson gap");
    }
    return static_cast<Nanos>(rounded);
}

Trace generate_poisson(const PoissonLoadSpec& spec) {
    spec.validate();
    Xoshiro256StarStar rng(spec.seed);
    std::vector<Packet> packets;
    packets.reserve(spec.count);
    Nanos now = 0;
    for (std::uint64_t i = 0; i < spec.count; ++i) {
        now = checked_add(now, poisson_gap(rng.next_open_unit(), spec.lambda), "poisson arrival");
        packets.push_back({now, spec.length});
    }
    return Trace(std::move(packets), spec);
}

std::uint64_t Histogram::total() const noexcept {
    std::uint64_t sum = underflow + overflow;
    for (auto c : counts) sum += c;
    return sum;
}

Histogram interarrival_histogram(const Trace& trace, std::span<const Nanos> bin_edges) {
    if (bin_edges.size() < 2) throw std::invalid_argument("histogram: need at least two bin edges");
    if (std::adjacent_find(bin_edges.begin(), bin_edges.end(), std::greater_equal<>{}) != bin_edges.end()) {
        throw std::invalid_argument("histogram: bin edges must be strictly ascending");
    }
    Histogram h;
    h.edges.assign(bin_edges.begin(), bin_edges.end());
    h.counts.assign(bin_edges.size() - 1, 0);
    const auto packets = trace.packets();
    for (std::size_t i = 1; i < packets.size(); ++i) {
        const Nanos gap = packets[i].arrival_time - packets[i - 1].arrival_time;
        if (gap < bin_edges.front()) {
            ++h.underflow;
        } else if (gap >= bin_edges.back()) {
            ++h.overflow;
        } else {
            // upper_bound finds the first edge > gap; the bin is the one before it.
            const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), gap);
            ++h.counts[static_cast<std::size_t>(it - bin_edges.begin()) - 1];
        }
    }
    return h;
}

std::vector<Nanos> log_spaced_edges(Nanos first, Nanos last, std::size_t bins) {
    if (first < 1 || last <= first || bins < 1) {
        throw std::invalid_argument("log_spaced_edges: need 1 <= first < last and bins >= 1");
    }
    const double lo = std::log(static_cast<double>(first));
    const double hi = std::log(static_cast<double>(last));
    std::vector<Nanos> edges;
    edges.reserve(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
        Nanos e = static_cast<Nanos>(std::llround(std::exp(x)));
        if (i == 0) e = first;
        if (i == bins) e = last;
        if (edges.empty() || e > edges.back()) edges.push_back(e);
    }
    return edges;
}

namespace {

struct DescribeVisitor {
    std::string operator()(std::monostate) const { return "unspecified"; }
    std::string operator()(const UniformLoadSpec& s) const {
        std::ostringstream os;
        os << "uniform period_ns=" << s.period << " count=" << s.count << " length_bytes=" << s.length
           << " start_offset_ns=" << s.start_offset;
        return os.str();
    }
    std::string operator()(const PoissonLoadSpec& s) const {
        std::ostringstream os;
        os.precision(17);
        os << "poisson lambda_pps=" << s.lambda << " count=" << s.count << " length_bytes=" << s.length
           << " seed=" << s.seed;
        return os.str();
    }
    std::string operator()(const FileSource& s) const {
        return (s.kind == FileSource::Kind::Pcap ? "pcap " : "trace ") + s.path;
    }
};

}  // namespace

std::string describe(const TraceSource& source) { return std::visit(DescribeVisitor{}, source); }

}  // namespace irqsim
