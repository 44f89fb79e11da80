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

// Regenerates the replay fixtures in data/: a bursty capture (packets in
// tight trains separated by long pauses) and a continuous capture (steady,
// lightly jittered arrivals). Both hold the same packet lengths in the same
// order, so packet count and total bytes match.
//
// usage: irqsim_make_fixtures <output-dir>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "irqsim/pcap.hpp"
#include "irqsim/rng.hpp"

using namespace irqsim;

namespace {

constexpr std::size_t kPackets = 2000;
constexpr std::size_t kBurst = 40;

std::vector<std::uint32_t> lengths(Xoshiro256StarStar& rng) {
    static constexpr std::uint32_t mix[] = {66, 74, 590, 1078, 1242, 1434, 1514};
    std::vector<std::uint32_t> out(kPackets);
    for (auto& l : out) l = mix[rng.next() % std::size(mix)];
    return out;
}

Trace bursty(const std::vector<std::uint32_t>& len, Xoshiro256StarStar& rng) {
    std::vector<Packet> p;
    Nanos t = 0;
    for (std::size_t i = 0; i < kPackets; ++i) {
        if (i % kBurst == 0 && i > 0) {
            t += 35'000'000 + static_cast<Nanos>(rng.next() % 10'000'000);  // 35-45 ms pause
        } else if (i > 0) {
            t += poisson_gap(rng.next_open_unit(), 80'000.0);  // ~12.5 us mean inside a train
        }
        p.push_back({t, len[i]});
    }
    return Trace(std::move(p), {});
}

Trace continuous(const std::vector<std::uint32_t>& len, Xoshiro256StarStar& rng) {
    std::vector<Packet> p;
    Nanos t = 0;
    for (std::size_t i = 0; i < kPackets; ++i) {
        if (i > 0) t += 800'000 + static_cast<Nanos>(rng.next() % 400'000);  // 0.8-1.2 ms
        p.push_back({t, len[i]});
    }
    return Trace(std::move(p), {});
}

void save(const std::filesystem::path& path, const Trace& trace) {
    PcapMeta meta;
    meta.time_resolution = TimeResolution::Microsecond;
    // Captures start at 2021-01-07 00:00:00 UTC.
    const auto bytes = write_pcap(trace, meta, 1'609'977'600LL * kNanosPerSecond);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: irqsim_make_fixtures <output-dir>\n";
        return 1;
    }
    const std::filesystem::path dir(argv[1]);
    Xoshiro256StarStar rng(20210107);
    const auto len = lengths(rng);
    save(dir / "bursty.pcap", bursty(len, rng));
    save(dir / "continuous.pcap", continuous(len, rng));
    std::cout << "wrote " << (dir / "bursty.pcap").string() << " and " << (dir / "continuous.pcap").string() << '\n';
    return 0;
}
