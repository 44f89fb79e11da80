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

#include "irqsim/pcap.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>

namespace irqsim {

namespace {

constexpr std::uint32_t kMagicMicro = 0xA1B2C3D4;
constexpr std::uint32_t kMagicNano = 0xA1B23C4D;
constexpr std::uint32_t kMagicPcapng = 0x0A0D0D0A;
constexpr std::size_t kGlobalHeaderSize = 24;
constexpr std::size_t kRecordHeaderSize = 16;

std::uint32_t load_u32(std::span<const std::byte> b, std::size_t at, Endianness e) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto byte = std::to_integer<std::uint32_t>(b[at + i]);
        v |= e == Endianness::Little ? byte << (8 * i) : byte << (8 * (3 - i));
    }
    return v;
}

std::uint16_t load_u16(std::span<const std::byte> b, std::size_t at, Endianness e) {
    const auto lo = std::to_integer<std::uint16_t>(b[at]);
    const auto hi = std::to_integer<std::uint16_t>(b[at + 1]);
    return e == Endianness::Little ? static_cast<std::uint16_t>(lo | (hi << 8))
                                   : static_cast<std::uint16_t>((lo << 8) | hi);
}

void store_u32(std::vector<std::byte>& out, std::uint32_t v, Endianness e) {
    for (std::size_t i = 0; i < 4; ++i) {
        const std::size_t shift = e == Endianness::Little ? 8 * i : 8 * (3 - i);
        out.push_back(static_cast<std::byte>((v >> shift) & 0xFF));
    }
}

void store_u16(std::vector<std::byte>& out, std::uint16_t v, Endianness e) {
    const auto lo = static_cast<std::byte>(v & 0xFF);
    const auto hi = static_cast<std::byte>(v >> 8);
    if (e == Endianness::Little) {
        out.push_back(lo);
        out.push_back(hi);
    } else {
        out.push_back(hi);
        out.push_back(lo);
    }
}

}  // namespace

PcapError::PcapError(PcapErrorKind kind, std::string message, bool pcapng, std::size_t record_index,
                     std::size_t byte_offset)
    : std::runtime_error(std::move(message)),
      kind_(kind),
      pcapng_(pcapng),
      record_index_(record_index),
      byte_offset_(byte_offset) {}

ParsedPcap parse_pcap(std::span<const std::byte> bytes, std::string origin) {
    if (bytes.size() < 4) {
        throw PcapError(PcapErrorKind::TruncatedHeader, "pcap: file shorter than the magic number");
    }

    ParsedPcap out;
    const std::uint32_t magic_le = load_u32(bytes, 0, Endianness::Little);
    const std::uint32_t magic_be = load_u32(bytes, 0, Endianness::Big);
    if (magic_le == kMagicMicro || magic_le == kMagicNano) {
        out.meta.endianness = Endianness::Little;
        out.meta.time_resolution = magic_le == kMagicNano ? TimeResolution::Nanosecond : TimeResolution::Microsecond;
    } else if (magic_be == kMagicMicro || magic_be == kMagicNano) {
        out.meta.endianness = Endianness::Big;
        out.meta.time_resolution = magic_be == kMagicNano ? TimeResolution::Nanosecond : TimeResolution::Microsecond;
    } else if (magic_le == kMagicPcapng) {
        // Section header block type is a palindrome, so byte order does not matter.
        throw PcapError(PcapErrorKind::UnknownMagic, "pcapng unsupported: convert to classic pcap first", true);
    } else {
        char hex[11];
        std::snprintf(hex, sizeof hex, "0x%08X", magic_be);
        throw PcapError(PcapErrorKind::UnknownMagic, std::string("pcap: unknown magic number ") + hex);
    }

    if (bytes.size() < kGlobalHeaderSize) {
        throw PcapError(PcapErrorKind::TruncatedHeader,
                        "pcap: global header truncated (" + std::to_string(bytes.size()) + " of 24 bytes)");
    }
    const Endianness e = out.meta.endianness;
    out.meta.version_major = load_u16(bytes, 4, e);
    out.meta.version_minor = load_u16(bytes, 6, e);
    out.meta.snaplen = load_u32(bytes, 16, e);
    out.meta.link_type = load_u32(bytes, 20, e);

    const Nanos frac_scale = out.meta.time_resolution == TimeResolution::Microsecond ? kNanosPerMicro : 1;

    // Absolute timestamps in file order; normalised once the minimum is known.
    std::vector<Packet> absolute;
    std::size_t offset = kGlobalHeaderSize;
    std::size_t index = 0;
    Nanos latest = std::numeric_limits<Nanos>::min();
    while (offset < bytes.size()) {
        if (bytes.size() - offset < kRecordHeaderSize) {
            throw PcapError(PcapErrorKind::TruncatedRecord,
                            "pcap: record " + std::to_string(index) + " header truncated at byte offset " +
                                std::to_string(offset),
                            false, index, offset);
        }
        const std::uint32_t ts_sec = load_u32(bytes, offset, e);
        const std::uint32_t ts_frac = load_u32(bytes, offset + 4, e);
        const std::uint32_t incl_len = load_u32(bytes, offset + 8, e);
        const std::uint32_t orig_len = load_u32(bytes, offset + 12, e);
        if (bytes.size() - offset - kRecordHeaderSize < incl_len) {
            throw PcapError(PcapErrorKind::TruncatedRecord,
                            "pcap: record " + std::to_string(index) + " data truncated at byte offset " +
                                std::to_string(offset),
                            false, index, offset);
        }
        offset += kRecordHeaderSize + incl_len;
        ++index;

        if (orig_len == 0) {
            ++out.skipped_zero_length;
            continue;
        }
        const Nanos ts = static_cast<Nanos>(ts_sec) * kNanosPerSecond + static_cast<Nanos>(ts_frac) * frac_scale;
        if (ts < latest) ++out.reordered;
        latest = std::max(latest, ts);
        absolute.push_back({ts, orig_len});
    }
    out.records = index;

    if (!absolute.empty()) {
        const Nanos base = std::min_element(absolute.begin(), absolute.end(), [](const Packet& a, const Packet& b) {
                               return a.arrival_time < b.arrival_time;
                           })->arrival_time;
        for (auto& p : absolute) p.arrival_time -= base;
        std::stable_sort(absolute.begin(), absolute.end(),
                         [](const Packet& a, const Packet& b) { return a.arrival_time < b.arrival_time; });
    }
    out.trace = Trace(std::move(absolute), FileSource{FileSource::Kind::Pcap, std::move(origin)});
    return out;
}

ParsedPcap read_pcap_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open capture file '" + path.string() + "'");
    std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_pcap(std::as_bytes(std::span<const char>(raw)), path.string());
}

std::vector<std::byte> write_pcap(const Trace& trace, const PcapMeta& meta, Nanos epoch) {
    const Endianness e = meta.endianness;
    std::vector<std::byte> out;
    out.reserve(kGlobalHeaderSize + trace.size() * kRecordHeaderSize);
    store_u32(out, meta.time_resolution == TimeResolution::Nanosecond ? kMagicNano : kMagicMicro, e);
    store_u16(out, meta.version_major, e);
    store_u16(out, meta.version_minor, e);
    store_u32(out, 0, e);  // thiszone
    store_u32(out, 0, e);  // sigfigs
    store_u32(out, meta.snaplen, e);
    store_u32(out, meta.link_type, e);
    for (const auto& p : trace.packets()) {
        const Nanos t = checked_add(epoch, p.arrival_time, "pcap timestamp");
        const Nanos sec = t / kNanosPerSecond;
        const Nanos sub = t % kNanosPerSecond;
        if (sec > std::numeric_limits<std::uint32_t>::max()) throw TimeOverflow("pcap ts_sec");
        const Nanos frac = meta.time_resolution == TimeResolution::Nanosecond ? sub : sub / kNanosPerMicro;
        store_u32(out, static_cast<std::uint32_t>(sec), e);
        store_u32(out, static_cast<std::uint32_t>(frac), e);
        store_u32(out, 0, e);
        store_u32(out, p.length, e);
    }
    return out;
}

PcapSummary pcap_summary(const PcapMeta& /*meta*/, const Trace& trace) {
    PcapSummary s;
    s.packet_count = trace.size();
    if (trace.empty()) return s;
    const auto packets = trace.packets();
    s.duration = packets.back().arrival_time - packets.front().arrival_time;
    if (s.packet_count >= 2 && s.duration > 0) {
        s.mean_rate_pps = static_cast<double>(s.packet_count - 1) /
                          (static_cast<double>(s.duration) / static_cast<double>(kNanosPerSecond));
    }
    s.min_length = std::numeric_limits<std::uint32_t>::max();
    double total = 0.0;
    for (const auto& p : packets) {
        s.min_length = std::min(s.min_length, p.length);
        s.max_length = std::max(s.max_length, p.length);
        total += p.length;
    }
    s.mean_length = total / static_cast<double>(s.packet_count);
    return s;
}

}  // namespace irqsim
