#pragma once

#include <filesystem>

#include "splidar/tcspc/events.hpp"

namespace splidar::io {

/// Binary timestamp stream layout, all little-endian:
///   "SPLE" | version u16 | width u32 | height u32 | dwell_ps u64 |
///   period u64 | emission u64 | isolation u64 | detection u64 |
///   rep_rate_millihz u64 | config digest (32 bytes)
/// followed by (pixel u32, time_ps u64) records sorted by (pixel, time).
inline constexpr char kEventMagic[4] = {'S', 'P', 'L', 'E'};
inline constexpr std::uint16_t kEventVersion = 1;
inline constexpr std::size_t kEventHeaderBytes = 94;
inline constexpr std::size_t kEventRecordBytes = 12;

void write_event_stream(const std::filesystem::path& path, const tcspc::EventStream& stream);

/// Validates magic, version, length consistency, field invariants and sort
/// order; errors carry the offending byte offset.
tcspc::EventStream read_event_stream(const std::filesystem::path& path);

}  // namespace splidar::io
