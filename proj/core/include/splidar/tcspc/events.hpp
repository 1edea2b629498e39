#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "splidar/common.hpp"
#include "splidar/system.hpp"

namespace splidar::tcspc {

/// One detected photon. time_ps is absolute within the pixel's dwell.
struct PhotonEvent {
  std::uint32_t pixel = 0;
  std::uint64_t time_ps = 0;

  friend bool operator==(const PhotonEvent&, const PhotonEvent&) = default;
};

inline bool event_order(const PhotonEvent& a, const PhotonEvent& b) {
  return a.pixel != b.pixel ? a.pixel < b.pixel : a.time_ps < b.time_ps;
}

/// Acquisition metadata carried with every timestamp stream.
struct StreamHeader {
  std::uint16_t version = 1;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint64_t dwell_ps = 0;
  GatingSchedule schedule;
  std::uint64_t rep_rate_millihz = 0;
  std::array<std::uint8_t, 32> config_digest{};

  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  double rep_rate_hz() const { return static_cast<double>(rep_rate_millihz) / 1000.0; }
  Picos pulse_period() const { return pulse_period_ps(rep_rate_hz()); }
};

/// Timestamp stream sorted by (pixel, time).
struct EventStream {
  StreamHeader header;
  std::vector<PhotonEvent> events;

  /// Events of one pixel, assuming sorted order.
  std::span<const PhotonEvent> pixel_events(std::uint32_t pixel) const {
    PhotonEvent lo{pixel, 0};
    PhotonEvent hi{pixel + 1, 0};
    auto b = std::lower_bound(events.begin(), events.end(), lo, event_order);
    auto e = std::lower_bound(b, events.end(), hi, event_order);
    return {events.data() + (b - events.begin()), static_cast<std::size_t>(e - b)};
  }

  /// Throws InputError naming the first offending record where the sort
  /// order, pixel range or dwell bound is violated.
  void validate() const {
    const std::size_t npix = header.pixel_count();
    for (std::size_t i = 0; i < events.size(); ++i) {
      const PhotonEvent& ev = events[i];
      if (ev.pixel >= npix)
        throw InputError("EventStream: record " + std::to_string(i) + ": pixel " +
                         std::to_string(ev.pixel) + " out of range");
      if (ev.time_ps >= header.dwell_ps)
        throw InputError("EventStream: record " + std::to_string(i) + ": time beyond dwell");
      if (i > 0 && !event_order(events[i - 1], ev) && !(events[i - 1] == ev))
        throw InputError("EventStream: record " + std::to_string(i) + ": not sorted by (pixel, time)");
    }
  }
};

}  // namespace splidar::tcspc
