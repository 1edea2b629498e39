#include "splidar/tcspc/histogram.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace splidar::tcspc {

namespace {
// Header size and record stride of the stream file layout, used to report
// byte offsets for corrupt records even when the data arrived from memory.
constexpr std::size_t kHeaderBytes = 94;
constexpr std::size_t kRecordBytes = 12;
}  // namespace

std::uint64_t FoldedHistogram::total_counts() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

FoldedHistogram build_histograms(const EventStream& stream, Picos period_ps,
                                 Picos bin_width_ps, unsigned n_threads) {
  if (period_ps <= 0) throw InputError("build_histograms: period must be > 0");
  if (bin_width_ps <= 0 || bin_width_ps > period_ps)
    throw InputError("build_histograms: bin width must be in (0, period]");

  FoldedHistogram h;
  h.width = stream.header.width;
  h.height = stream.header.height;
  h.period_ps = period_ps;
  h.bin_width_ps = bin_width_ps;
  h.nbins = static_cast<std::uint32_t>((period_ps + bin_width_ps - 1) / bin_width_ps);
  const std::size_t npix = h.pixel_count();
  if (npix == 0) throw InputError("build_histograms: stream has no pixels");
  h.counts.assign(npix * h.nbins, 0);
  h.livetime_s.assign(npix, detection_livetime(stream.header.schedule,
                                               static_cast<Picos>(stream.header.dwell_ps)));

  const auto& ev = stream.events;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (ev[i].pixel >= npix)
      throw InputError("build_histograms: record " + std::to_string(i) + " (byte offset " +
                       std::to_string(kHeaderBytes + i * kRecordBytes) + "): pixel " +
                       std::to_string(ev[i].pixel) + " out of range");
  }

  auto ingest = [&](std::size_t begin, std::size_t end) {
    // Shard bounds are event indices aligned to pixel boundaries; each shard
    // then owns every count row it touches.
    for (std::size_t i = begin; i < end; ++i) {
      Picos f = fold(ev[i].time_ps, period_ps);
      h.counts[static_cast<std::size_t>(ev[i].pixel) * h.nbins + bin_of(f, bin_width_ps)]++;
    }
  };

  if (n_threads <= 1 || ev.size() < 1u << 16) {
    ingest(0, ev.size());
    return h;
  }

  std::vector<std::size_t> cuts{0};
  std::size_t target = ev.size() / n_threads;
  for (unsigned w = 1; w < n_threads; ++w) {
    std::size_t c = std::min(ev.size(), w * target);
    while (c > cuts.back() && c < ev.size() && ev[c].pixel == ev[c - 1].pixel) ++c;
    if (c > cuts.back() && c < ev.size()) cuts.push_back(c);
  }
  cuts.push_back(ev.size());
  std::vector<std::thread> pool;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) pool.emplace_back(ingest, cuts[s], cuts[s + 1]);
  for (auto& t : pool) t.join();
  return h;
}

void bin_pixel(std::span<const PhotonEvent> events, Picos period_ps, Picos bin_width_ps,
               std::vector<std::uint32_t>& out) {
  if (period_ps <= 0) throw InputError("bin_pixel: period must be > 0");
  if (bin_width_ps <= 0 || bin_width_ps > period_ps)
    throw InputError("bin_pixel: bin width must be in (0, period]");
  std::size_t nbins = static_cast<std::size_t>((period_ps + bin_width_ps - 1) / bin_width_ps);
  out.assign(nbins, 0);
  for (const PhotonEvent& e : events) out[bin_of(fold(e.time_ps, period_ps), bin_width_ps)]++;
}

double detection_livetime(const GatingSchedule& schedule, Picos dwell_ps) {
  return seconds_from_ps(detection_livetime_ps(schedule, dwell_ps));
}

double estimate_background_floor(const FoldedHistogram& hist, std::size_t pixel) {
  if (pixel >= hist.pixel_count()) throw InputError("estimate_background_floor: pixel out of range");
  if (hist.nbins < 8) throw InputError("estimate_background_floor: need at least 8 bins");
  auto row = hist.row(pixel);
  std::vector<std::uint32_t> v(row.begin(), row.end());
  std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
  return 0.5 * (hi + v[mid - 1]);
}

}  // namespace splidar::tcspc
