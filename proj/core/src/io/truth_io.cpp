#include "splidar/io/truth_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "splidar/io/atomic_file.hpp"

namespace splidar::io {

namespace {
constexpr const char* kHeader =
    "pixel,nonempty,pulses,"
    "arrived_signal,arrived_ambient,arrived_dcr,arrived_ase,arrived_backscatter,"
    "gated_signal,gated_ambient,gated_dcr,gated_ase,gated_backscatter,"
    "recorded_signal,recorded_ambient,recorded_dcr,recorded_ase,recorded_backscatter,"
    "lost_dead_time";
constexpr std::size_t kColumns = 19;
}  // namespace

void write_truth(const std::filesystem::path& path, const sim::SimulatedTruth& truth) {
  AtomicWriter w(path);
  std::ofstream& out = w.stream();
  out << "# width=" << truth.width << " height=" << truth.height << "\n" << kHeader << "\n";
  char line[512];
  for (std::size_t p = 0; p < truth.pixels.size(); ++p) {
    const sim::PixelLedger& l = truth.pixels[p];
    std::snprintf(line, sizeof line,
                  "%zu,%d,%" PRIu64
                  ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                  ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                  ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64,
                  p, l.nonempty ? 1 : 0, l.pulses, l.arrivals[0], l.arrivals[1], l.arrivals[2],
                  l.arrivals[3], l.arrivals[4], l.gated[0], l.gated[1], l.gated[2], l.gated[3],
                  l.gated[4], l.recorded[0], l.recorded[1], l.recorded[2], l.recorded[3],
                  l.recorded[4], l.lost_dead_time);
    out << line << "\n";
  }
  w.commit();
}

sim::SimulatedTruth read_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path.string());
  sim::SimulatedTruth truth;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# width=", 0) != 0)
    throw InputError(path.string() + ": missing dimension comment");
  if (std::sscanf(line.c_str(), "# width=%u height=%u", &truth.width, &truth.height) != 2)
    throw InputError(path.string() + ": malformed dimension comment");
  if (!std::getline(in, line) || line != kHeader)
    throw InputError(path.string() + ": unexpected column header");

  truth.pixels.resize(static_cast<std::size_t>(truth.width) * truth.height);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::array<std::uint64_t, kColumns> v{};
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= kColumns)
        throw InputError(path.string() + ": too many columns in row " + std::to_string(rows));
      v[col++] = std::strtoull(cell.c_str(), nullptr, 10);
    }
    if (col != kColumns)
      throw InputError(path.string() + ": short row " + std::to_string(rows));
    if (v[0] >= truth.pixels.size())
      throw InputError(path.string() + ": pixel index out of range in row " +
                       std::to_string(rows));
    sim::PixelLedger& l = truth.pixels[v[0]];
    l.nonempty = v[1] != 0;
    l.pulses = v[2];
    for (std::size_t s = 0; s < sim::kSourceCount; ++s) {
      l.arrivals[s] = v[3 + s];
      l.gated[s] = v[8 + s];
      l.recorded[s] = v[13 + s];
    }
    l.lost_dead_time = v[18];
    ++rows;
  }
  if (rows != truth.pixels.size())
    throw InputError(path.string() + ": row count disagrees with dimensions");
  return truth;
}

}  // namespace splidar::io
