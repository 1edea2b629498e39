#include "splidar/io/event_file.hpp"

#include <cstring>
#include <fstream>

#include "splidar/io/atomic_file.hpp"

namespace splidar::io {

namespace {

// Little-endian field packing; the build targets little-endian hosts only
// (checked in pfm.cpp), so these are straight memcpys.
template <typename T>
void put(std::string& buf, T v) {
  char raw[sizeof(T)];
  std::memcpy(raw, &v, sizeof(T));
  buf.append(raw, sizeof(T));
}

template <typename T>
T get(const char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

[[noreturn]] void corrupt(const std::filesystem::path& path, std::size_t offset,
                          const std::string& what) {
  throw InputError(path.string() + ": byte offset " + std::to_string(offset) + ": " + what);
}

}  // namespace

void write_event_stream(const std::filesystem::path& path, const tcspc::EventStream& stream) {
  const auto& h = stream.header;
  std::string buf;
  buf.reserve(kEventHeaderBytes + stream.events.size() * kEventRecordBytes);
  buf.append(kEventMagic, sizeof kEventMagic);
  put(buf, kEventVersion);
  put(buf, h.width);
  put(buf, h.height);
  put(buf, h.dwell_ps);
  put(buf, static_cast<std::uint64_t>(h.schedule.period_ps));
  put(buf, static_cast<std::uint64_t>(h.schedule.emission_ps));
  put(buf, static_cast<std::uint64_t>(h.schedule.isolation_ps));
  put(buf, static_cast<std::uint64_t>(h.schedule.detection_ps));
  put(buf, h.rep_rate_millihz);
  buf.append(reinterpret_cast<const char*>(h.config_digest.data()), h.config_digest.size());
  if (buf.size() != kEventHeaderBytes)
    throw InputError("write_event_stream: header layout drifted");

  for (const auto& e : stream.events) {
    put(buf, e.pixel);
    put(buf, e.time_ps);
  }
  atomic_write_text(path, buf);
}

tcspc::EventStream read_event_stream(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw InputError("cannot open: " + path.string());
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::string data(static_cast<std::size_t>(size), '\0');
  if (size > 0 && !in.read(data.data(), size))
    throw InputError("read failed: " + path.string());

  if (data.size() < kEventHeaderBytes)
    corrupt(path, data.size(), "file shorter than the header");
  if (std::memcmp(data.data(), kEventMagic, sizeof kEventMagic) != 0)
    corrupt(path, 0, "bad magic (not an event stream file)");
  const auto version = get<std::uint16_t>(data.data() + 4);
  if (version != kEventVersion)
    corrupt(path, 4, "unsupported format version " + std::to_string(version));

  tcspc::EventStream s;
  auto& h = s.header;
  h.version = version;
  h.width = get<std::uint32_t>(data.data() + 6);
  h.height = get<std::uint32_t>(data.data() + 10);
  h.dwell_ps = get<std::uint64_t>(data.data() + 14);
  h.schedule.period_ps = static_cast<Picos>(get<std::uint64_t>(data.data() + 22));
  h.schedule.emission_ps = static_cast<Picos>(get<std::uint64_t>(data.data() + 30));
  h.schedule.isolation_ps = static_cast<Picos>(get<std::uint64_t>(data.data() + 38));
  h.schedule.detection_ps = static_cast<Picos>(get<std::uint64_t>(data.data() + 46));
  h.rep_rate_millihz = get<std::uint64_t>(data.data() + 54);
  std::memcpy(h.config_digest.data(), data.data() + 62, h.config_digest.size());

  if (h.width == 0 || h.height == 0) corrupt(path, 6, "zero image dimension");
  try {
    h.schedule.validate();
    if (h.rep_rate_millihz == 0) throw InputError("zero repetition rate");
  } catch (const std::exception& e) {
    corrupt(path, 22, e.what());
  }

  const std::size_t payload = data.size() - kEventHeaderBytes;
  if (payload % kEventRecordBytes != 0)
    corrupt(path, data.size(), "trailing bytes are not a whole record");
  const std::size_t nrec = payload / kEventRecordBytes;
  s.events.resize(nrec);
  const std::size_t npix = h.pixel_count();
  for (std::size_t i = 0; i < nrec; ++i) {
    const std::size_t off = kEventHeaderBytes + i * kEventRecordBytes;
    const char* p = data.data() + off;
    s.events[i].pixel = get<std::uint32_t>(p);
    s.events[i].time_ps = get<std::uint64_t>(p + 4);
    if (s.events[i].pixel >= npix)
      corrupt(path, off, "record " + std::to_string(i) + ": pixel out of range");
    if (s.events[i].time_ps >= h.dwell_ps)
      corrupt(path, off + 4, "record " + std::to_string(i) + ": time beyond the dwell");
    if (i > 0 && !tcspc::event_order(s.events[i - 1], s.events[i]) &&
        !(s.events[i - 1] == s.events[i]))
      corrupt(path, off, "record " + std::to_string(i) + ": not sorted by (pixel, time)");
  }
  return s;
}

}  // namespace splidar::io
