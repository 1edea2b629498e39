#include "splidar/io/atomic_file.hpp"

#include <system_error>

#include "splidar/common.hpp"

namespace splidar::io {

AtomicWriter::AtomicWriter(const std::filesystem::path& path) : path_(path) {
  tmp_ = path;
  tmp_ += ".tmp";
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw InputError("cannot open for writing: " + tmp_.string());
}

AtomicWriter::~AtomicWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void AtomicWriter::commit() {
  out_.flush();
  if (!out_) throw InputError("write failed: " + tmp_.string());
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec) throw InputError("cannot rename " + tmp_.string() + " to " + path_.string() + ": " +
                           ec.message());
  committed_ = true;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& text) {
  AtomicWriter w(path);
  w.stream().write(text.data(), static_cast<std::streamsize>(text.size()));
  w.commit();
}

}  // namespace splidar::io
