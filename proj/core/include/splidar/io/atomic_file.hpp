#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace splidar::io {

/// Write-to-temp-then-rename file writer. Nothing appears at `path` until
/// commit(); a destructor without commit removes the temporary, so
/// interrupted runs leave no torn artifacts.
class AtomicWriter {
 public:
  explicit AtomicWriter(const std::filesystem::path& path);
  ~AtomicWriter();
  AtomicWriter(const AtomicWriter&) = delete;
  AtomicWriter& operator=(const AtomicWriter&) = delete;

  std::ofstream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

/// Convenience wrapper for small payloads.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace splidar::io
