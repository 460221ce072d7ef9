#pragma once

#include <filesystem>
#include <fstream>
#include <string_view>

namespace abc {

// Output file that only appears at its target path once commit() succeeds.
// Writes go to a sibling temporary; destruction without commit removes it.
class AtomicOutputFile {
 public:
  explicit AtomicOutputFile(std::filesystem::path target);
  ~AtomicOutputFile();

  AtomicOutputFile(const AtomicOutputFile&) = delete;
  AtomicOutputFile& operator=(const AtomicOutputFile&) = delete;

  std::ostream& stream() { return out_; }

  /// Flushes, closes and renames onto the target. Throws std::runtime_error on I/O failure.
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

void write_file_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace abc
