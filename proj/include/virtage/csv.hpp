#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace virtage {

/// Format a double in plain decimal notation (never scientific) with the
/// given number of significant digits. Trailing zeros are trimmed.
std::string format_decimal(double x, int significant_digits);

/// Write `content` to `path` atomically: the data lands in a temporary file
/// next to the target and is renamed into place, so readers never observe a
/// partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Streaming variant of write_file_atomic for outputs too large to buffer.
/// Nothing becomes visible at the target path until commit() succeeds.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::filesystem::path path);
  ~AtomicFileWriter();

  AtomicFileWriter(const AtomicFileWriter&) = delete;
  AtomicFileWriter& operator=(const AtomicFileWriter&) = delete;

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace virtage
