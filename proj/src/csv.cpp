#include "virtage/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace virtage {

std::string format_decimal(double x, int significant_digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";

  const int exp10 = static_cast<int>(std::floor(std::log10(std::fabs(x))));
  const int precision = std::max(0, significant_digits - 1 - exp10);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", precision, x);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    const auto last = s.find_last_not_of('0');
    s.erase(s[last] == '.' ? last : last + 1);
  }
  return s;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  AtomicFileWriter writer(path);
  writer.stream().write(content.data(), static_cast<std::streamsize>(content.size()));
  writer.commit();
}

AtomicFileWriter::AtomicFileWriter(std::filesystem::path path)
    : target_(std::move(path)), tmp_(target_) {
  tmp_ += ".tmp";
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) {
    throw std::runtime_error("cannot open " + tmp_.string() + " for writing");
  }
}

AtomicFileWriter::~AtomicFileWriter() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void AtomicFileWriter::commit() {
  out_.flush();
  if (!out_) {
    throw std::runtime_error("write to " + tmp_.string() + " failed");
  }
  out_.close();
  std::filesystem::rename(tmp_, target_);
  committed_ = true;
}

}  // namespace virtage
