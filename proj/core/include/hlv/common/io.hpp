#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace hlv {

/// Shortest round-trip decimal representation. Output is locale-independent,
/// so CSV and JSONL files are byte-stable across runs.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

/// Minimal CSV builder. Fields containing a comma, quote or newline are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string_view> header);

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double value);
  CsvWriter& field(long long value);
  CsvWriter& field(unsigned long long value);
  CsvWriter& field(int value) { return field(static_cast<long long>(value)); }
  CsvWriter& field(std::size_t value) { return field(static_cast<unsigned long long>(value)); }
  void end_row();

  const std::string& str() const { return out_; }
  std::size_t rows() const { return rows_; }
  void save(const std::filesystem::path& path) const { write_text_file(path, out_); }

 private:
  void separator();

  std::string out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
  std::size_t rows_ = 0;
};

/// Splits one CSV line (no embedded newlines) into fields, honouring quotes.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace hlv
