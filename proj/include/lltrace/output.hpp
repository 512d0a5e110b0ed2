#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace lltrace {

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double value);

/// Ordered "key = value" lines.
class KeyValueDocument {
 public:
  KeyValueDocument& add(std::string key, std::string value);
  KeyValueDocument& add(std::string key, double value);
  KeyValueDocument& add(std::string key, long long value);
  KeyValueDocument& add(std::string key, int value) { return add(std::move(key), static_cast<long long>(value)); }

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }
  std::string to_string() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Comma-separated table with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> cells);
  std::size_t rows() const noexcept { return rows_.size(); }
  std::string to_string() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string tool_version;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;

  std::string to_string() const;
};

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace lltrace
