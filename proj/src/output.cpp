#include "lltrace/output.hpp"

#include <fstream>

#include <fmt/format.h>

#include "lltrace/errors.hpp"

namespace lltrace {

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

KeyValueDocument& KeyValueDocument::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}

KeyValueDocument& KeyValueDocument::add(std::string key, double value) {
  return add(std::move(key), format_number(value));
}

KeyValueDocument& KeyValueDocument::add(std::string key, long long value) {
  return add(std::move(key), fmt::format("{}", value));
}

std::string KeyValueDocument::to_string() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += fmt::format("{} = {}\n", k, v);
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw ContractViolation(fmt::format("csv row has {} cells, header has {}", cells.size(), header_.size()));
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::to_string() const {
  std::string out = fmt::format("{}\n", fmt::join(header_, ","));
  for (const auto& row : rows_) out += fmt::format("{}\n", fmt::join(row, ","));
  return out;
}

std::string RunManifest::to_string() const {
  KeyValueDocument doc;
  doc.add("command", command);
  doc.add("tool_version", tool_version);
  for (const auto& [k, v] : parameters) doc.add("param." + k, v);
  doc.add("energy_units", "hbar^2/(2m) = 1, ring length L as given (energies scale as (2pi/L)^2)");
  doc.add("wall_seconds", wall_seconds);
  for (std::size_t i = 0; i < outputs.size(); ++i) doc.add(fmt::format("output.{}", i), outputs[i]);
  return doc.to_string();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot open {} for writing", path.string()));
  out << content;
  if (!out) throw Error(fmt::format("failed writing {}", path.string()));
}

}  // namespace lltrace
