#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace wsq {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// Doubles are written with 17 significant digits so values round-trip.
std::string format_cell(const Cell& c);

/// CSV: a "# config_hash=... command=..." comment line, the header row, then
/// the rows. JSON: one object carrying the same metadata and rows.
std::string render_csv(const Table& t, std::uint64_t config_hash, const std::string& command);
std::string render_json(const Table& t, std::uint64_t config_hash, const std::string& command);

/// Writes <dir>/<stem>.csv or .json; throws Error(Io) on failure.
/// Returns the path written.
std::string write_table(const Table& t, const std::string& dir, const std::string& stem,
                        const std::string& format, std::uint64_t config_hash, const std::string& command);

std::string hex64(std::uint64_t v);

}  // namespace wsq
