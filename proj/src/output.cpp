#include "wsq/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wsq/error.hpp"

namespace wsq {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error(ErrorKind::InvalidArgument, "row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "nan";
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string render_csv(const Table& t, std::uint64_t config_hash, const std::string& command) {
  std::ostringstream os;
  os << "# config_hash=" << hex64(config_hash) << " command=" << command << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Table& t, std::uint64_t config_hash, const std::string& command) {
  nlohmann::json j;
  j["config_hash"] = hex64(config_hash);
  j["command"] = command;
  j["columns"] = t.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) {
      if (const double* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) r.push_back(*d);
        else r.push_back(nullptr);
      } else if (const long long* i = std::get_if<long long>(&c)) {
        r.push_back(*i);
      } else {
        r.push_back(std::get<std::string>(c));
      }
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

std::string write_table(const Table& t, const std::string& dir, const std::string& stem,
                        const std::string& format, std::uint64_t config_hash, const std::string& command) {
  if (format != "csv" && format != "json") throw Error(ErrorKind::Config, "output format must be csv or json");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + dir + "': " + ec.message());
  const bool json = format == "json";
  const std::filesystem::path path = std::filesystem::path(dir) / (stem + (json ? ".json" : ".csv"));
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << (json ? render_json(t, config_hash, command) : render_csv(t, config_hash, command));
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
  return path.string();
}

}  // namespace wsq
