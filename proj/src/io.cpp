#include <rrm/io.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

namespace rrm {

std::string format_number(Real v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_cell(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

}  // namespace

void write_table(std::ostream& os, const OutputTable& table, const std::string& meta,
                 bool gnuplot) {
  const char sep = gnuplot ? ' ' : ',';
  os << "# " << meta << '\n';
  if (gnuplot) os << "# ";
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) os << sep;
    os << (gnuplot ? table.columns[c] : csv_cell(table.columns[c]));
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) os << sep;
      if (gnuplot)
        os << (row[c].empty() ? "nan" : row[c]);  // keep the columns aligned
      else
        os << csv_cell(row[c]);
    }
    os << '\n';
  }
}

uint64_t config_hash(const RunManifest& m) {
  std::string blob = m.command;
  blob += '\n';
  for (const auto& [key, value] : m.config) {
    blob += key;
    blob += '=';
    blob += value;
    blob += '\n';
  }
  blob += m.version;
  return fnv1a64(blob);
}

void write_manifest(std::ostream& os, const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [key, value] : m.config) cfg[key] = value;
  j["config"] = cfg;
  j["config_hash"] = hash_hex(config_hash(m));
  j["outputs"] = m.outputs;
  j["version"] = m.version;

  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  j["wall_clock"] = stamp;

  os << j.dump(2) << '\n';
}

}  // namespace rrm
