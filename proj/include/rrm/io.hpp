#pragma once

#include <rrm/types.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rrm {

/// %.12g, C locale; NaN prints as "nan", infinities as "inf"/"-inf".
std::string format_number(Real v);

/// FNV-1a 64-bit hash of a byte string.
uint64_t fnv1a64(std::string_view s);

/// 16 lowercase hex digits.
std::string hash_hex(uint64_t h);

/// A fully formatted table ready for serialization.
struct OutputTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// RFC-4180-style CSV (or a whitespace-separated gnuplot variant) with a
/// leading '#' metadata line. The metadata must not contain timestamps: the
/// bytes written for a given table and meta string are always identical.
void write_table(std::ostream& os, const OutputTable& table, const std::string& meta,
                 bool gnuplot = false);

/// Description of one driver run, written as JSON next to every table.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // resolved key/value pairs
  std::vector<std::string> outputs;
  std::string version;
};

/// Hash over the resolved config pairs (order-sensitive); this is the value
/// carried in the CSV metadata line.
uint64_t config_hash(const RunManifest& m);

/// JSON with a wall-clock stamp added at write time.
void write_manifest(std::ostream& os, const RunManifest& m);

}  // namespace rrm
