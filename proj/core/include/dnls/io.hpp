#pragma once
#include <fstream>
#include <string>
#include <vector>

#include "dnls/grid.hpp"

namespace dnls {

// Binary snapshot: "DNLS" magic, u32 version, u64 n, f64 half_length,
// then n interleaved (re, im) f64 pairs; all little-endian.
void write_snapshot(const std::string& path, const Field& f);
Field read_snapshot(const std::string& path);

// Deterministic CSV writer: fixed header, %.17g numeric formatting.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void close();

 private:
  std::ofstream out_;
  std::size_t width_;
};

std::string format_g17(double x);

}  // namespace dnls
