#include "dnls/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>

namespace dnls {

namespace {
constexpr char kMagic[4] = {'D', 'N', 'L', 'S'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, const T& x) {
  out.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <typename T>
void get(std::ifstream& in, T& x) {
  in.read(reinterpret_cast<char*>(&x), sizeof(T));
}
}  // namespace

void write_snapshot(const std::string& path, const Field& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_failure, "cannot open " + path + " for writing");
  out.write(kMagic, 4);
  put(out, kVersion);
  put(out, static_cast<std::uint64_t>(f.size()));
  put(out, f.grid.half_length);
  for (const cd& z : f.v) {
    put(out, z.real());
    put(out, z.imag());
  }
  if (!out) fail(errc::io_failure, "short write to " + path);
}

Field read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_failure, "cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    fail(errc::io_failure, path + " is not a field snapshot");
  std::uint32_t version = 0;
  get(in, version);
  if (version != kVersion) fail(errc::io_failure, "unsupported snapshot version");
  std::uint64_t n = 0;
  double half_length = 0.0;
  get(in, n);
  get(in, half_length);
  Field f = make_field(make_grid(half_length, static_cast<std::size_t>(n)));
  for (std::size_t m = 0; m < f.size(); ++m) {
    double re = 0.0, im = 0.0;
    get(in, re);
    get(in, im);
    f.v[m] = cd{re, im};
  }
  if (!in) fail(errc::io_failure, "truncated snapshot " + path);
  return f;
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::trunc), width_(header.size()) {
  if (!out_) fail(errc::io_failure, "cannot open " + path + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) fail(errc::io_failure, "csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << format_g17(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::close() { out_.close(); }

}  // namespace dnls
