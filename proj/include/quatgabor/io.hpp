#pragma once

// File formats used by the command-line front end.
//
// QSIG2D, all integers and reals little-endian:
//   offset  size  field
//        0     6  magic "QSIG2D"
//        6     4  u32 version (= 1)
//       10     4  u32 n1
//       14     4  u32 n2
//       18     8  f64 h1
//       26     8  f64 h2
//       34     1  u8 centered (0 | 1)
//       35  32*N  payload: n1*n2 quaternions, four f64 each (w, x, y, z), row-major
//
// PPM input is binary P6 with maxval 255; PGM output is binary P5.

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <string_view>
#include <utility>
#include <vector>

#include "quatgabor/error.hpp"
#include "quatgabor/gqft.hpp"
#include "quatgabor/grid.hpp"
#include "quatgabor/qft.hpp"

namespace quatgabor::io {

inline constexpr std::string_view qsig_magic = "QSIG2D";
inline constexpr std::uint32_t qsig_version = 1;
inline constexpr std::size_t qsig_header_size = 35;

namespace detail {

template <class T>
void put_le(std::string& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(U); ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFu));
}

template <class T>
T get_le(std::string_view in, std::size_t offset) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b)
    bits = static_cast<U>(bits | static_cast<U>(static_cast<U>(static_cast<unsigned char>(in[offset + b])) << (8 * b)));
  return std::bit_cast<T>(bits);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error(errc::io, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw error(errc::io, "write failed for " + path);
}

}  // namespace detail

struct QsigContents {
  GridSpec spec;
  std::vector<Quaternion> data;
};

inline std::string encode_qsig(const GridSpec& spec, std::span<const Quaternion> data) {
  if (data.size() != spec.size()) throw error(errc::shape_mismatch, "payload does not match grid");
  if (spec.n1 > UINT32_MAX || spec.n2 > UINT32_MAX) throw error(errc::invalid_argument, "grid too large for QSIG2D");
  std::string out(qsig_magic);
  out.reserve(qsig_header_size + 32 * data.size());
  detail::put_le(out, qsig_version);
  detail::put_le(out, static_cast<std::uint32_t>(spec.n1));
  detail::put_le(out, static_cast<std::uint32_t>(spec.n2));
  detail::put_le(out, spec.h1);
  detail::put_le(out, spec.h2);
  detail::put_le(out, static_cast<std::uint8_t>(spec.centered ? 1 : 0));
  for (const auto& q : data) {
    detail::put_le(out, q.w);
    detail::put_le(out, q.x);
    detail::put_le(out, q.y);
    detail::put_le(out, q.z);
  }
  return out;
}

inline QsigContents decode_qsig(std::string_view bytes) {
  if (!bytes.starts_with(qsig_magic)) throw error(errc::bad_magic, "not a QSIG2D file");
  if (bytes.size() < qsig_header_size) throw error(errc::truncated_payload, "header is truncated");
  const auto version = detail::get_le<std::uint32_t>(bytes, 6);
  if (version != qsig_version) throw error(errc::bad_version, "unsupported version " + std::to_string(version));
  const auto n1 = detail::get_le<std::uint32_t>(bytes, 10);
  const auto n2 = detail::get_le<std::uint32_t>(bytes, 14);
  const auto h1 = detail::get_le<double>(bytes, 18);
  const auto h2 = detail::get_le<double>(bytes, 26);
  const auto centered = detail::get_le<std::uint8_t>(bytes, 34);
  if (!std::isfinite(h1) || !std::isfinite(h2)) throw error(errc::non_finite, "grid step is not finite");
  if (centered > 1) throw error(errc::unsupported_format, "centered flag must be 0 or 1");
  const GridSpec spec(n1, n2, h1, h2, centered == 1);
  const std::size_t expected = qsig_header_size + 32 * spec.size();
  if (bytes.size() < expected)
    throw error(errc::truncated_payload, "payload has " + std::to_string(bytes.size() - qsig_header_size) +
                                             " bytes, expected " + std::to_string(32 * spec.size()));
  if (bytes.size() > expected) throw error(errc::truncated_payload, "payload has trailing bytes");
  std::vector<Quaternion> data(spec.size());
  std::size_t off = qsig_header_size;
  for (auto& q : data) {
    q = {detail::get_le<double>(bytes, off), detail::get_le<double>(bytes, off + 8),
         detail::get_le<double>(bytes, off + 16), detail::get_le<double>(bytes, off + 24)};
    if (!q.is_finite()) throw error(errc::non_finite, "payload sample is not finite");
    off += 32;
  }
  return {spec, std::move(data)};
}

inline void write_qsig(const std::string& path, const QSignal2D& f) {
  detail::write_file(path, encode_qsig(f.spec(), f.data()));
}

/// Spectra use the same container; the header carries the spatial grid they came from.
inline void write_qsig(const std::string& path, const QSpectrum2D& F) {
  detail::write_file(path, encode_qsig(F.grid(), F.data()));
}

inline QSignal2D read_qsig(const std::string& path) {
  auto c = decode_qsig(detail::read_file(path));
  return QSignal2D(c.spec, std::move(c.data));
}

inline QSpectrum2D read_qspectrum(const std::string& path) {
  auto c = decode_qsig(detail::read_file(path));
  return QSpectrum2D(c.spec, std::move(c.data));
}

// ---------------------------------------------------------------------------
// Netpbm

namespace detail {

inline void skip_space_and_comments(std::string_view s, std::size_t& pos) {
  while (pos < s.size()) {
    if (s[pos] == '#') {
      while (pos < s.size() && s[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    } else {
      break;
    }
  }
}

inline std::size_t read_header_int(std::string_view s, std::size_t& pos) {
  skip_space_and_comments(s, pos);
  std::size_t v = 0;
  std::size_t digits = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + static_cast<std::size_t>(s[pos] - '0');
    ++pos;
    ++digits;
  }
  if (digits == 0) throw error(errc::unsupported_format, "malformed PPM header");
  return v;
}

}  // namespace detail

/// Binary P6 colour image -> pure quaternion signal (0, R/255, G/255, B/255).
/// Axis 1 runs down the rows, axis 2 across the columns; unit steps, uncentered.
inline QSignal2D decode_ppm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6')
    throw error(errc::unsupported_format, "only binary P6 PPM is supported");
  std::size_t pos = 2;
  const std::size_t width = detail::read_header_int(bytes, pos);
  const std::size_t height = detail::read_header_int(bytes, pos);
  const std::size_t maxval = detail::read_header_int(bytes, pos);
  if (maxval != 255) throw error(errc::unsupported_format, "maxval must be 255, got " + std::to_string(maxval));
  if (width == 0 || height == 0) throw error(errc::unsupported_format, "empty image");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
    throw error(errc::unsupported_format, "malformed PPM header");
  ++pos;
  const std::size_t need = width * height * 3;
  if (bytes.size() - pos < need) throw error(errc::truncated_payload, "PPM pixel data is truncated");
  std::vector<Quaternion> data(width * height);
  for (std::size_t p = 0; p < data.size(); ++p) {
    const auto px = [&](std::size_t c) { return static_cast<unsigned char>(bytes[pos + 3 * p + c]) / 255.0; };
    data[p] = {0.0, px(0), px(1), px(2)};
  }
  return QSignal2D(GridSpec(height, width, 1.0, 1.0, false), std::move(data));
}

inline QSignal2D ingest_ppm(const std::string& path) { return decode_ppm(detail::read_file(path)); }

/// Binary P5 image, bytes lround(255 v / max); an all-zero map stays zero.
inline std::string encode_pgm(const Heatmap& h) {
  double top = 0.0;
  for (double v : h.values) {
    if (!std::isfinite(v) || v < 0.0) throw error(errc::invalid_argument, "heatmap values must be finite and >= 0");
    top = std::fmax(top, v);
  }
  std::string out = "P5\n" + std::to_string(h.n2) + " " + std::to_string(h.n1) + "\n255\n";
  out.reserve(out.size() + h.values.size());
  for (double v : h.values) {
    const long level = top > 0.0 ? std::lround(255.0 * (v / top)) : 0;
    out.push_back(static_cast<char>(static_cast<unsigned char>(level)));
  }
  return out;
}

inline void export_heatmap(const Heatmap& h, const std::string& path) { detail::write_file(path, encode_pgm(h)); }

// ---------------------------------------------------------------------------
// key = value reports

class ReportDocument {
 public:
  explicit ReportDocument(std::string scheme) { add("scheme", std::move(scheme)); }

  void add(const std::string& key, std::string value) { entries_.emplace_back(key, std::move(value)); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }

  void add(const std::string& key, double value) {
    if (!std::isfinite(value)) throw error(errc::non_finite, "report field '" + key + "' is not finite");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    entries_.emplace_back(key, buf);
  }

  void add(const std::string& key, std::size_t value) { entries_.emplace_back(key, std::to_string(value)); }
  void add(const std::string& key, int value) { entries_.emplace_back(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { entries_.emplace_back(key, value ? "true" : "false"); }

  void add_grid(const GridSpec& g) {
    add("n1", g.n1);
    add("n2", g.n2);
    add("h1", g.h1);
    add("h2", g.h2);
    add("centered", g.centered);
  }

  void set_verdict(bool pass) {
    verdict_ = pass;
    add("verdict", pass ? "pass" : "fail");
  }
  bool verdict() const { return verdict_; }

  std::string str() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  bool verdict_ = false;
};

/// Parses `key = value` lines; later keys overwrite earlier ones.
inline std::map<std::string, std::string> parse_report(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

}  // namespace quatgabor::io
