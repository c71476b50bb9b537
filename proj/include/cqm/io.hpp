#pragma once

// CSV and portable-graymap (binary PGM, P5) writers.
//
// Numbers in data cells use fixed 6-decimal notation via std::to_chars, which
// never consults the locale. Metadata lines are "# key = value" with values
// in shortest round-trip form, so a header can be fed back as a config file.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqm/dynamics.hpp"
#include "cqm/sweep.hpp"

namespace cqm::io {

inline std::string fixed6(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, 6);
  std::string s(buf.data(), res.ptr);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

// Shortest representation that parses back to the same double.
inline std::string exact(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline void write_metadata(std::ostream& os, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << " = " << v << '\n';
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr, const Metadata& meta) {
  write_metadata(os, meta);
  os << "t_ns,P_LL,P_LR,P_RL,P_RR,concurrence\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto& p = tr.populations[i];
    os << fixed6(tr.times[i]) << ',' << fixed6(p.ll) << ',' << fixed6(p.lr) << ',' << fixed6(p.rl) << ','
       << fixed6(p.rr) << ',' << fixed6(tr.concurrence[i]) << '\n';
  }
}

// First row: corner label then x values. Each following row: y value then
// the cells of that row, starting at y.min.
inline void write_sweep_csv(std::ostream& os, const SweepGrid& g, const Metadata& meta) {
  write_metadata(os, meta);
  os << g.y.name << '\\' << g.x.name;
  for (double x : g.x.values()) os << ',' << fixed6(x);
  os << '\n';
  for (int iy = 0; iy < g.y.count; ++iy) {
    os << fixed6(g.y.value(iy));
    for (int ix = 0; ix < g.x.count; ++ix) os << ',' << fixed6(g.at(iy, ix));
    os << '\n';
  }
}

inline std::uint8_t gray_level(double c) {
  const double v = std::round(255.0 * std::clamp(c, 0.0, 1.0));
  return static_cast<std::uint8_t>(v);
}

// Width x.count, height y.count, maxval 255; first raster row is y.min.
inline void write_pgm(std::ostream& os, const SweepGrid& g) {
  os << "P5\n" << g.x.count << ' ' << g.y.count << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(g.x.count));
  for (int iy = 0; iy < g.y.count; ++iy) {
    for (int ix = 0; ix < g.x.count; ++ix) row[static_cast<std::size_t>(ix)] = static_cast<char>(gray_level(g.at(iy, ix)));
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace cqm::io
