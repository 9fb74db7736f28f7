#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "efx/grid_map.hpp"

namespace efx {

/// Malformed map text. `line()` is 1-based, 0 when not tied to a line.
class MapFormatError : public std::runtime_error {
 public:
  MapFormatError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Map text format:
//   rows cols resolution_m
//   <rows lines of exactly cols characters, '#' occupied, '.' free>
OccupancyGrid parse_map(std::istream& in);
OccupancyGrid parse_map_string(const std::string& text);
OccupancyGrid load_map(const std::filesystem::path& path);

/// Writes ground-truth style text; Unknown cells are written as '?', which
/// parse_map rejects.
void write_map(std::ostream& out, const OccupancyGrid& grid);
std::string map_to_string(const OccupancyGrid& grid);

}  // namespace efx
