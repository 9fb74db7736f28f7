#include "efx/map_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace efx {

MapFormatError::MapFormatError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

OccupancyGrid parse_map(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MapFormatError(1, "missing header 'rows cols resolution'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream header(line);
  long rows = 0;
  long cols = 0;
  double res = 0.0;
  if (!(header >> rows >> cols >> res))
    throw MapFormatError(1, "header must be 'rows cols resolution'");
  std::string rest;
  if (header >> rest) throw MapFormatError(1, "trailing tokens in header");
  if (rows <= 0 || cols <= 0) throw MapFormatError(1, "rows and cols must be positive");
  if (!(res > 0.0)) throw MapFormatError(1, "resolution must be positive");

  OccupancyGrid grid(static_cast<int>(rows), static_cast<int>(cols), res, CellState::Free);
  for (int r = 0; r < rows; ++r) {
    const int lineno = r + 2;
    if (!std::getline(in, line))
      throw MapFormatError(lineno, "expected " + std::to_string(rows) + " map rows, got " +
                                       std::to_string(r));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<long>(line.size()) != cols)
      throw MapFormatError(lineno, "ragged row: expected " + std::to_string(cols) +
                                       " characters, got " + std::to_string(line.size()));
    for (int c = 0; c < cols; ++c) {
      switch (line[static_cast<std::size_t>(c)]) {
        case '#':
          grid.at({r, c}) = CellState::Occupied;
          break;
        case '.':
          grid.at({r, c}) = CellState::Free;
          break;
        default:
          throw MapFormatError(lineno, "invalid character '" +
                                           std::string(1, line[static_cast<std::size_t>(c)]) +
                                           "' at column " + std::to_string(c + 1));
      }
    }
  }
  // Trailing blank lines are tolerated; anything else is an extra row.
  int lineno = static_cast<int>(rows) + 2;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) throw MapFormatError(lineno, "unexpected extra row");
    ++lineno;
  }
  return grid;
}

OccupancyGrid parse_map_string(const std::string& text) {
  std::istringstream in(text);
  return parse_map(in);
}

OccupancyGrid load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MapFormatError(0, "cannot open map file '" + path.string() + "'");
  return parse_map(in);
}

void write_map(std::ostream& out, const OccupancyGrid& grid) {
  out << grid.rows() << ' ' << grid.cols() << ' ' << std::setprecision(17)
      << grid.resolution() << '\n';
  std::string row(static_cast<std::size_t>(grid.cols()), '.');
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) row[static_cast<std::size_t>(c)] = to_char(grid.at({r, c}));
    out << row << '\n';
  }
}

std::string map_to_string(const OccupancyGrid& grid) {
  std::ostringstream out;
  write_map(out, grid);
  return out.str();
}

}  // namespace efx
