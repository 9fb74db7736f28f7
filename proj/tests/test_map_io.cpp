#include <random>
#include <sstream>

#include "doctest.h"
#include "efx/map_io.hpp"
#include "oracles.hpp"

using namespace efx;

TEST_CASE("parses a small map") {
  const auto g = parse_map_string("2 3 0.05\n.#.\n...\n");
  CHECK(g.rows() == 2);
  CHECK(g.cols() == 3);
  CHECK(g.resolution() == 0.05);
  CHECK(g.at({0, 1}) == CellState::Occupied);
  CHECK(g.count(CellState::Free) == 5);
}

TEST_CASE("tolerates CRLF and trailing blank lines") {
  const auto g = parse_map_string("1 2 0.1\r\n.#\r\n\n\n");
  CHECK(g.at({0, 1}) == CellState::Occupied);
}

TEST_CASE("malformed maps name the offending line") {
  const auto line_of = [](const std::string& text) {
    try {
      (void)parse_map_string(text);
    } catch (const MapFormatError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("3 3 0.05\n...\n..\n...\n") == 3);
  CHECK(line_of("2 3 0.05\n...\n.x.\n") == 3);
  CHECK(line_of("2 3 0.05\n...\n") == 3);
  CHECK(line_of("1 3 0.05\n...\n...\n") == 3);
  CHECK(line_of("2 3\n...\n...\n") == 1);
  CHECK(line_of("2 3 -1\n...\n...\n") == 1);
  CHECK(line_of("") == 1);

  try {
    (void)parse_map_string("3 3 0.05\n...\n..\n...\n");
  } catch (const MapFormatError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("missing file is a format error without a line") {
  try {
    (void)load_map("/nonexistent/efx_map.map");
    FAIL("expected throw");
  } catch (const MapFormatError& e) {
    CHECK(e.line() == 0);
  }
}

TEST_CASE("write then parse round-trips known maps") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_grid(rng, 1 + trial % 9, 1 + trial % 11, 0.05, 0.0, 0.6);
    CHECK(parse_map_string(map_to_string(g)) == g);
  }
  OccupancyGrid odd(2, 2, 0.1 + 0.2, CellState::Free);
  CHECK(parse_map_string(map_to_string(odd)).resolution() == odd.resolution());
}

TEST_CASE("unknown cells do not survive a round trip") {
  OccupancyGrid g(1, 2, 0.05);
  CHECK_THROWS_AS(parse_map_string(map_to_string(g)), MapFormatError);
}
