#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "efx/kernels.hpp"

using namespace efx::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) x = static_cast<std::uint8_t>(d(rng));
  return v;
}

std::vector<double> random_dist(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 30.0);
  std::uniform_int_distribution<int> pick(0, 9);
  std::vector<double> v(n);
  for (auto& x : v) {
    const int k = pick(rng);
    x = k == 0 ? std::numeric_limits<double>::infinity() : k == 1 ? 0.0 : k == 2 ? 0.01 : u(rng);
  }
  return v;
}

}  // namespace

TEST_CASE("scalar kernels follow their definitions") {
  const KernelTable& s = scalar_table();
  const std::vector<std::uint8_t> a = {0, 1, 2, 2, 0}, b = {2, 1, 0, 1, 0};
  std::vector<std::uint8_t> out(5);
  s.join_bytes(a, b, out);
  CHECK(out == std::vector<std::uint8_t>{2, 1, 2, 2, 0});
  const std::vector<std::uint8_t> mask = {1, 0, 1, 1, 1};
  CHECK(s.count_known_masked(a, mask) == 2);

  const std::vector<double> dist = {0.0, 0.5, 2.0, std::numeric_limits<double>::infinity()};
  std::vector<double> h(4, 0.0);
  s.frontier_min(dist, 1.0, 0.1, h);
  CHECK(h[0] == -10.0);
  CHECK(h[1] == -2.0);
  CHECK(h[2] == -0.5);
  CHECK(h[3] == 0.0);
  s.frontier_sum(dist, 1.0, 0.1, h);
  CHECK(h[0] == -20.0);

  // Ring: a 1 m wide row of 10 cells, robot at the center of cell 0, range 3.
  std::vector<double> ring(10, 0.0);
  s.robot_ring({0, 1.0, 0.5}, {0.5, 0.5, 2.0, 3.0, 0.1, 0.25}, ring);
  CHECK(ring[0] == doctest::Approx(2.0 / -3.0 + 0.25));
  CHECK(ring[2] == doctest::Approx(2.0 / -1.0 + 0.25));
  CHECK(ring[3] == 0.0);  // d == range is out
}

TEST_CASE("AVX2 kernels are bit-identical to scalar") {
  const KernelTable* v = avx2_table();
  if (!v) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  const KernelTable& s = scalar_table();
  std::mt19937_64 rng(77);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 31u, 32u, 33u, 64u, 255u, 1000u}) {
    const auto a = random_bytes(rng, n, 2);
    const auto b = random_bytes(rng, n, 2);
    const auto mask = random_bytes(rng, n, 1);
    std::vector<std::uint8_t> o1(n), o2(n);
    s.join_bytes(a, b, o1);
    v->join_bytes(a, b, o2);
    CHECK(o1 == o2);
    auto d1 = a, d2 = a;
    CHECK(s.join_into(d1, b) == v->join_into(d2, b));
    CHECK(d1 == d2);
    CHECK_FALSE(v->join_into(d2, b));
    CHECK(s.count_known_masked(a, mask) == v->count_known_masked(a, mask));

    const auto dist = random_dist(rng, n);
    std::vector<double> h1(n, 0.0), h2(n, 0.0);
    for (double coeff : {0.0, 1.7, -3.2}) {
      s.frontier_min(dist, coeff, 0.05, h1);
      v->frontier_min(dist, coeff, 0.05, h2);
      CHECK(same_bits(h1, h2));
      s.frontier_sum(dist, coeff, 0.05, h1);
      v->frontier_sum(dist, coeff, 0.05, h2);
      CHECK(same_bits(h1, h2));
    }

    std::uniform_real_distribution<double> u(-1.0, 12.0);
    for (int rep = 0; rep < 5; ++rep) {
      const RowGeometry row{static_cast<int>(rep * 3), 0.05, u(rng)};
      const RobotTerm term{u(rng) * 0.2, row.y + u(rng) * 0.1, 0.9, 2.0, 0.05, u(rng) * 0.01};
      std::vector<double> r1(n, 0.5), r2(n, 0.5);
      s.robot_ring(row, term, r1);
      v->robot_ring(row, term, r2);
      CHECK(same_bits(r1, r2));
    }
  }
}

TEST_CASE("active table is one of the variants") {
  const std::string name = active().name;
  CHECK((name == scalar_table().name || (avx2_table() && name == avx2_table()->name)));
}
