#include <doctest.h>

#include "support.hpp"

#include <sstream>

using namespace scriptgeo;

namespace {
IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi, int density) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (static_cast<int>(rng() % 100) < density) m.set(i, j, std::uniform_int_distribution<int>(lo, hi)(rng));
  return m;
}
}  // namespace

TEST_CASE("smith normal form of a known matrix") {
  IntMatrix a = IntMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  auto f = smith_normal_form(a);
  CHECK(f.diagonal() == std::vector<Integer>{2, 6, 12});
  CHECK(f.U * a * f.V == f.D);
  CHECK(invariant_factors(a) == std::vector<Integer>{2, 6, 12});
}

TEST_CASE("smith reconstruction on random matrices") {
  std::mt19937 rng(3);
  for (int t = 0; t < 150; ++t) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    IntMatrix a = random_matrix(rng, r, c, -5, 5, 60);
    CHECK(testsupport::smith_reconstructs(a));
    auto f = smith_normal_form(a);
    CHECK(invariant_factors(a) == f.diagonal());
    CHECK(rank(a) == f.rank);
  }
}

TEST_CASE("sparse invariant factors agree with dense smith form on larger sparse input") {
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    IntMatrix a = random_matrix(rng, 30, 35, -2, 2, 10);
    CHECK(invariant_factors(a) == smith_normal_form(a).diagonal());
  }
}

TEST_CASE("determinant and kernels") {
  IntMatrix a = IntMatrix::from_dense({{1, 2}, {3, 4}});
  CHECK(determinant(a) == -2);
  IntMatrix b = IntMatrix::from_dense({{1, 1, 0}, {0, 2, 2}});
  auto k = kernel_basis(b);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == std::vector<Integer>{1, -1, 1});
  auto y = solve_in_lattice(k, {3, -3, 3});
  REQUIRE(y);
  CHECK((*y)[0] == 3);
  CHECK_FALSE(solve_in_lattice(k, {1, 0, 0}));
}

TEST_CASE("kernel basis is saturated") {
  // 2x = 0 mod nothing: kernel of [2 2] is spanned by (1,-1), not (2,-2)
  auto k = kernel_basis(IntMatrix::from_dense({{2, 2}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == std::vector<Integer>{1, -1});
}

TEST_CASE("matrix text round trip") {
  IntMatrix a = IntMatrix::from_dense({{0, -3}, {7, 0}, {1, 1}});
  std::stringstream ss;
  write_matrix(ss, a);
  CHECK(ss.str().rfind("3 2\n", 0) == 0);
  CHECK(read_matrix(ss) == a);
}

TEST_CASE("big coefficients stay exact") {
  Integer big("123456789012345678901234567890");
  IntMatrix a = IntMatrix::from_dense({{big, 0}, {0, big * 2}});
  auto f = smith_normal_form(a);
  CHECK(f.diagonal() == std::vector<Integer>{big, big * 2});
}
