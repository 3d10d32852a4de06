#include <doctest.h>

#include <random>

#include "cosyx/gf2.hpp"
#include "oracle.hpp"

using namespace cosyx;

namespace {

Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows, int cols) {
  Gf2Matrix m((int)rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c : rows[r]) m.set((int)r, c, true);
  return m;
}

oracle::Mat to_oracle(const Gf2Matrix& m) {
  oracle::Mat o(m.rows, oracle::Row(m.cols, 0));
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) o[r][c] = m.get(r, c);
  return o;
}

// boundary of the 3-cycle: rows vertices, columns edges 01, 02, 12
Gf2Matrix cycle3_boundary() {
  return from_rows({{0, 1}, {0, 2}, {1, 2}}, 3).transposed();
}

}  // namespace

TEST_CASE("rank on pinned examples") {
  Gf2Matrix id3(3, 3);
  for (int i = 0; i < 3; ++i) id3.set(i, i, true);
  CHECK(rank(id3) == 3);
  CHECK(rank(Gf2Matrix(4, 7)) == 0);

  Gf2Matrix d1 = cycle3_boundary();
  CHECK(d1.rows == 3);
  CHECK(d1.cols == 3);
  CHECK(rank(d1) == 2);
  CHECK(oracle::rank(to_oracle(d1)) == 2);
}

TEST_CASE("rank equals transpose rank and matches the oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + (int)(rng() % 9), c = 1 + (int)(rng() % 9);
    Gf2Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.set(i, j, rng() & 1);
    int rk = rank(m);
    CHECK(rk == rank(m.transposed()));
    CHECK(rk == oracle::rank(to_oracle(m)));
  }
}

TEST_CASE("solve returns the canonical filling of a vertex coboundary") {
  // delta^0 of the 3-cycle: rows edges, columns vertices
  Gf2Matrix delta = cycle3_boundary().transposed();
  Gf2Vector b = delta.mul(Gf2Vector::from_support(3, {1}));
  auto sol = solve(delta, b);
  REQUIRE(sol.has_value());
  CHECK(sol->particular.support() == std::vector<int>{1});
  REQUIRE(sol->kernel.size() == 1);
  CHECK(sol->kernel[0].support() == std::vector<int>{0, 1, 2});
  CHECK(delta.mul(sol->particular) == b);
}

TEST_CASE("solve detects inconsistency") {
  // x + y = 1 and x + y = 0
  Gf2Matrix m(2, 2);
  m.set(0, 0, true);
  m.set(0, 1, true);
  m.set(1, 0, true);
  m.set(1, 1, true);
  Gf2Vector b(2);
  b.set(0, true);
  CHECK_FALSE(solve(m, b).has_value());
}

TEST_CASE("solve properties on random systems") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + (int)(rng() % 8), c = 1 + (int)(rng() % 8);
    Gf2Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.set(i, j, rng() & 1);
    CHECK((int)kernel_basis(m).size() == c - rank(m));
    Gf2Vector x(c);
    for (int j = 0; j < c; ++j) x.set(j, rng() & 1);
    Gf2Vector b = m.mul(x);
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m.mul(sol->particular) == b);
    for (const auto& k : sol->kernel) CHECK(m.mul(k).is_zero());
  }
}

TEST_CASE("quotient basis of cocycles modulo coboundaries on the 3-cycle") {
  std::vector<Gf2Vector> z;
  for (int i = 0; i < 3; ++i) z.push_back(Gf2Vector::from_support(3, {i}));
  Gf2Matrix delta = cycle3_boundary().transposed();
  std::vector<Gf2Vector> b;
  for (int v = 0; v < 3; ++v)
    b.push_back(delta.mul(Gf2Vector::from_support(3, {v})));
  auto reps = quotient_basis(z, b, 3);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].popcount() == 1);
}

TEST_CASE("quotient basis rejects a denominator outside the span") {
  std::vector<Gf2Vector> z{Gf2Vector::from_support(3, {0})};
  std::vector<Gf2Vector> b{Gf2Vector::from_support(3, {1})};
  CHECK_THROWS_AS(quotient_basis(z, b, 3), Error);
}

TEST_CASE("echelon span is canonical regardless of generator order") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 6;
    std::vector<Gf2Vector> gens;
    for (int g = 0; g < 4; ++g) {
      Gf2Vector v(n);
      for (int j = 0; j < n; ++j) v.set(j, rng() & 1);
      gens.push_back(v);
    }
    auto fwd = echelon_basis(gens, n);
    std::reverse(gens.begin(), gens.end());
    auto rev = echelon_basis(gens, n);
    REQUIRE(fwd.size() == rev.size());
    for (size_t i = 0; i < fwd.size(); ++i) CHECK(fwd[i] == rev[i]);
  }
}

TEST_CASE("matrix text round trip") {
  Gf2Matrix m = cycle3_boundary();
  Gf2Matrix back = Gf2Matrix::from_text(m.to_text());
  CHECK(back.to_text() == m.to_text());
  CHECK_THROWS_AS(Gf2Matrix::from_text("2 2\n01\n"), Error);
  CHECK_THROWS_AS(Gf2Matrix::from_text("2 2\n012\n01\n"), Error);
}

TEST_CASE("support order comparison") {
  auto a = Gf2Vector::from_support(70, {0, 65});
  auto b = Gf2Vector::from_support(70, {1, 2});
  CHECK(Gf2Vector::supp_less(a, b));
  CHECK_FALSE(Gf2Vector::supp_less(b, a));
  CHECK_FALSE(Gf2Vector::supp_less(a, a));
}
