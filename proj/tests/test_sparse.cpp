#include <catch2/catch_amalgamated.hpp>

#include <h3nr/sparse.hpp>

#include <random>

using namespace h3nr;
using namespace h3nr::sparse;
using zlinalg::Int;
using zlinalg::IntMatrix;

namespace {

// Oracle: rank and invariant factors straight from the dense algorithm.
std::pair<int, std::vector<Int>> dense_summary(const IntMatrix& m) {
  zlinalg::SmithForm s = zlinalg::smith_normal_form(m);
  int rank = 0;
  std::vector<Int> torsion;
  for (const Int& d : s.d)
    if (d != 0) {
      ++rank;
      if (d > 1) torsion.push_back(d);
    }
  return {rank, torsion};
}

void check_against_dense(const IntMatrix& m) {
  auto [rank, torsion] = dense_summary(m);
  SmithSummary s = smith_summary(SparseMatrix::from_dense(m));
  REQUIRE(s.rank == rank);
  REQUIRE(s.torsion == torsion);
}

}  // namespace

TEST_CASE("sparse summary agrees with dense on small random matrices") {
  std::mt19937 rng(314159);
  std::uniform_int_distribution<int> val(-9, 9);
  for (int trial = 0; trial < 80; ++trial) {
    int r = 1 + trial % 6, c = 1 + (trial / 6) % 6;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = val(rng);
    check_against_dense(m);
  }
}

TEST_CASE("sparse summary agrees with dense on sparse random matrices") {
  std::mt19937 rng(2718);
  std::uniform_int_distribution<int> val(-3, 3);
  for (int trial = 0; trial < 12; ++trial) {
    int r = 30 + trial, c = 45 + trial;
    std::uniform_int_distribution<int> col(0, c - 1);
    SparseMatrix s(r, c);
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < 5; ++k) {
        int j = col(rng);
        int v = val(rng);
        s.add_term(i, j, v);
        m(i, j) += v;
      }
    auto [rank, torsion] = dense_summary(m);
    SmithSummary sum = smith_summary(s);
    REQUIRE(sum.rank == rank);
    REQUIRE(sum.torsion == torsion);
  }
}

TEST_CASE("matrices with no unit entries fall through to the dense core") {
  check_against_dense(IntMatrix::from({{2, 4}, {6, 8}}));
  check_against_dense(IntMatrix::from({{4, 6, 0}, {0, 10, 14}, {2, 0, 2}}));
  // diagonal without units: exercises the 1x1 direct summand extraction
  check_against_dense(IntMatrix::from({{3, 0, 0}, {0, 5, 0}, {0, 0, 7}}));
  check_against_dense(IntMatrix::from({{0, 3}, {5, 0}}));
}

TEST_CASE("sparse summary on degenerate shapes") {
  check_against_dense(IntMatrix(0, 4));
  check_against_dense(IntMatrix(3, 0));
  check_against_dense(IntMatrix::from({{0, 0}, {0, 0}}));
  check_against_dense(IntMatrix::from({{1}}));
}

TEST_CASE("sparse summary on a structured block matrix") {
  // permutation block + multiple-of-2 block + zero rows
  IntMatrix m(7, 7);
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(2, 2) = 1;
  m(3, 3) = 2;
  m(3, 4) = 2;
  m(4, 3) = 2;
  m(4, 4) = 4;
  m(5, 5) = 6;
  check_against_dense(m);
}

TEST_CASE("sparse summary scales to a mid-size random matrix") {
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> val(-2, 2);
  int r = 150, c = 220;
  std::uniform_int_distribution<int> col(0, c - 1);
  SparseMatrix s(r, c);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < 4; ++k) {
      int j = col(rng);
      int v = val(rng);
      s.add_term(i, j, v);
      m(i, j) += v;
    }
  auto [rank, torsion] = dense_summary(m);
  SmithSummary sum = smith_summary(s);
  REQUIRE(sum.rank == rank);
  REQUIRE(sum.torsion == torsion);
}

TEST_CASE("cokernel from a smith summary") {
  SmithSummary s;
  s.rank = 1;
  s.torsion = {Int(2)};
  REQUIRE(s.cokernel_of(3).to_string() == "Z^2 + Z/2");

  SparseMatrix d(2, 2);
  d.add_term(0, 0, 2);
  d.add_term(1, 1, 3);
  REQUIRE(smith_summary(d).cokernel_of(2).to_string() == "Z/6");
}

TEST_CASE("transpose and dense round trips") {
  IntMatrix m = IntMatrix::from({{1, 0, 2}, {0, -3, 0}});
  SparseMatrix s = SparseMatrix::from_dense(m);
  REQUIRE(s.to_dense() == m);
  REQUIRE(s.transpose().to_dense() == m.transpose());
  REQUIRE(s.nnz() == 3);

  // add_term accumulation collapses under normalize
  SparseMatrix t(1, 2);
  t.add_term(0, 1, 5);
  t.add_term(0, 1, -5);
  t.add_term(0, 0, 1);
  t.normalize();
  REQUIRE(t.nnz() == 1);
}
