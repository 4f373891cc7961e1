#include <doctest.h>

#include <stdexcept>

#include "blockip/matrix.hpp"
#include "test_helpers.hpp"

using namespace blockip;

TEST_CASE("matrix stores nonzero entries and erases zeros") {
  IntMatrix m(3, 2);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m.empty());
  m.set(1, 1, Int(5));
  m.set(3, 2, Int(-7));
  CHECK(m.entry_count() == 2);
  CHECK(m.at(1, 1) == 5);
  CHECK(m.at(3, 2) == -7);
  CHECK(m.at(2, 2) == 0);
  m.set(1, 1, Int(0));
  CHECK(m.entry_count() == 1);
  CHECK(m.at(1, 1) == 0);
}

TEST_CASE("matrix rejects out-of-range indices") {
  IntMatrix m(2, 2);
  CHECK_THROWS_AS(m.at(0, 1), std::out_of_range);
  CHECK_THROWS_AS(m.at(1, 3), std::out_of_range);
  CHECK_THROWS_AS(m.set(3, 1, Int(1)), std::out_of_range);
  CHECK_THROWS_AS((IntMatrix(-1, 2)), std::invalid_argument);
}

TEST_CASE("from_rows builds dense fixtures") {
  const IntMatrix m = IntMatrix::from_rows({{1, 0}, {2, 3}, {0, 4}});
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m.at(2, 1) == 2);
  CHECK(m.at(3, 2) == 4);
  CHECK(m.entry_count() == 4);
  CHECK_THROWS_AS(IntMatrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("max_norm is the largest absolute entry") {
  CHECK(IntMatrix(2, 2).max_norm() == 0);
  const IntMatrix m = IntMatrix::from_rows({{2, -9}, {4, 1}});
  CHECK(m.max_norm() == 9);
}

TEST_CASE("transpose swaps indices") {
  const IntMatrix m = IntMatrix::from_rows({{1, 2, 0}, {0, 0, 3}});
  const IntMatrix t = m.transpose();
  CHECK(t.rows() == 3);
  CHECK(t.cols() == 2);
  CHECK(t.at(2, 1) == 2);
  CHECK(t.at(3, 2) == 3);
  CHECK(t.transpose() == m);
}

TEST_CASE("apply multiplies by a vector") {
  const IntMatrix m = IntMatrix::from_rows({{2, -1, 0}, {0, 2, -1}});
  const std::vector<Int> x = {Int(1), Int(2), Int(4)};
  const std::vector<Int> y = m.apply(x);
  REQUIRE(y.size() == 2);
  CHECK(y[0] == 0);
  CHECK(y[1] == 0);
  CHECK_THROWS_AS(m.apply({Int(1)}), std::invalid_argument);
}

TEST_CASE("permutation construction and inverse") {
  const Permutation id(3);
  CHECK(id(2) == 2);
  const Permutation p = Permutation::from_image({2, 3, 1});
  CHECK(p(1) == 2);
  CHECK(p(3) == 1);
  const Permutation q = p.inverse();
  CHECK(q(2) == 1);
  CHECK(q(1) == 3);
  CHECK_THROWS_AS(Permutation::from_image({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_image({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(p(0), std::out_of_range);
}

TEST_CASE("apply_permutation moves entries and inverts") {
  const IntMatrix m = IntMatrix::from_rows({{1, 0}, {0, 2}});
  PermutationPair swap_cols{Permutation(2),
                            Permutation::from_image({2, 1})};
  const IntMatrix moved = apply_permutation(m, swap_cols);
  CHECK(moved == IntMatrix::from_rows({{0, 1}, {2, 0}}));

  PermutationPair inverse{swap_cols.row_perm.inverse(),
                          swap_cols.col_perm.inverse()};
  CHECK(apply_permutation(moved, inverse) == m);

  PermutationPair identity{Permutation(2), Permutation(2)};
  CHECK(apply_permutation(m, identity) == m);

  PermutationPair bad{Permutation(3), Permutation(2)};
  CHECK_THROWS_AS(apply_permutation(m, bad), std::invalid_argument);
}

TEST_CASE("apply_permutation preserves entries on random matrices") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const Index rows = testutil::rand_range(rng, 1, 5);
    const Index cols = testutil::rand_range(rng, 1, 5);
    const IntMatrix m = testutil::random_dense(rng, rows, cols, -4, 4);

    std::vector<Index> rimg(static_cast<std::size_t>(rows));
    std::vector<Index> cimg(static_cast<std::size_t>(cols));
    for (Index i = 0; i < rows; ++i) rimg[static_cast<std::size_t>(i)] = i + 1;
    for (Index j = 0; j < cols; ++j) cimg[static_cast<std::size_t>(j)] = j + 1;
    std::shuffle(rimg.begin(), rimg.end(), rng);
    std::shuffle(cimg.begin(), cimg.end(), rng);
    const PermutationPair p{Permutation::from_image(rimg),
                            Permutation::from_image(cimg)};

    const IntMatrix moved = apply_permutation(m, p);
    CHECK(moved.entry_count() == m.entry_count());
    for (Index i = 1; i <= rows; ++i) {
      for (Index j = 1; j <= cols; ++j) {
        CHECK(moved.at(p.row_perm(i), p.col_perm(j)) == m.at(i, j));
      }
    }
    const PermutationPair pinv{p.row_perm.inverse(), p.col_perm.inverse()};
    CHECK(apply_permutation(moved, pinv) == m);
  }
}

TEST_CASE("pad_zero shifts entries") {
  const IntMatrix e = IntMatrix::from_rows({{2, -1}});
  const IntMatrix padded = pad_zero(e, 1, 1, 0, 0);
  CHECK(padded.rows() == 3);
  CHECK(padded.cols() == 2);
  CHECK(padded.at(2, 1) == 2);
  CHECK(padded.at(2, 2) == -1);
  CHECK(padded.entry_count() == 2);

  CHECK(pad_zero(e, 0, 0, 0, 0) == e);

  const IntMatrix one = IntMatrix::from_rows({{1}});
  const IntMatrix right = pad_zero(one, 0, 0, 0, 1);
  CHECK(right.rows() == 1);
  CHECK(right.cols() == 2);
  CHECK(right.at(1, 1) == 1);

  CHECK_THROWS_AS(pad_zero(e, -1, 0, 0, 0), std::invalid_argument);
}
