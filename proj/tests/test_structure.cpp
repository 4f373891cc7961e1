#include <doctest.h>

#include <stdexcept>

#include "blockip/matrix.hpp"
#include "blockip/structure.hpp"
#include "test_helpers.hpp"

using namespace blockip;

TEST_CASE("band_check bi and tri patterns") {
  CHECK(band_check(IntMatrix::from_rows({{1, 0}, {2, 3}, {0, 4}}), Band::Bi));
  CHECK(band_check(IntMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                   Band::Tri));
  CHECK_FALSE(band_check(IntMatrix::from_rows({{0, 1}, {1, 0}}), Band::Bi));

  // Every bi-diagonal matrix is tri-diagonal, not vice versa.
  const IntMatrix bi = IntMatrix::from_rows({{5, 0}, {1, 2}, {0, 3}});
  CHECK(band_check(bi, Band::Tri));
  const IntMatrix tri = IntMatrix::from_rows({{1, 0}, {1, 0}, {1, 1}});
  CHECK(band_check(tri, Band::Tri));
  CHECK_FALSE(band_check(tri, Band::Bi));
}

TEST_CASE("block profile stores stage data") {
  const BlockProfile p(StructureKind::MultiStage, {2, 1});
  CHECK(p.tau == 2);
  CHECK(p.sigma_sum() == 3);
  CHECK(p.stage_product() == 6);
  CHECK_THROWS_AS(BlockProfile(StructureKind::MultiStage, {1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BlockProfile(StructureKind::MultiStage, {}),
                  std::invalid_argument);
}

TEST_CASE("single stage accepts every matrix") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    const IntMatrix m = testutil::random_dense(rng, 1 + rep % 4, 1 + rep % 3,
                                               -5, 5);
    CHECK(validate_multistage(m, BlockProfile(StructureKind::MultiStage, {3})));
    CHECK(validate_treefold(m, BlockProfile(StructureKind::TreeFold, {3})));
  }
}

TEST_CASE("dense matrix fails a two-stage split") {
  const IntMatrix dense =
      IntMatrix::from_rows({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
  CHECK_FALSE(
      validate_multistage(dense, BlockProfile(StructureKind::MultiStage, {1, 1})));
  CHECK_FALSE(validate_treefold(dense.transpose(),
                                BlockProfile(StructureKind::TreeFold, {1, 1})));
}

TEST_CASE("two-stage stochastic shape validates") {
  // First column shared by both row blocks; diagonal 2x1 blocks after it.
  const IntMatrix m = IntMatrix::from_rows({
      {1, 2, 0},
      {3, 4, 0},
      {5, 0, 6},
      {7, 0, 8},
  });
  CHECK(validate_multistage(m, BlockProfile(StructureKind::MultiStage, {1, 1})));
  // The transpose is the classic top-stripe plus diagonal shape.
  CHECK(validate_treefold(m.transpose(),
                          BlockProfile(StructureKind::TreeFold, {1, 1})));
}

TEST_CASE("top-stripe plus diagonal blocks validates as tree-fold") {
  const IntMatrix m = IntMatrix::from_rows({
      {1, 1, 2, 2, 3, 3},
      {4, 5, 0, 0, 0, 0},
      {0, 0, 6, 7, 0, 0},
      {0, 0, 0, 0, 8, 9},
  });
  CHECK(validate_treefold(m, BlockProfile(StructureKind::TreeFold, {1, 1})));
  CHECK(validate_multistage(m.transpose(),
                            BlockProfile(StructureKind::MultiStage, {1, 1})));
}

TEST_CASE("oversized blocks fail the last level") {
  const IntMatrix m = IntMatrix::from_rows({
      {1, 1, 1},
      {0, 2, 2},
      {0, 2, 2},
  });
  // After removing column 1, the remaining two columns are one connected
  // block: fine with last level size 2, too wide with size 1.
  CHECK(validate_multistage(m, BlockProfile(StructureKind::MultiStage, {1, 2})));
  CHECK_FALSE(
      validate_multistage(m, BlockProfile(StructureKind::MultiStage, {1, 1})));
}

TEST_CASE("zero rows and columns never break validation") {
  IntMatrix m(5, 4);
  m.set(1, 1, Int(1));
  m.set(1, 2, Int(1));
  m.set(2, 2, Int(2));
  // Column 3, 4 and rows 3..5 are entirely zero.
  m.set(2, 1, Int(-1));
  CHECK(validate_multistage(m, BlockProfile(StructureKind::MultiStage, {1, 1})));
}

TEST_CASE("validator rejects sigma1 larger than the matrix") {
  const IntMatrix m = IntMatrix::from_rows({{1, 2}});
  CHECK_THROWS_AS(
      validate_multistage(m, BlockProfile(StructureKind::MultiStage, {3, 1})),
      std::invalid_argument);
  CHECK_THROWS_AS(
      validate_treefold(IntMatrix(1, 3),
                        BlockProfile(StructureKind::TreeFold, {2, 1})),
      std::invalid_argument);
}

TEST_CASE("validate_profile dispatches on kind") {
  const IntMatrix m = IntMatrix::from_rows({{1, 1}, {0, 1}});
  CHECK(validate_profile(m, BlockProfile(StructureKind::MultiStage, {2})));
  CHECK(validate_profile(m, BlockProfile(StructureKind::TreeFold, {2})));
}

TEST_CASE("transpose duality of the validators") {
  std::mt19937_64 rng(99);
  const BlockProfile ms(StructureKind::MultiStage, {1, 1});
  const BlockProfile tf(StructureKind::TreeFold, {1, 1});
  for (int rep = 0; rep < 50; ++rep) {
    const IntMatrix m = testutil::random_dense(rng, 4, 3, -1, 1);
    CHECK(validate_multistage(m, ms) == validate_treefold(m.transpose(), tf));
  }
}

TEST_CASE("three-level nesting validates") {
  // sigma = (1,1,1): remove col 1, each block again has one linking column
  // and a trailing single-column block.
  const IntMatrix m = IntMatrix::from_rows({
      {1, 1, 0, 0, 0},
      {1, 1, 1, 0, 0},
      {1, 0, 0, 1, 0},
      {1, 0, 0, 1, 1},
  });
  CHECK(
      validate_multistage(m, BlockProfile(StructureKind::MultiStage, {1, 1, 1})));
}
