#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "blockip/instance.hpp"
#include "blockip/matrix.hpp"
#include "blockip/oracle.hpp"
#include "blockip/reduce.hpp"
#include "blockip/structure.hpp"
#include "test_helpers.hpp"

using namespace blockip;

namespace {

std::vector<Int> ints(std::initializer_list<long> values) {
  std::vector<Int> out;
  for (long v : values) out.emplace_back(v);
  return out;
}

}  // namespace

TEST_CASE("subset-sum normalization is enforced") {
  CHECK_NOTHROW(check_subsetsum({ints({3, 5, 6}), Int(8)}));
  CHECK_NOTHROW(check_subsetsum({{}, Int(0)}));
  CHECK_THROWS_AS(check_subsetsum({ints({8}), Int(8)}), std::invalid_argument);
  CHECK_THROWS_AS(check_subsetsum({ints({-1}), Int(8)}),
                  std::invalid_argument);
}

TEST_CASE("encoding base selection") {
  SUBCASE("single digit row uses the target itself") {
    const SubsetSumParams p = choose_subsetsum_params(Int(8), 1);
    CHECK(p.delta == 8);
    CHECK(p.t == 3);
  }
  SUBCASE("two digit rows pick the minimal base") {
    const SubsetSumParams p = choose_subsetsum_params(Int(8), 2);
    CHECK(p.delta == 3);  // 3^2 = 9 >= 8 > 3
    CHECK(p.t == 2);
  }
  SUBCASE("bit width is clamped to at least 2") {
    const SubsetSumParams p = choose_subsetsum_params(Int(7), 3);
    CHECK(p.delta == 2);  // 2^3 = 8 >= 7 > 4
    CHECK(p.t == 2);
  }
  SUBCASE("tiny targets fall back to base 2") {
    CHECK(choose_subsetsum_params(Int(0), 1).delta == 2);
    CHECK(choose_subsetsum_params(Int(1), 1).delta == 2);
  }
  SUBCASE("infeasible digit counts are rejected") {
    CHECK_THROWS_AS(choose_subsetsum_params(Int(9), 3), std::invalid_argument);
    CHECK_THROWS_AS(choose_subsetsum_params(Int(8), 0), std::invalid_argument);
    CHECK_THROWS_AS(choose_subsetsum_params(Int(8), 9), std::invalid_argument);
  }
  SUBCASE("base sandwich holds exactly when a base exists") {
    int accepted = 0;
    int rejected = 0;
    for (long b = 2; b <= 40; ++b) {
      Index cap = 1;
      while ((1L << cap) < b) ++cap;  // ceil(log2 b)
      for (Index sigma1 = 1; sigma1 <= cap; ++sigma1) {
        // Minimal base whose sigma1-digit numbers reach b, and the largest
        // value expressible with one digit row fewer.
        Int delta = 2;
        auto pow_rows = [&](const Int& base) {
          Int p = 1;
          for (Index i = 0; i < sigma1; ++i) p *= base;
          return p;
        };
        while (pow_rows(delta) < b) ++delta;
        Int low = 1;
        for (Index i = 0; i + 1 < sigma1; ++i) low *= delta;
        try {
          const SubsetSumParams p = choose_subsetsum_params(Int(b), sigma1);
          ++accepted;
          CHECK(p.delta == delta);
          CHECK(low * p.delta >= b);
          if (sigma1 > 1) CHECK(b > low);
          CHECK(p.delta >= 2);
          CHECK(p.t >= 2);
        } catch (const std::invalid_argument&) {
          // Rejected pairs are exactly the ones where even the minimal base
          // wastes the last digit row.
          ++rejected;
          CHECK(sigma1 > 1);
          CHECK(b <= low);
        }
      }
    }
    CHECK(accepted > 0);
    CHECK(rejected > 0);
  }
}

TEST_CASE("digit-carry system for the running example") {
  const SubsetSumInstance inst{ints({3, 5, 6}), Int(8)};
  const CdSystem sys = build_cd_system(inst, Int(3), 2);
  CHECK(sys.c == IntMatrix::from_rows({{0, 2, 0}, {1, 1, 2}}));
  CHECK(sys.d == IntMatrix::from_rows({{3}, {-1}}));
  CHECK(sys.rhs == ints({8, 0}));

  // x = (1,1,0), y1 = 2 solves both rows.
  const std::vector<Int> xy = ints({1, 1, 0, 2});
  IntMatrix cd(2, 4);
  for (Index i = 1; i <= 2; ++i) {
    for (Index j = 1; j <= 3; ++j) cd.set(i, j, sys.c.at(i, j));
    cd.set(i, 4, sys.d.at(i, 1));
  }
  CHECK(cd.apply(xy) == sys.rhs);
}

TEST_CASE("row weights recover the original coefficients") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const long b = testutil::rand_range(rng, 2, 50);
    const long n = testutil::rand_range(rng, 1, 6);
    std::vector<Int> a;
    for (long i = 0; i < n; ++i) a.emplace_back(static_cast<long>(testutil::rand_range(rng, 0, b - 1)));
    Index cap = 1;
    while ((1L << cap) < b) ++cap;
    const Index sigma1 = testutil::rand_range(rng, 1, cap);
    SubsetSumParams params;
    try {
      params = choose_subsetsum_params(Int(b), sigma1);
    } catch (const std::invalid_argument&) {
      continue;  // no admissible base for this (b, sigma1)
    }
    const CdSystem sys = build_cd_system({a, Int(b)}, params.delta, sigma1);

    // lambda = (1, delta, delta^2, ...) applied from the left.
    std::vector<Int> lambda;
    Int power = 1;
    for (Index i = 0; i < sigma1; ++i) {
      lambda.push_back(power);
      power *= params.delta;
    }
    for (Index j = 1; j <= sys.c.cols(); ++j) {
      Int sum = 0;
      for (Index i = 1; i <= sigma1; ++i) sum += lambda[static_cast<std::size_t>(i - 1)] * sys.c.at(i, j);
      CHECK(sum == a[static_cast<std::size_t>(j - 1)]);
    }
    for (Index j = 1; j <= sys.d.cols(); ++j) {
      Int sum = 0;
      for (Index i = 1; i <= sigma1; ++i) sum += lambda[static_cast<std::size_t>(i - 1)] * sys.d.at(i, j);
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("subset-sum instance becomes a two-level block program") {
  const SubsetSumInstance src{ints({3, 5, 6}), Int(8)};
  const NfoldResult res = build_nfold(src, 2);
  const IPInstance& inst = res.instance;

  CHECK(inst.cols() == 8);   // 4 groups of t=2 bits
  CHECK(inst.rows() == 6);   // 2 stripe rows + 4 chain blocks x 1 row
  CHECK(inst.a.max_norm() <= 2);
  REQUIRE(inst.profile.has_value());
  CHECK(inst.profile->kind == StructureKind::TreeFold);
  CHECK(inst.profile->sigma == std::vector<Index>{2, 1});
  CHECK_NOTHROW(check_instance(inst));
  CHECK(validate_treefold(inst.a, *inst.profile));
  CHECK(inst.rhs == ints({8, 0, 0, 0, 0, 0}));

  const FeasibilityResult feas = feasible_enum(inst);
  REQUIRE(feas.feasible);
  const std::vector<Int> x = project_solution(res.certificate, *feas.witness);
  CHECK(x == ints({1, 1, 0}));

  // Extending the projected witness reproduces a feasible point.
  const std::vector<Int> lifted = extend_witness(res.certificate, x);
  CHECK(is_feasible_point(inst, lifted));
  CHECK(project_solution(res.certificate, lifted) == x);

  CHECK_FALSE(res.certificate.forward_map().empty());
  CHECK_FALSE(res.certificate.backward_map().empty());
  CHECK(testutil::same_instance(rebuild_instance(res.certificate), inst));
}

TEST_CASE("infeasible subset-sum stays infeasible") {
  const NfoldResult res = build_nfold({ints({2, 4}), Int(7)}, 1);
  CHECK_FALSE(feasible_enum(res.instance).feasible);
  CHECK_FALSE(subsetsum_dp({ints({2, 4}), Int(7)}).feasible);
}

TEST_CASE("empty subset-sum with zero target") {
  const NfoldResult res = build_nfold({{}, Int(0)}, 1);
  CHECK(res.instance.cols() == 0);
  const FeasibilityResult feas = feasible_enum(res.instance);
  CHECK(feas.feasible);
  CHECK(project_solution(res.certificate, *feas.witness).empty());
}

TEST_CASE("witness extension rejects bad inputs") {
  const NfoldResult res = build_nfold({ints({3, 5, 6}), Int(8)}, 2);
  // (1,0,0) sums to 3, not 8.
  CHECK_THROWS_AS(extend_witness(res.certificate, ints({1, 0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(extend_witness(res.certificate, ints({1, 1})),
                  std::invalid_argument);
  std::vector<Int> zeros(8, Int(0));
  CHECK_THROWS_AS(project_solution(res.certificate, zeros),
                  std::invalid_argument);
}

TEST_CASE("deepening levels for a bit width") {
  SUBCASE("frozen triples") {
    const TreefoldLevels a = choose_treefold_levels(4, 3);
    CHECK(a.s == 1);
    CHECK(a.ell == 0);
    CHECK(a.sigma_tail == std::vector<Index>{1, 1});

    const TreefoldLevels b = choose_treefold_levels(5, 3);
    CHECK(b.s == 2);
    CHECK(b.ell == 1);
    CHECK(b.sigma_tail == std::vector<Index>{2, 1});

    const TreefoldLevels c = choose_treefold_levels(8, 4);
    CHECK(c.s == 1);
    CHECK(c.ell == 0);
    CHECK(c.sigma_tail == std::vector<Index>{1, 1, 1});
  }
  SUBCASE("level product lands in [t, 2t)") {
    for (Index t = 3; t <= 64; ++t) {
      Index cap = 0;
      while ((Index(1) << cap) < t) ++cap;
      for (Index tau = 3; tau - 1 <= cap; ++tau) {
        const TreefoldLevels lv = choose_treefold_levels(t, tau);
        CHECK(static_cast<Index>(lv.sigma_tail.size()) == tau - 1);
        Int product = 1;
        for (Index s : lv.sigma_tail) {
          CHECK(s >= 1);
          product *= s + 1;
        }
        CHECK(product >= t);
        CHECK(product < 2 * t);
      }
    }
  }
  SUBCASE("width 2 admits no deepening") {
    CHECK_THROWS_AS(choose_treefold_levels(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(choose_treefold_levels(8, 5), std::invalid_argument);
  }
}

TEST_CASE("deepened instance keeps feasibility and structure") {
  // b = 11, sigma1 = 1 gives delta = 11, t = 4; deepening to 3 levels uses
  // level sizes (1,1) with product 4 = t, so no padding columns appear.
  const SubsetSumInstance src{ints({3, 5, 6}), Int(11)};
  const NfoldResult nfold = build_nfold(src, 1);
  CHECK(nfold.certificate.params.t == 4);

  const LiftResult lifted = lift_nfold_to_treefold(nfold.instance, 3);
  const IPInstance& inst = lifted.instance;
  REQUIRE(inst.profile.has_value());
  CHECK(inst.profile->sigma == std::vector<Index>{1, 1, 1});
  CHECK(validate_treefold(inst.a, *inst.profile));
  CHECK(inst.cols() == nfold.instance.cols());
  CHECK(inst.a.max_norm() <= 2);

  const bool direct = subsetsum_dp(src).feasible;
  CHECK(direct == feasible_enum(inst).feasible);
  CHECK(direct);

  // The permutation certificate relates the unpermuted assembly to the
  // output: its inverse restores a matrix with the same entry multiset.
  CHECK(lifted.permutation.row_perm.size() == inst.rows());
  CHECK(lifted.permutation.col_perm.size() == inst.cols());
}

TEST_CASE("deepening with padding columns pins them to zero") {
  // b = 20, sigma1 = 1: delta = 20, t = 5; tau = 3 gives level sizes (2,1)
  // with product 6 > t, so one zero column is added per group.
  const SubsetSumInstance src{ints({9, 11, 20 - 3}), Int(20)};
  const NfoldResult nfold = build_nfold(src, 1);
  CHECK(nfold.certificate.params.t == 5);

  const LiftResult lifted = lift_nfold_to_treefold(nfold.instance, 3);
  const IPInstance& inst = lifted.instance;
  CHECK(inst.cols() == 3 * 6);
  CHECK(validate_treefold(inst.a, *inst.profile));

  // Padding columns have bounds [0,0].
  Index pinned = 0;
  for (Index j = 0; j < inst.cols(); ++j) {
    const auto& lo = inst.lower[static_cast<std::size_t>(j)];
    const auto& hi = inst.upper[static_cast<std::size_t>(j)];
    REQUIRE(lo.has_value());
    REQUIRE(hi.has_value());
    if (*lo == 0 && *hi == 0) ++pinned;
  }
  CHECK(pinned == 3);

  CHECK(subsetsum_dp(src).feasible == feasible_enum(inst).feasible);
}

TEST_CASE("deepening rejects unsupported widths") {
  const NfoldResult nfold = build_nfold({ints({3, 5, 6}), Int(8)}, 2);
  CHECK(nfold.certificate.params.t == 2);
  CHECK_THROWS_AS(lift_nfold_to_treefold(nfold.instance, 3),
                  std::invalid_argument);
}

TEST_CASE("two-stage block normalization") {
  SUBCASE("all-zero block") {
    const TwoStageBlock block{Int(0), Int(0), Int(0)};
    CHECK(block.t == 2);
    const NormalizedBlock nb = normalize_block(block);
    CHECK(nb.c == ints({0, 0, 0}));
    CHECK(nb.link_row == 2);
    CHECK(nb.b == IntMatrix::from_rows({{0, 0, 0}, {0, 1, 1}}));
    CHECK(band_check(nb.b.transpose(), Band::Bi));
  }
  SUBCASE("unit values") {
    const TwoStageBlock block{Int(1), Int(1), Int(1)};
    CHECK(block.t == 5);
    const NormalizedBlock nb = normalize_block(block);
    CHECK(nb.c == ints({1, 0, 0, 1, 1, 0}));
    CHECK(nb.link_row == 4);
    CHECK(nb.b == IntMatrix::from_rows({
                      {2, -1, 0, 0, 0, 0},
                      {0, 0, 0, 0, 0, 0},
                      {0, 0, -1, 2, 0, 0},
                      {0, 0, 0, 1, 1, 0},
                      {0, 0, 0, 0, 2, -1},
                  }));
  }
  SUBCASE("band property on random blocks") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 50; ++rep) {
      const TwoStageBlock block{Int(static_cast<long>(testutil::rand_range(rng, 0, 40))),
                                Int(static_cast<long>(testutil::rand_range(rng, 0, 40))),
                                Int(static_cast<long>(testutil::rand_range(rng, 0, 40)))};
      const NormalizedBlock nb = normalize_block(block);
      CHECK(nb.b.rows() == block.t);
      CHECK(nb.b.cols() == block.t + 1);
      CHECK(static_cast<Index>(nb.c.size()) == block.t + 1);
      // Column j of B touches only rows j-1 and j.
      for (const auto& [pos, value] : nb.b.entries()) {
        CHECK((pos.first == pos.second || pos.first == pos.second - 1));
        (void)value;
      }
    }
  }
}

TEST_CASE("dense row splits into a banded system") {
  const IntMatrix s = split_dense_row(ints({1, 2}));
  CHECK(s == IntMatrix::from_rows({
                 {1, 0, 0, 0},
                 {-1, -1, 1, 0},
                 {0, 0, -1, -2},
             }));

  // r = 3: p = (-3, -2), z = (1, 1) solves e1*r + S (p,z) = 0.
  const std::vector<Int> pz = ints({-3, 1, -2, 1});
  const std::vector<Int> sx = s.apply(pz);
  CHECK(sx[0] == -3);  // cancels +r
  CHECK(sx[1] == 0);
  CHECK(sx[2] == 0);
}

TEST_CASE("splitting a zero row forces target zero") {
  const IntMatrix s = split_dense_row(ints({0, 0}));
  // Sum of all rows telescopes to -sum(c_i z_i) + ... = 0, so the only
  // consistent target is r = 0: with c = 0 the first row pins p1 = -r and
  // the remaining rows propagate p unchanged, ending with -p_{t+1} = 0.
  for (long r = -2; r <= 2; ++r) {
    bool found = false;
    for (long z1 = -2; z1 <= 2 && !found; ++z1) {
      for (long z2 = -2; z2 <= 2 && !found; ++z2) {
        const std::vector<Int> pz = ints({-r, z1, -r, z2});
        std::vector<Int> sx = s.apply(pz);
        sx[0] += r;
        bool all_zero = true;
        for (const Int& v : sx) all_zero = all_zero && v == 0;
        found = all_zero;
      }
    }
    CHECK(found == (r == 0));
  }
}

TEST_CASE("block rows spread onto interleaved columns") {
  const IntMatrix expanded = expand_B(IntMatrix::from_rows({{1, 1}}));
  CHECK(expanded == IntMatrix::from_rows({{0, 0, 0, 0}, {0, 1, 0, 1}}));
  CHECK(expand_B(IntMatrix(2, 3)) == IntMatrix(3, 6));
}

TEST_CASE("interleaving yields a three-band matrix") {
  const IntMatrix s = split_dense_row(ints({1, 2}));
  const IntMatrix b = expand_B(IntMatrix::from_rows({{1, 1}}));
  const IntMatrix t = interleave_to_tridiagonal(s, b);
  CHECK(t == IntMatrix::from_rows({
                 {1, 0, 0, 0},
                 {0, 0, 0, 0},
                 {-1, -1, 1, 0},
                 {0, 1, 0, 1},
                 {0, 0, -1, -2},
             }));
  CHECK(band_check(t, Band::Tri));
  CHECK_THROWS_AS(interleave_to_tridiagonal(s, IntMatrix(2, 6)),
                  std::invalid_argument);

  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const TwoStageBlock block{Int(static_cast<long>(testutil::rand_range(rng, 0, 30))),
                              Int(static_cast<long>(testutil::rand_range(rng, 0, 30))),
                              Int(static_cast<long>(testutil::rand_range(rng, 0, 30)))};
    const NormalizedBlock nb = normalize_block(block);
    const IntMatrix ti =
        interleave_to_tridiagonal(split_dense_row(nb.c), expand_B(nb.b));
    CHECK(ti.rows() == 2 * block.t + 3);
    CHECK(ti.cols() == 2 * block.t + 2);
    CHECK(band_check(ti, Band::Tri));
    CHECK(ti.max_norm() <= 2);
  }
}

TEST_CASE("canonical two-stage system for blocks") {
  const std::vector<TwoStageBlock> blocks = {
      TwoStageBlock{Int(1), Int(1), Int(1)}};
  const IPInstance inst = two_stage_instance(blocks, Int(3));
  CHECK(inst.cols() == 1 + 6);
  CHECK(inst.rows() == 6);
  CHECK_NOTHROW(check_instance(inst));
  // rhs is 1 exactly at the block's link row.
  CHECK(inst.rhs == ints({0, 0, 0, 0, 1, 0}));

  const FeasibilityResult feas = feasible_enum(inst);
  REQUIRE(feas.feasible);

  // Blocks of different widths cannot share a system.
  const std::vector<TwoStageBlock> bad = {TwoStageBlock{Int(0), Int(0), Int(0)},
                                          TwoStageBlock{Int(1), Int(1), Int(1)}};
  CHECK_THROWS_AS(two_stage_instance(bad, Int(3)), std::invalid_argument);
}

TEST_CASE("flattening a single zero block") {
  const std::vector<TwoStageBlock> blocks = {
      TwoStageBlock{Int(0), Int(0), Int(0)}};
  const MultistageResult res = build_multistage(blocks, 2, Int(3));
  const IPInstance& inst = res.instance;

  REQUIRE(inst.profile.has_value());
  CHECK(inst.profile->kind == StructureKind::MultiStage);
  CHECK(inst.profile->sigma == std::vector<Index>{1, 6});
  CHECK(inst.rows() == 8);
  CHECK(inst.cols() == 7);
  CHECK(inst.a.max_norm() <= 2);
  CHECK(validate_multistage(inst.a, *inst.profile));
  CHECK(inst.rhs == ints({0, 0, 0, 0, 0, 1, 0, 0}));

  const FeasibilityResult target = feasible_enum(inst);
  const FeasibilityResult source = feasible_enum(two_stage_instance(blocks, Int(3)));
  REQUIRE(target.feasible);
  REQUIRE(source.feasible);

  const std::vector<Int> back =
      project_solution(res.certificate, *target.witness);
  CHECK(is_feasible_point(two_stage_instance(blocks, Int(3)), back));
  const std::vector<Int> forward = extend_witness(res.certificate, back);
  CHECK(is_feasible_point(inst, forward));
  CHECK(project_solution(res.certificate, forward) == back);
  CHECK(testutil::same_instance(rebuild_instance(res.certificate), inst));
}

TEST_CASE("flattening matches the two-stage source exactly") {
  // Three admissible blocks of shared width t = 3.
  const std::vector<TwoStageBlock> blocks = {
      TwoStageBlock{Int(1), Int(0), Int(0)},
      TwoStageBlock{Int(0), Int(1), Int(0)},
      TwoStageBlock{Int(0), Int(0), Int(1)}};
  for (const auto& b : blocks) CHECK(b.t == 3);

  const IPInstance source = two_stage_instance(blocks, Int(1));
  const MultistageResult res = build_multistage(blocks, 2, Int(1));
  CHECK(validate_multistage(res.instance.a, *res.instance.profile));

  const FeasibilityResult src = feasible_enum(source);
  const FeasibilityResult dst = feasible_enum(res.instance);
  CHECK(src.feasible == dst.feasible);
  if (src.feasible) {
    const std::vector<Int> projected =
        project_solution(res.certificate, *dst.witness);
    CHECK(is_feasible_point(source, projected));
    CHECK(project_solution(res.certificate,
                           extend_witness(res.certificate, projected)) ==
          projected);
  }
}

TEST_CASE("flattening with more stages") {
  const std::vector<TwoStageBlock> blocks = {
      TwoStageBlock{Int(1), Int(1), Int(1)}};
  const MultistageResult res = build_multistage(blocks, 3, Int(3));
  REQUIRE(res.instance.profile.has_value());
  CHECK(res.instance.profile->sigma == std::vector<Index>{1, 4, 4});
  CHECK(validate_multistage(res.instance.a, *res.instance.profile));
  CHECK(res.instance.a.max_norm() <= 2);

  // Round-trip through a hand-picked source witness:
  // z = (1,2,2,1,0,0) satisfies the chains and the link row; r = c.z = 2.
  const std::vector<Int> source = ints({2, 1, 2, 2, 1, 0, 0});
  CHECK(is_feasible_point(two_stage_instance(blocks, Int(3)), source));
  const std::vector<Int> lifted = extend_witness(res.certificate, source);
  CHECK(is_feasible_point(res.instance, lifted));
  CHECK(project_solution(res.certificate, lifted) == source);

  // Stage count out of range for this width.
  CHECK_THROWS_AS(build_multistage(blocks, 9, Int(3)), std::invalid_argument);
}

TEST_CASE("flattened dimensions stay polynomial") {
  const std::vector<TwoStageBlock> blocks = {
      TwoStageBlock{Int(5), Int(9), Int(2)},
      TwoStageBlock{Int(9), Int(5), Int(2)}};
  const Index t = blocks.front().t;
  const MultistageResult res = build_multistage(blocks, 2, Int(2));
  // tau = 2 squares the block dimension at worst.
  CHECK(res.instance.rows() <= 2 * (2 * t + 4) * (2 * t + 4));
  CHECK(res.instance.cols() <= 2 * (2 * t + 4) * (2 * t + 4));
  CHECK(validate_multistage(res.instance.a, *res.instance.profile));
}
